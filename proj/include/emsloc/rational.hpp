// Copyright 2026 The emsloc Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace emsloc {

/// Exact rational number. All demand, travel-time, busy-fraction and
/// objective arithmetic is carried out in this type; doubles appear only
/// in heuristic scoring and in report formatting.
using Rational = mpq_class;

/// Parses "12.34", "-0.5", "1e-3", "2.5e+2" or "3/4" into an exact rational.
/// Throws ParseError on malformed input.
Rational rational_from_decimal(std::string_view text);

/// Interprets a double as the exact decimal its shortest round-trip
/// representation spells. rational_from_double(0.1) == 1/10, not the
/// binary value of the nearest double.
Rational rational_from_double(double value);

/// Shortest decimal string that parses back to exactly `value` (via
/// std::to_chars). Used for report output and MPS coefficients.
std::string shortest_double_string(double value);

/// True when the value has a finite decimal expansion (denominator 2^a 5^b).
bool has_finite_decimal(const Rational& value);

/// Exact finite decimal ("0.9225") when one exists, otherwise "p/q".
std::string rational_to_string(const Rational& value);

double rational_to_double(const Rational& value);

Rational clamp01(const Rational& value);

/// value^k for k >= 0 by repeated squaring.
Rational pow_rational(const Rational& base, unsigned exponent);

/// FNV-1a 64-bit hash, used for instance/config fingerprints.
std::uint64_t fnv1a64(std::string_view bytes);

std::string hex64(std::uint64_t value);

}  // namespace emsloc
