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

#include <json.hpp>

#include <string>

#include "emsloc/errors.hpp"
#include "emsloc/rational.hpp"

namespace emsloc::detail {

using nlohmann::json;

inline const json& require_field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing key '" + key + "'");
  return *it;
}

inline long long require_int(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": expected an integer");
  return value.get<long long>();
}

inline std::string require_string(const json& value, const std::string& where) {
  if (!value.is_string()) throw ParseError(where + ": expected a string");
  return value.get<std::string>();
}

/// Numbers are read as exact decimals (the shortest round-trip spelling of
/// the parsed double); strings may carry "12.5" or "p/q" for values outside
/// double-exact range.
inline Rational require_rational(const json& value, const std::string& where) {
  try {
    if (value.is_number_integer()) return Rational(static_cast<long>(value.get<long long>()));
    if (value.is_number_float()) return rational_from_double(value.get<double>());
    if (value.is_string()) return rational_from_decimal(value.get<std::string>());
  } catch (const ParseError& err) {
    throw ParseError(where + ": " + err.what());
  }
  throw ParseError(where + ": expected a number");
}

inline json parse_json(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(what + ": " + err.what());
  }
}

/// JSON-escapes a string body (quotes not included).
std::string escape_json(const std::string& text);

/// Emits a rational as a bare JSON token: a plain number when the decimal
/// round-trips through a double exactly, otherwise a quoted exact string.
std::string rational_token(const Rational& value);

}  // namespace emsloc::detail
