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

#include <doctest.h>

#include "emsloc/errors.hpp"
#include "emsloc/rational.hpp"

using namespace emsloc;

TEST_CASE("decimal parsing is exact") {
  CHECK(rational_from_decimal("12.34") == Rational(1234) / 100);
  CHECK(rational_from_decimal("-0.5") == Rational(-1) / 2);
  CHECK(rational_from_decimal("1e-3") == Rational(1) / 1000);
  CHECK(rational_from_decimal("2.5e+2") == Rational(250));
  CHECK(rational_from_decimal("3/4") == Rational(3) / 4);
  CHECK(rational_from_decimal("-3/4") == Rational(-3) / 4);
  CHECK(rational_from_decimal("0") == 0);
  CHECK(rational_from_decimal("  7 ") == 7);
}

TEST_CASE("malformed numbers are parse errors") {
  CHECK_THROWS_AS(rational_from_decimal(""), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("abc"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1.2.3"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1/0"), ParseError);
  CHECK_THROWS_AS(rational_from_decimal("1e"), ParseError);
}

TEST_CASE("doubles mean their shortest decimal") {
  CHECK(rational_from_double(0.1) == Rational(1) / 10);
  CHECK(rational_from_double(1.27) == Rational(127) / 100);
  CHECK(rational_from_double(-2.0) == Rational(-2));
}

TEST_CASE("rational_to_string picks exact decimal or p/q") {
  CHECK(rational_to_string(Rational(91) / 100) == "0.91");
  CHECK(rational_to_string(Rational(-3) / 8) == "-0.375");
  CHECK(rational_to_string(Rational(5)) == "5");
  CHECK(rational_to_string(Rational(1) / 3) == "1/3");
  CHECK(rational_from_decimal(rational_to_string(Rational(7) / 3)) == Rational(7) / 3);
}

TEST_CASE("clamp and power") {
  CHECK(clamp01(Rational(18) / 10) == 1);
  CHECK(clamp01(Rational(-1) / 10) == 0);
  CHECK(clamp01(Rational(1) / 2) == Rational(1) / 2);
  CHECK(pow_rational(Rational(3) / 10, 2) == Rational(9) / 100);
  CHECK(pow_rational(Rational(2), 10) == 1024);
  CHECK(pow_rational(Rational(5), 0) == 1);
}

TEST_CASE("fingerprint hashing is stable") {
  CHECK(hex64(fnv1a64("emsloc")) == hex64(fnv1a64("emsloc")));
  CHECK(hex64(fnv1a64("a")) != hex64(fnv1a64("b")));
  CHECK(hex64(fnv1a64("")).size() == 16);
}
