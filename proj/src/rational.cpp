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

#include "emsloc/rational.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <cstdlib>

#include "emsloc/errors.hpp"

namespace emsloc {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

Rational decimal_parts_to_rational(bool negative, std::string_view int_part,
                                   std::string_view frac_part, long exponent) {
  std::string digits;
  digits.reserve(int_part.size() + frac_part.size());
  digits.append(int_part);
  digits.append(frac_part);
  if (digits.empty()) throw ParseError("empty numeric literal");
  long scale = static_cast<long>(frac_part.size()) - exponent;

  mpz_class numerator;
  if (mpz_set_str(numerator.get_mpz_t(), digits.c_str(), 10) != 0)
    throw ParseError("invalid digits in numeric literal");
  if (negative) numerator = -numerator;

  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(scale)));
  Rational result;
  if (scale >= 0) {
    result = Rational(numerator, pow10);
  } else {
    result = Rational(numerator * pow10, 1);
  }
  result.canonicalize();
  return result;
}

}  // namespace

Rational rational_from_decimal(std::string_view text) {
  // Trim surrounding whitespace.
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front())))
    text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back())))
    text.remove_suffix(1);
  if (text.empty()) throw ParseError("empty numeric literal");

  // Fraction form "p/q".
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    std::string num(text.substr(0, slash));
    std::string den(text.substr(slash + 1));
    mpz_class n, d;
    std::string_view num_body = num;
    bool neg = false;
    if (!num_body.empty() && (num_body.front() == '-' || num_body.front() == '+')) {
      neg = num_body.front() == '-';
      num_body.remove_prefix(1);
    }
    if (!all_digits(num_body) || !all_digits(den))
      throw ParseError("invalid fraction literal '" + std::string(text) + "'");
    mpz_set_str(n.get_mpz_t(), std::string(num_body).c_str(), 10);
    mpz_set_str(d.get_mpz_t(), den.c_str(), 10);
    if (d == 0) throw ParseError("fraction with zero denominator");
    if (neg) n = -n;
    Rational r(n, d);
    r.canonicalize();
    return r;
  }

  bool negative = false;
  std::string_view rest = text;
  if (rest.front() == '-' || rest.front() == '+') {
    negative = rest.front() == '-';
    rest.remove_prefix(1);
  }

  std::string_view mantissa = rest;
  long exponent = 0;
  if (auto epos = rest.find_first_of("eE"); epos != std::string_view::npos) {
    mantissa = rest.substr(0, epos);
    std::string_view exp_text = rest.substr(epos + 1);
    std::string exp_str(exp_text);
    if (exp_str.empty()) throw ParseError("missing exponent digits");
    char* end = nullptr;
    exponent = std::strtol(exp_str.c_str(), &end, 10);
    if (end == nullptr || *end != '\0')
      throw ParseError("invalid exponent '" + exp_str + "'");
  }

  std::string_view int_part = mantissa;
  std::string_view frac_part;
  if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
    int_part = mantissa.substr(0, dot);
    frac_part = mantissa.substr(dot + 1);
  }
  if (int_part.empty() && frac_part.empty())
    throw ParseError("numeric literal without digits");
  if ((!int_part.empty() && !all_digits(int_part)) ||
      (!frac_part.empty() && !all_digits(frac_part)))
    throw ParseError("invalid numeric literal '" + std::string(text) + "'");

  return decimal_parts_to_rational(negative, int_part, frac_part, exponent);
}

Rational rational_from_double(double value) {
  return rational_from_decimal(shortest_double_string(value));
}

std::string shortest_double_string(double value) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw Error("double formatting failed");
  return std::string(buf, ptr);
}

bool has_finite_decimal(const Rational& value) {
  mpz_class den = value.get_den();
  if (den == 1) return true;
  for (int p : {2, 5}) {
    while (mpz_divisible_ui_p(den.get_mpz_t(), p))
      mpz_divexact_ui(den.get_mpz_t(), den.get_mpz_t(), p);
  }
  return den == 1;
}

std::string rational_to_string(const Rational& value) {
  mpz_class den = value.get_den();
  if (den == 1) return value.get_num().get_str();
  if (!has_finite_decimal(value))
    return value.get_num().get_str() + "/" + den.get_str();

  // Scale so that num * 10^digits / den is integral.
  unsigned long twos = 0, fives = 0;
  mpz_class d = den;
  while (mpz_divisible_ui_p(d.get_mpz_t(), 2)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 2);
    ++twos;
  }
  while (mpz_divisible_ui_p(d.get_mpz_t(), 5)) {
    mpz_divexact_ui(d.get_mpz_t(), d.get_mpz_t(), 5);
    ++fives;
  }
  unsigned long digits = std::max(twos, fives);
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, digits);
  mpz_class scaled = value.get_num() * pow10 / den;

  bool negative = scaled < 0;
  mpz_class abs_scaled = abs(scaled);
  std::string body = abs_scaled.get_str();
  if (body.size() <= digits) body.insert(0, digits - body.size() + 1, '0');
  body.insert(body.size() - digits, ".");
  if (negative) body.insert(0, "-");
  return body;
}

double rational_to_double(const Rational& value) { return value.get_d(); }

Rational clamp01(const Rational& value) {
  if (value < 0) return Rational(0);
  if (value > 1) return Rational(1);
  return value;
}

Rational pow_rational(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  unsigned e = exponent;
  while (e > 0) {
    if (e & 1u) result *= b;
    b *= b;
    e >>= 1u;
  }
  return result;
}

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

std::string hex64(std::uint64_t value) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(value));
  return std::string(buf);
}

}  // namespace emsloc
