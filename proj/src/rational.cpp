// Copyright 2026 The twomatch Authors
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

#include "twomatch/rational.hpp"

#include <cctype>
#include <stdexcept>

namespace twomatch {

namespace {

bool is_integer_literal(std::string_view s, bool allow_sign) {
  if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) {
    s.remove_prefix(1);
  }
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

mpz_class to_mpz(std::string_view s) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  return mpz_class(std::string(s), 10);
}

}  // namespace

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::domain_error("rational: zero denominator");
  value_ = mpq_class(numerator, 1);
  value_ /= denominator;
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw std::domain_error("rational: division by zero");
  value_ /= o.value_;
  return *this;
}

std::optional<Rational> Rational::try_parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!is_integer_literal(text, true)) return std::nullopt;
    return Rational(mpq_class(to_mpz(text)));
  }
  const auto num = text.substr(0, slash);
  const auto den = text.substr(slash + 1);
  if (!is_integer_literal(num, true) || !is_integer_literal(den, false)) {
    return std::nullopt;
  }
  mpz_class d = to_mpz(den);
  if (d == 0) return std::nullopt;
  return Rational(mpq_class(to_mpz(num), d));
}

Rational Rational::parse(std::string_view text) {
  auto r = try_parse(text);
  if (!r) {
    throw std::invalid_argument("malformed rational '" + std::string(text) +
                                "'");
  }
  return *r;
}

std::optional<Rational> Rational::try_parse_decimal(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos) return try_parse(text);
  std::string_view whole = text.substr(0, dot);
  std::string_view frac = text.substr(dot + 1);
  bool negative = false;
  if (!whole.empty() && (whole.front() == '-' || whole.front() == '+')) {
    negative = whole.front() == '-';
    whole.remove_prefix(1);
  }
  if (whole.empty() && frac.empty()) return std::nullopt;
  if (!whole.empty() && !is_integer_literal(whole, false)) return std::nullopt;
  if (!frac.empty() && !is_integer_literal(frac, false)) return std::nullopt;
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
  mpz_class digits(std::string(whole.empty() ? "0" : whole) +
                       std::string(frac),
                   10);
  if (negative) digits = -digits;
  return Rational(mpq_class(digits, scale));
}

std::optional<std::string> Rational::decimal() const {
  mpz_class den = value_.get_den();
  unsigned twos = 0;
  unsigned fives = 0;
  while (mpz_divisible_ui_p(den.get_mpz_t(), 2)) {
    den /= 2;
    ++twos;
  }
  while (mpz_divisible_ui_p(den.get_mpz_t(), 5)) {
    den /= 5;
    ++fives;
  }
  if (den != 1) return std::nullopt;
  const unsigned places = std::max(twos, fives);
  if (places == 0) return value_.get_num().get_str();

  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
  mpz_class scaled = ::abs(value_.get_num()) * scale / value_.get_den();
  std::string digits = scaled.get_str();
  if (digits.size() <= places) {
    digits.insert(0, places - digits.size() + 1, '0');
  }
  digits.insert(digits.size() - places, ".");
  if (sign() < 0) digits.insert(0, "-");
  return digits;
}

bool Rational::is_normalized() const {
  const mpz_class& den = value_.get_den();
  if (den <= 0) return false;
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), value_.get_num_mpz_t(), den.get_mpz_t());
  return g == 1;
}

}  // namespace twomatch
