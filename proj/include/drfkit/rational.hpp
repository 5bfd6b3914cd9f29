/**
 * Copyright 2026 The drfkit Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace drfkit {

using BigInt = mpz_class;

/// Exact fraction in lowest terms with a positive denominator.
///
/// Every dominant share, cycle factor and lcm in the library is a Rational;
/// no operation on it rounds. Storage is a GMP rational, so intermediate
/// sums over thousands of users never overflow.
class Rational {
public:
  Rational() = default;
  Rational(std::int64_t value);  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);
  Rational(const BigInt& numerator, const BigInt& denominator);
  explicit Rational(const mpq_class& value);

  /// Parses "p", "p/q" or "-p/q". Throws std::invalid_argument on malformed
  /// text or a zero denominator.
  static Rational parse(std::string_view text);

  const BigInt& numerator() const;
  const BigInt& denominator() const;

  bool is_integer() const;
  bool is_zero() const;
  int sign() const;

  /// Largest integer not greater than the value.
  BigInt floor() const;
  /// Smallest integer not less than the value.
  BigInt ceil() const;
  /// floor() narrowed to 64 bits; throws std::overflow_error when it does not fit.
  std::int64_t floor_int64() const;

  Rational reciprocal() const;
  Rational abs() const;

  double to_double() const;
  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const;

  const mpq_class& raw() const { return value_; }

  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }
  Rational operator-() const;

  friend bool operator==(const Rational& lhs, const Rational& rhs);
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

/// Narrows a big integer to 64 bits; throws std::overflow_error when it does not fit.
std::int64_t to_int64(const BigInt& value);

BigInt gcd(const BigInt& a, const BigInt& b);
BigInt lcm(const BigInt& a, const BigInt& b);

}  // namespace drfkit
