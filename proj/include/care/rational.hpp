// Copyright 2026 The CARE Authors
//
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

#ifndef CARE_RATIONAL_HPP_
#define CARE_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <stdexcept>
#include <string>
#include <string_view>

namespace care {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// Parses "12", "-3", "3.25" or "13/4" into an exact rational. Decimal strings
// are converted without rounding ("4.5" -> 9/2). Exponent notation and float
// tokens are rejected so nothing inexact sneaks onto the money path.
Rat parse_rational(std::string_view text);

// Canonical text form: plain integer when the denominator is 1, a finite
// decimal when the denominator divides a power of ten, "p/q" otherwise.
// parse_rational(rational_str(x)) == x for all x.
std::string rational_str(const Rat& value);

// floor(a / b) for b > 0.
Int floor_div(const Rat& a, const Rat& b);

// base^exp with exact rational arithmetic.
Rat pow_rat(const Rat& base, unsigned exp);

// Exact non-negative rational scalar for bids, costs, budgets, prices and
// payments. All arithmetic is exact; constructing a negative amount throws.
class Money {
 public:
  Money() = default;
  Money(long amount) : value_(amount) { check_(); }  // NOLINT: implicit for literals
  explicit Money(Rat value) : value_(std::move(value)) { check_(); }

  static Money parse(std::string_view text) { return Money(parse_rational(text)); }
  static Money ratio(long num, long den) { return Money(Rat(num, den)); }

  const Rat& value() const { return value_; }
  bool is_zero() const { return value_.is_zero(); }
  std::string str() const { return rational_str(value_); }

  Money& operator+=(const Money& rhs) {
    value_ += rhs.value_;
    return *this;
  }
  friend Money operator+(Money lhs, const Money& rhs) { return lhs += rhs; }
  friend Money operator*(const Money& lhs, const Money& rhs) {
    return Money(Rat(lhs.value_ * rhs.value_));
  }
  // Difference as a signed rational; worker utilities may be negative.
  friend Rat operator-(const Money& lhs, const Money& rhs) {
    return lhs.value_ - rhs.value_;
  }

  friend bool operator==(const Money& lhs, const Money& rhs) = default;
  friend std::strong_ordering operator<=>(const Money& lhs, const Money& rhs) {
    if (lhs.value_ < rhs.value_) return std::strong_ordering::less;
    if (lhs.value_ > rhs.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  void check_() const {
    if (value_ < 0) throw std::invalid_argument("negative money amount");
  }
  Rat value_{};
};

inline Int floor_div(const Money& a, const Money& b) {
  return floor_div(a.value(), b.value());
}

}  // namespace care

#endif  // CARE_RATIONAL_HPP_
