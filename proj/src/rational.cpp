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

#include "care/rational.hpp"

#include <algorithm>
#include <cctype>

namespace care {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c) != 0;
  });
}

Int parse_int(std::string_view s) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw std::invalid_argument("not an integer literal");
  Int v(std::string(s));
  return negative ? Int(-v) : v;
}

}  // namespace

Rat parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty rational literal");
  const auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    Int num = parse_int(text.substr(0, slash));
    Int den = parse_int(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rat(num, den);
  }
  const auto dot = text.find('.');
  if (dot != std::string_view::npos) {
    std::string_view head = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    if (!all_digits(frac)) throw std::invalid_argument("malformed decimal literal");
    bool negative = !head.empty() && head.front() == '-';
    Int whole = head.empty() || head == "-" || head == "+" ? Int(0) : parse_int(head);
    Int scale = 1;
    for (size_t i = 0; i < frac.size(); ++i) scale *= 10;
    Int num = abs(whole) * scale + Int(std::string(frac));
    if (negative) num = -num;
    return Rat(num, scale);
  }
  return Rat(parse_int(text));
}

std::string rational_str(const Rat& value) {
  Int num = numerator(value);
  Int den = denominator(value);
  if (den == 1) return num.str();
  // Terminating decimal iff den = 2^a * 5^b.
  Int d = den;
  int twos = 0, fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1) return num.str() + "/" + den.str();
  const int digits = std::max(twos, fives);
  Int scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  Int scaled = num * scale / den;
  const bool negative = scaled < 0;
  std::string body = abs(scaled).str();
  if (static_cast<int>(body.size()) <= digits)
    body.insert(body.begin(), digits + 1 - body.size(), '0');
  body.insert(body.end() - digits, '.');
  // Trim trailing zeros but keep at least one fractional digit.
  while (body.back() == '0' && body[body.size() - 2] != '.') body.pop_back();
  return negative ? "-" + body : body;
}

Int floor_div(const Rat& a, const Rat& b) {
  if (b <= 0) throw std::invalid_argument("floor_div needs positive divisor");
  Int num = numerator(a) * denominator(b);
  Int den = denominator(a) * numerator(b);
  Int q = num / den;
  if (q * den > num) --q;  // integer division truncates toward zero
  return q;
}

Rat pow_rat(const Rat& base, unsigned exp) {
  return Rat(pow(numerator(base), exp), pow(denominator(base), exp));
}

}  // namespace care
