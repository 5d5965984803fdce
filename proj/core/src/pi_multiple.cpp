// Copyright 2026 The catsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "catsim/pi_multiple.hpp"

#include <cctype>
#include <charconv>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace catsim {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

[[noreturn]] void bad(std::string_view text) {
  throw std::invalid_argument("not a rational multiple of pi: '" + std::string(text) + "'");
}

// Reads a run of decimal digits starting at pos; returns false when none.
bool read_int(std::string_view s, std::size_t& pos, std::int64_t& out) {
  std::size_t end = pos;
  while (end < s.size() && std::isdigit(static_cast<unsigned char>(s[end]))) ++end;
  if (end == pos) return false;
  auto [ptr, ec] = std::from_chars(s.data() + pos, s.data() + end, out);
  if (ec != std::errc() || ptr != s.data() + end) return false;
  pos = end;
  return true;
}

}  // namespace

PiMultiple::PiMultiple(std::int64_t num, std::int64_t den) {
  if (den == 0) throw std::invalid_argument("PiMultiple denominator is zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  if (g == 0) g = 1;
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) den_ = 1;
}

PiMultiple PiMultiple::parse(std::string_view text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(static_cast<char>(std::tolower(c)));
  }
  std::string_view v = s;
  if (v.empty()) bad(text);

  std::size_t pos = 0;
  std::int64_t sign = 1;
  if (v[pos] == '-' || v[pos] == '+') {
    sign = v[pos] == '-' ? -1 : 1;
    ++pos;
  }

  std::int64_t num = 1;
  bool have_coeff = read_int(v, pos, num);
  if (have_coeff && pos == v.size()) {
    if (num == 0) return PiMultiple(0, 1);
    bad(text);
  }
  if (have_coeff && pos < v.size() && v[pos] == '*') ++pos;
  if (v.substr(pos, 2) != "pi") bad(text);
  pos += 2;

  if (pos < v.size() && v[pos] == '*') {
    ++pos;
    std::int64_t more = 0;
    if (!read_int(v, pos, more)) bad(text);
    num *= more;
  }
  std::int64_t den = 1;
  if (pos < v.size() && v[pos] == '/') {
    ++pos;
    if (!read_int(v, pos, den) || den == 0) bad(text);
  }
  if (pos != v.size()) bad(text);
  return PiMultiple(sign * num, den);
}

double PiMultiple::value() const {
  return static_cast<double>(num_) * std::numbers::pi / static_cast<double>(den_);
}

std::optional<std::int64_t> PiMultiple::in_units_of_pi_over(std::int64_t divisor) const {
  if (divisor <= 0) throw std::invalid_argument("divisor must be positive");
  // num/den = m/divisor  <=>  m = num*divisor/den
  std::int64_t g = std::gcd(den_, divisor);
  if (den_ / g != 1) return std::nullopt;
  return num_ * (divisor / den_);
}

PiMultiple PiMultiple::mod_two_pi() const { return PiMultiple(floor_mod(num_, 2 * den_), den_); }

std::string PiMultiple::str() const {
  if (num_ == 0) return "0";
  std::string out;
  if (num_ < 0) out += '-';
  std::int64_t a = num_ < 0 ? -num_ : num_;
  if (a != 1) out += std::to_string(a);
  out += "pi";
  if (den_ != 1) out += "/" + std::to_string(den_);
  return out;
}

std::string PiMultiple::file_label() const {
  std::string s = str();
  std::string out;
  for (char c : s) {
    if (c == '-') {
      out += "m";
    } else if (c == '/') {
      out += "_";
    } else {
      out += c;
    }
  }
  return out;
}

PiMultiple operator+(PiMultiple a, PiMultiple b) {
  return PiMultiple(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}
PiMultiple operator-(PiMultiple a) { return PiMultiple(-a.num_, a.den_); }
PiMultiple operator-(PiMultiple a, PiMultiple b) { return a + (-b); }
PiMultiple operator*(std::int64_t s, PiMultiple a) { return PiMultiple(s * a.num_, a.den_); }

}  // namespace catsim
