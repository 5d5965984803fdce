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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace catsim {

/// An exact rational multiple of pi, num/den * pi, kept in lowest terms with
/// den > 0. Interaction times and measurement angles are specified this way
/// so that membership in the pi/8 lattice is decided without rounding.
class PiMultiple {
 public:
  constexpr PiMultiple() = default;
  PiMultiple(std::int64_t num, std::int64_t den);

  /// Parses forms such as "0", "pi", "-pi/4", "7pi/4", "3*pi/8", "pi*3/8".
  /// Throws std::invalid_argument on anything else.
  static PiMultiple parse(std::string_view text);

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  double value() const;

  /// Returns m such that this == m*pi/divisor, if such an integer exists.
  std::optional<std::int64_t> in_units_of_pi_over(std::int64_t divisor) const;

  /// Reduces into [0, 2) * pi.
  PiMultiple mod_two_pi() const;

  /// Human-readable form, e.g. "7pi/4", "-pi/8", "0".
  std::string str() const;
  /// Filename-safe form, e.g. "7pi_4", "m_pi_8", "0".
  std::string file_label() const;

  friend PiMultiple operator+(PiMultiple a, PiMultiple b);
  friend PiMultiple operator-(PiMultiple a, PiMultiple b);
  friend PiMultiple operator-(PiMultiple a);
  friend PiMultiple operator*(std::int64_t s, PiMultiple a);
  friend bool operator==(const PiMultiple&, const PiMultiple&) = default;

 private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

}  // namespace catsim
