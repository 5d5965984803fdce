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

#include <stdexcept>

namespace catsim {

/// The Fock-space cutoff leaves more probability mass in the tail than the
/// truncation policy tolerates.
class TruncationTooSmall : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A quadrature grid does not cover the support of the density: the density
/// at the grid boundary exceeds the admissible cutoff.
class GridTooNarrow : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Conditioning on a half-line that carries (numerically) zero probability.
class EmptyCondition : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An angle outside the set where the two-state cat solution holds.
class InvalidAngle : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace catsim
