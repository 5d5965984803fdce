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

#include "catsim/fock.hpp"
#include "catsim/pi_multiple.hpp"

namespace catsim {

/// U(t) = exp(-i t n^k) acting on one mode, in units where the nonlinear
/// coupling is 1. k must be even and at least 2; t must be non-negative.
///
/// Times given as a PiMultiple are applied with exact integer phase
/// arithmetic; plain doubles go through an extended-precision reduction.
class NonlinearUnitary {
 public:
  NonlinearUnitary(int k, PiMultiple t, ModeLabel mode = ModeLabel::A);
  NonlinearUnitary(int k, double t, ModeLabel mode = ModeLabel::A);

  int k() const { return k_; }
  double t() const { return t_; }
  const std::optional<PiMultiple>& exact_time() const { return exact_; }
  ModeLabel mode() const { return mode_; }

  NonlinearUnitary on(ModeLabel mode) const;

  /// exp(-i sign t n^k) for n = 0..n_max.
  Eigen::VectorXcd phases(std::size_t n_max, int sign = +1) const;

 private:
  int k_;
  double t_;
  std::optional<PiMultiple> exact_;
  ModeLabel mode_;
};

SingleModeState evolve(const SingleModeState& state, const NonlinearUnitary& u);
TwoModeState evolve(const TwoModeState& state, const NonlinearUnitary& u);
MixtureState evolve(const MixtureState& state, const NonlinearUnitary& u);
SingleModeMixture evolve(const SingleModeMixture& state, const NonlinearUnitary& u);

SingleModeState inverse_evolve(const SingleModeState& state, const NonlinearUnitary& u);
TwoModeState inverse_evolve(const TwoModeState& state, const NonlinearUnitary& u);
MixtureState inverse_evolve(const MixtureState& state, const NonlinearUnitary& u);
SingleModeMixture inverse_evolve(const SingleModeMixture& state, const NonlinearUnitary& u);

/// Applies U_A(t_a) then U_B(t_b).
TwoModeState evolve_both(const TwoModeState& state, int k, PiMultiple t_a, PiMultiple t_b);
MixtureState evolve_both(const MixtureState& state, int k, PiMultiple t_a, PiMultiple t_b);

/// Closed form of exp(-i t n^4)|alpha> = A|alpha> + B|-alpha> at t = m pi/8.
struct CatDecomposition {
  Complex coeff_plus;
  Complex coeff_minus;
  double base_alpha = 0.0;
  std::int64_t m = 0;

  /// |A|^2 + |B|^2 + 2 Re(A conj(B)) exp(-2 alpha^2).
  double norm_sq() const;
  /// A|alpha> + B|-alpha> in the given truncation.
  SingleModeState state(const TruncationPolicy& policy) const;
};

CatDecomposition cat_decomposition(std::int64_t m, double alpha);

/// Largest fidelity between `state` and any normalised A|alpha> + B|-alpha>.
double two_state_fidelity(const SingleModeState& state, double alpha);

}  // namespace catsim
