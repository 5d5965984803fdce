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

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "catsim/errors.hpp"

namespace catsim {

using Complex = std::complex<double>;

enum class ModeLabel { A, B };

/// Number-basis cutoff for one bosonic mode.
struct TruncationPolicy {
  std::size_t n_max = 0;
  /// Largest admissible Poisson tail mass beyond n_max.
  double tail_tolerance = 1e-13;

  /// ceil(alpha^2 + 8|alpha|) + 20, which keeps the Poisson tail below 1e-13
  /// for |alpha| <= 4 and well below it for the amplitudes used here.
  static TruncationPolicy for_amplitude(double alpha, double tail_tolerance = 1e-13);

  /// Probability mass of the coherent state |alpha> above n_max.
  double coherent_tail_mass(double alpha) const;
  bool admits(double alpha) const { return coherent_tail_mass(alpha) < tail_tolerance; }
};

/// Normalised pure state of one mode over |0>..|n_max>.
class SingleModeState {
 public:
  /// Requires unit norm within 1e-12 and amplitudes.size() == policy.n_max + 1.
  SingleModeState(Eigen::VectorXcd amplitudes, TruncationPolicy policy);

  /// Rescales to unit norm first. Throws std::invalid_argument for a zero vector.
  static SingleModeState normalized(Eigen::VectorXcd amplitudes, TruncationPolicy policy);

  const Eigen::VectorXcd& amplitudes() const { return amplitudes_; }
  const TruncationPolicy& truncation() const { return policy_; }
  std::size_t n_max() const { return policy_.n_max; }
  std::size_t dimension() const { return static_cast<std::size_t>(amplitudes_.size()); }

 private:
  Eigen::VectorXcd amplitudes_;
  TruncationPolicy policy_;
};

/// Normalised pure two-mode state; amplitudes(m, n) multiplies |m>_a |n>_b.
class TwoModeState {
 public:
  TwoModeState(Eigen::MatrixXcd amplitudes, TruncationPolicy policy_a, TruncationPolicy policy_b);

  static TwoModeState normalized(Eigen::MatrixXcd amplitudes, TruncationPolicy policy_a,
                                 TruncationPolicy policy_b);

  const Eigen::MatrixXcd& amplitudes() const { return amplitudes_; }
  const TruncationPolicy& truncation(ModeLabel mode) const {
    return mode == ModeLabel::A ? policy_a_ : policy_b_;
  }

 private:
  Eigen::MatrixXcd amplitudes_;
  TruncationPolicy policy_a_;
  TruncationPolicy policy_b_;
};

/// Classical mixture of pure states. Weights lie in [0, 1] and sum to 1
/// within 1e-12.
template <class State>
class Mixture {
 public:
  struct Branch {
    double weight;
    State state;
  };

  explicit Mixture(std::vector<Branch> branches);

  const std::vector<Branch>& branches() const { return branches_; }
  std::size_t size() const { return branches_.size(); }

 private:
  std::vector<Branch> branches_;
};

using MixtureState = Mixture<TwoModeState>;
using SingleModeMixture = Mixture<SingleModeState>;

/// Coherent state |alpha> for real alpha (negative alpha gives |-|alpha|>).
/// Throws TruncationTooSmall when the policy does not admit alpha.
SingleModeState coherent_state(double alpha, const TruncationPolicy& policy);
SingleModeState coherent_state(double alpha);

/// Closed-form normalisation of |alpha>|-beta> - |-alpha>|beta>:
/// (1/sqrt2) (1 - exp(-2 alpha^2 - 2 beta^2))^(-1/2).
double bell_normalization(double alpha, double beta);

/// The entangled cat state N (|alpha>|-beta> - |-alpha>|beta>), alpha, beta >= 0,
/// not both zero.
TwoModeState bell_cat_state(double alpha, double beta, const TruncationPolicy& policy_a,
                            const TruncationPolicy& policy_b);
TwoModeState bell_cat_state(double alpha, double beta);

/// Norm of the unnormalised branch difference |alpha>|-beta> - |-alpha>|beta>,
/// evaluated in the truncated basis.
double bell_branch_norm(double alpha, double beta, const TruncationPolicy& policy_a,
                        const TruncationPolicy& policy_b);

/// Equal mixture of |alpha>|-beta> and |-alpha>|beta>.
MixtureState mix_state(double alpha, double beta, const TruncationPolicy& policy_a,
                       const TruncationPolicy& policy_b);
MixtureState mix_state(double alpha, double beta);

TwoModeState tensor(const SingleModeState& a, const SingleModeState& b);

/// <a|b>. States of different cutoffs are compared with zero padding.
Complex overlap(const SingleModeState& a, const SingleModeState& b);
Complex overlap(const TwoModeState& a, const TwoModeState& b);
double fidelity(const SingleModeState& a, const SingleModeState& b);
double fidelity(const TwoModeState& a, const TwoModeState& b);

/// Photon-number distribution; for two-mode states, of the selected mode.
std::vector<double> number_distribution(const SingleModeState& state);
std::vector<double> number_distribution(const TwoModeState& state, ModeLabel mode);

// ---------------------------------------------------------------------------

template <class State>
Mixture<State>::Mixture(std::vector<Branch> branches) : branches_(std::move(branches)) {
  if (branches_.empty()) throw std::invalid_argument("mixture needs at least one branch");
  double total = 0.0;
  for (const auto& b : branches_) {
    if (!(b.weight >= 0.0 && b.weight <= 1.0))
      throw std::invalid_argument("mixture weight outside [0, 1]");
    total += b.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) throw std::invalid_argument("mixture weights do not sum to 1");
}

}  // namespace catsim
