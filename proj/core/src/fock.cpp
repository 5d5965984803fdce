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

#include "catsim/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace catsim {

namespace {

constexpr double kNormTolerance = 1e-12;

void check_norm(double norm_sq, const char* what) {
  if (!(std::abs(norm_sq - 1.0) <= kNormTolerance)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << " is not normalised: |psi|^2 = " << norm_sq;
    throw std::invalid_argument(msg.str());
  }
}

void require_admits(const TruncationPolicy& policy, double alpha) {
  double tail = policy.coherent_tail_mass(alpha);
  if (!(tail < policy.tail_tolerance)) {
    std::ostringstream msg;
    msg << "n_max=" << policy.n_max << " leaves tail mass " << tail << " for alpha=" << alpha
        << " (tolerance " << policy.tail_tolerance << ")";
    throw TruncationTooSmall(msg.str());
  }
}

void require_amplitude(double alpha, const char* name) {
  if (!std::isfinite(alpha) || alpha < 0.0)
    throw std::invalid_argument(std::string(name) + " must be finite and non-negative");
}

Eigen::VectorXcd padded(const Eigen::VectorXcd& v, Eigen::Index n) {
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

TruncationPolicy TruncationPolicy::for_amplitude(double alpha, double tail_tolerance) {
  double a = std::abs(alpha);
  TruncationPolicy p;
  p.n_max = static_cast<std::size_t>(std::ceil(a * a + 8.0 * a)) + 20;
  p.tail_tolerance = tail_tolerance;
  return p;
}

double TruncationPolicy::coherent_tail_mass(double alpha) const {
  double a2 = alpha * alpha;
  if (a2 == 0.0) return 0.0;
  // Sum Poisson(a2) terms above n_max in log space; the terms decrease
  // monotonically once n exceeds a2, so stop when they stop mattering.
  double log_a2 = std::log(a2);
  double sum = 0.0;
  for (std::size_t n = n_max + 1;; ++n) {
    double dn = static_cast<double>(n);
    double term = std::exp(-a2 + dn * log_a2 - std::lgamma(dn + 1.0));
    sum += term;
    if (dn > a2 && term <= sum * 1e-17) break;
    if (n > n_max + 100000) break;
  }
  return sum;
}

SingleModeState::SingleModeState(Eigen::VectorXcd amplitudes, TruncationPolicy policy)
    : amplitudes_(std::move(amplitudes)), policy_(policy) {
  if (static_cast<std::size_t>(amplitudes_.size()) != policy_.n_max + 1)
    throw std::invalid_argument("amplitude vector length must be n_max + 1");
  check_norm(amplitudes_.squaredNorm(), "single-mode state");
}

SingleModeState SingleModeState::normalized(Eigen::VectorXcd amplitudes, TruncationPolicy policy) {
  double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalise a zero vector");
  amplitudes /= n;
  return SingleModeState(std::move(amplitudes), policy);
}

TwoModeState::TwoModeState(Eigen::MatrixXcd amplitudes, TruncationPolicy policy_a,
                           TruncationPolicy policy_b)
    : amplitudes_(std::move(amplitudes)), policy_a_(policy_a), policy_b_(policy_b) {
  if (static_cast<std::size_t>(amplitudes_.rows()) != policy_a_.n_max + 1 ||
      static_cast<std::size_t>(amplitudes_.cols()) != policy_b_.n_max + 1)
    throw std::invalid_argument("amplitude matrix shape must be (n_max_a + 1) x (n_max_b + 1)");
  check_norm(amplitudes_.squaredNorm(), "two-mode state");
}

TwoModeState TwoModeState::normalized(Eigen::MatrixXcd amplitudes, TruncationPolicy policy_a,
                                      TruncationPolicy policy_b) {
  double n = amplitudes.norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalise a zero matrix");
  amplitudes /= n;
  return TwoModeState(std::move(amplitudes), policy_a, policy_b);
}

namespace {

// Unnormalised-then-renormalised coherent amplitudes, e^{-a^2/2} a^n / sqrt(n!).
Eigen::VectorXcd coherent_amplitudes(double alpha, std::size_t n_max) {
  Eigen::VectorXcd c(static_cast<Eigen::Index>(n_max + 1));
  double v = std::exp(-0.5 * alpha * alpha);
  c(0) = v;
  for (std::size_t n = 1; n <= n_max; ++n) {
    v *= alpha / std::sqrt(static_cast<double>(n));
    c(static_cast<Eigen::Index>(n)) = v;
  }
  return c / c.norm();
}

}  // namespace

SingleModeState coherent_state(double alpha, const TruncationPolicy& policy) {
  if (!std::isfinite(alpha)) throw std::invalid_argument("alpha must be finite");
  require_admits(policy, alpha);
  return SingleModeState(coherent_amplitudes(alpha, policy.n_max), policy);
}

SingleModeState coherent_state(double alpha) {
  return coherent_state(alpha, TruncationPolicy::for_amplitude(alpha));
}

double bell_normalization(double alpha, double beta) {
  return 1.0 / std::sqrt(2.0 * -std::expm1(-2.0 * alpha * alpha - 2.0 * beta * beta));
}

namespace {

Eigen::MatrixXcd bell_branches(double alpha, double beta, const TruncationPolicy& pa,
                               const TruncationPolicy& pb) {
  require_amplitude(alpha, "alpha");
  require_amplitude(beta, "beta");
  if (alpha == 0.0 && beta == 0.0)
    throw std::invalid_argument("alpha and beta cannot both be zero");
  require_admits(pa, alpha);
  require_admits(pb, beta);
  Eigen::VectorXcd a_plus = coherent_amplitudes(alpha, pa.n_max);
  Eigen::VectorXcd a_minus = coherent_amplitudes(-alpha, pa.n_max);
  Eigen::VectorXcd b_plus = coherent_amplitudes(beta, pb.n_max);
  Eigen::VectorXcd b_minus = coherent_amplitudes(-beta, pb.n_max);
  return a_plus * b_minus.transpose() - a_minus * b_plus.transpose();
}

}  // namespace

TwoModeState bell_cat_state(double alpha, double beta, const TruncationPolicy& policy_a,
                            const TruncationPolicy& policy_b) {
  return TwoModeState::normalized(bell_branches(alpha, beta, policy_a, policy_b), policy_a,
                                  policy_b);
}

TwoModeState bell_cat_state(double alpha, double beta) {
  return bell_cat_state(alpha, beta, TruncationPolicy::for_amplitude(alpha),
                        TruncationPolicy::for_amplitude(beta));
}

double bell_branch_norm(double alpha, double beta, const TruncationPolicy& policy_a,
                        const TruncationPolicy& policy_b) {
  return bell_branches(alpha, beta, policy_a, policy_b).norm();
}

MixtureState mix_state(double alpha, double beta, const TruncationPolicy& policy_a,
                       const TruncationPolicy& policy_b) {
  require_amplitude(alpha, "alpha");
  require_amplitude(beta, "beta");
  TwoModeState first = tensor(coherent_state(alpha, policy_a), coherent_state(-beta, policy_b));
  TwoModeState second = tensor(coherent_state(-alpha, policy_a), coherent_state(beta, policy_b));
  return MixtureState({{0.5, std::move(first)}, {0.5, std::move(second)}});
}

MixtureState mix_state(double alpha, double beta) {
  return mix_state(alpha, beta, TruncationPolicy::for_amplitude(alpha),
                   TruncationPolicy::for_amplitude(beta));
}

TwoModeState tensor(const SingleModeState& a, const SingleModeState& b) {
  Eigen::MatrixXcd c = a.amplitudes() * b.amplitudes().transpose();
  return TwoModeState::normalized(std::move(c), a.truncation(), b.truncation());
}

Complex overlap(const SingleModeState& a, const SingleModeState& b) {
  Eigen::Index n = std::max(a.amplitudes().size(), b.amplitudes().size());
  return padded(a.amplitudes(), n).dot(padded(b.amplitudes(), n));
}

Complex overlap(const TwoModeState& a, const TwoModeState& b) {
  const auto& x = a.amplitudes();
  const auto& y = b.amplitudes();
  Eigen::Index r = std::min(x.rows(), y.rows());
  Eigen::Index c = std::min(x.cols(), y.cols());
  // Entries outside the common block pair with zeros.
  return (x.topLeftCorner(r, c).conjugate().cwiseProduct(y.topLeftCorner(r, c))).sum();
}

double fidelity(const SingleModeState& a, const SingleModeState& b) {
  return std::norm(overlap(a, b));
}

double fidelity(const TwoModeState& a, const TwoModeState& b) { return std::norm(overlap(a, b)); }

std::vector<double> number_distribution(const SingleModeState& state) {
  Eigen::VectorXd p = state.amplitudes().cwiseAbs2();
  return std::vector<double>(p.data(), p.data() + p.size());
}

std::vector<double> number_distribution(const TwoModeState& state, ModeLabel mode) {
  Eigen::MatrixXd p = state.amplitudes().cwiseAbs2();
  Eigen::VectorXd marginal =
      mode == ModeLabel::A ? Eigen::VectorXd(p.rowwise().sum()) : Eigen::VectorXd(p.colwise().sum().transpose());
  return std::vector<double>(marginal.data(), marginal.data() + marginal.size());
}

}  // namespace catsim
