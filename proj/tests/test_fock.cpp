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

#include <cmath>
#include <numbers>

#include "catsim/quadrature.hpp"
#include "gtest/gtest.h"
#include "reference.hpp"

using namespace catsim;

namespace {

TruncationPolicy cutoff(std::size_t n_max) { return TruncationPolicy{n_max, 1e-13}; }

}  // namespace

TEST(truncation, default_rule) {
  EXPECT_EQ(TruncationPolicy::for_amplitude(0).n_max, 20u);
  EXPECT_EQ(TruncationPolicy::for_amplitude(2).n_max, 40u);
  EXPECT_EQ(TruncationPolicy::for_amplitude(3).n_max, 53u);
  EXPECT_EQ(TruncationPolicy::for_amplitude(-3).n_max, 53u);
  for (double a : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    EXPECT_TRUE(TruncationPolicy::for_amplitude(a).admits(a)) << a;
  }
}

TEST(truncation, tail_mass_matches_direct_sum) {
  // Poisson(4) mass above 10, summed term by term in long double.
  long double term = std::exp(-4.0L);
  long double below = term;
  for (int n = 1; n <= 10; ++n) {
    term *= 4.0L / n;
    below += term;
  }
  double expected = static_cast<double>(1.0L - below);
  EXPECT_NEAR(cutoff(10).coherent_tail_mass(2.0), expected, 1e-15);
  EXPECT_EQ(cutoff(10).coherent_tail_mass(0.0), 0.0);
}

TEST(coherent_state, vacuum) {
  auto s = coherent_state(0.0, cutoff(10));
  EXPECT_EQ(s.dimension(), 11u);
  EXPECT_EQ(s.amplitudes()(0), Complex(1, 0));
  for (Eigen::Index n = 1; n < 11; ++n) EXPECT_EQ(s.amplitudes()(n), Complex(0, 0));
}

TEST(coherent_state, poisson_mean) {
  auto s = coherent_state(2.0, cutoff(40));
  auto p = number_distribution(s);
  double mean = 0.0;
  for (std::size_t n = 0; n < p.size(); ++n) mean += n * p[n];
  EXPECT_NEAR(mean, 4.0, 1e-10);
}

TEST(coherent_state, overlap_with_mirror) {
  for (double a : {0.5, 1.0, 2.0, 3.0, 4.0}) {
    auto policy = TruncationPolicy::for_amplitude(a);
    Complex ov = overlap(coherent_state(-a, policy), coherent_state(a, policy));
    EXPECT_NEAR(ov.real(), std::exp(-2 * a * a), 1e-10) << a;
    EXPECT_NEAR(ov.imag(), 0.0, 1e-15);
  }
}

TEST(coherent_state, real_coefficients_and_sign) {
  auto plus = coherent_state(1.5, cutoff(40));
  auto minus = coherent_state(-1.5, cutoff(40));
  for (Eigen::Index n = 0; n <= 40; ++n) {
    EXPECT_EQ(plus.amplitudes()(n).imag(), 0.0);
    EXPECT_NEAR(minus.amplitudes()(n).real(), (n % 2 ? -1 : 1) * plus.amplitudes()(n).real(), 1e-16);
  }
}

TEST(coherent_state, truncation_too_small) {
  EXPECT_THROW(coherent_state(4.0, cutoff(10)), TruncationTooSmall);
  EXPECT_THROW(coherent_state(2.0, TruncationPolicy{40, 1e-300}), TruncationTooSmall);
}

TEST(bell_cat_state, normalisation_constant) {
  for (double a : {0.5, 1.0, 2.0, 3.0}) {
    for (double b : {0.5, 1.0, 2.0, 3.0}) {
      auto pa = TruncationPolicy::for_amplitude(a);
      auto pb = TruncationPolicy::for_amplitude(b);
      // The unnormalised branch difference has norm 1/N.
      EXPECT_NEAR(bell_branch_norm(a, b, pa, pb) * bell_normalization(a, b), 1.0, 1e-10) << a << " " << b;
    }
  }
  EXPECT_NEAR(bell_normalization(2, 2), 1 / std::sqrt(2 * (1 - std::exp(-16.0))), 1e-15);
}

TEST(bell_cat_state, swapping_signs_negates) {
  // |-a>|b> - |a>|-b> is the parity image on both modes; it equals -psi.
  auto s = bell_cat_state(2, 2);
  const auto& c = s.amplitudes();
  for (Eigen::Index m = 0; m < c.rows(); ++m) {
    for (Eigen::Index n = 0; n < c.cols(); ++n) {
      double parity = (m + n) % 2 ? -1.0 : 1.0;
      EXPECT_NEAR(std::abs(parity * c(m, n) + c(m, n)), 0.0, 1e-15);
    }
  }
}

TEST(bell_cat_state, reduced_number_distribution) {
  auto s = bell_cat_state(3, 3);
  auto p = number_distribution(s, ModeLabel::A);
  for (std::size_t n = 0; n < p.size(); ++n) {
    double poisson = std::exp(-9.0 + 2.0 * n * std::log(3.0) - std::lgamma(n + 1.0));
    EXPECT_NEAR(p[n], poisson, 1e-8) << n;
    EXPECT_NEAR(p[n], catsim_test::bell_number_distribution(static_cast<int>(n), 3, 3), 1e-14) << n;
  }
}

TEST(bell_cat_state, rejects_bad_amplitudes) {
  EXPECT_THROW(bell_cat_state(-1, 2), std::invalid_argument);
  EXPECT_THROW(bell_cat_state(1, -2), std::invalid_argument);
  EXPECT_THROW(bell_cat_state(0, 0), std::invalid_argument);
  EXPECT_THROW(bell_cat_state(3, 3, cutoff(10), cutoff(60)), TruncationTooSmall);
  EXPECT_NO_THROW(bell_cat_state(0, 2));
}

TEST(mix_state, two_equal_branches) {
  auto m = mix_state(2, 2);
  ASSERT_EQ(m.size(), 2u);
  for (const auto& b : m.branches()) EXPECT_EQ(b.weight, 0.5);
  auto pa = TruncationPolicy::for_amplitude(2);
  EXPECT_NEAR(fidelity(m.branches()[0].state, tensor(coherent_state(2, pa), coherent_state(-2, pa))), 1.0, 1e-15);
  EXPECT_NEAR(fidelity(m.branches()[1].state, tensor(coherent_state(-2, pa), coherent_state(2, pa))), 1.0, 1e-15);
}

TEST(mix_state, marginal_is_branch_average) {
  for (double a : {0.5, 2.0}) {
    auto m = mix_state(a, 1.0);
    auto grid = Grid1D::default_for(a, 1.0, 301);
    for (Axis axis : {Axis::X, Axis::P}) {
      auto mixed = marginal_density(m, ModeLabel::A, axis, grid).density();
      Eigen::VectorXd avg = 0.5 * marginal_density(m.branches()[0].state, ModeLabel::A, axis, grid).density() +
                            0.5 * marginal_density(m.branches()[1].state, ModeLabel::A, axis, grid).density();
      EXPECT_LT((mixed - avg).cwiseAbs().maxCoeff(), 1e-15);
    }
  }
}

TEST(mix_state, perfectly_anticorrelated) {
  auto grid = Grid1D::default_for(3, 3);
  auto spin = spin_statistics(joint_density(mix_state(3, 3), Axis::X, Axis::X, grid, grid));
  EXPECT_NEAR(spin.correlator, -1.0, 1e-6);
}

TEST(mixture, validates_weights) {
  auto s = tensor(coherent_state(1.0), coherent_state(1.0));
  EXPECT_THROW(MixtureState({{0.5, s}, {0.6, s}}), std::invalid_argument);
  EXPECT_THROW(MixtureState({{-0.5, s}, {1.5, s}}), std::invalid_argument);
  EXPECT_THROW(MixtureState(std::vector<MixtureState::Branch>{}), std::invalid_argument);
  EXPECT_NO_THROW(MixtureState({{1.0, s}}));
}

TEST(states, reject_unnormalised_amplitudes) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(5);
  v(0) = 1.0;
  v(1) = 1e-6;
  EXPECT_THROW(SingleModeState(v, cutoff(4)), std::invalid_argument);
  EXPECT_NO_THROW(SingleModeState::normalized(v, cutoff(4)));
  EXPECT_THROW(SingleModeState(Eigen::VectorXcd::Zero(5), cutoff(5)), std::invalid_argument);
  EXPECT_THROW(SingleModeState::normalized(Eigen::VectorXcd::Zero(5), cutoff(4)), std::invalid_argument);
}

TEST(tensor, vacuum_product) {
  auto s = tensor(coherent_state(0.0, cutoff(3)), coherent_state(0.0, cutoff(4)));
  EXPECT_EQ(s.amplitudes().rows(), 4);
  EXPECT_EQ(s.amplitudes().cols(), 5);
  EXPECT_EQ(s.amplitudes()(0, 0), Complex(1, 0));
  EXPECT_EQ(s.amplitudes().cwiseAbs2().sum(), 1.0);
}

TEST(tensor, product_is_rank_one) {
  auto s = tensor(coherent_state(2.0), coherent_state(1.0));
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(s.amplitudes());
  EXPECT_NEAR(svd.singularValues()(0), 1.0, 1e-12);
  EXPECT_LT(svd.singularValues()(1), 1e-12);
}

TEST(tensor, joint_factorises) {
  auto a = coherent_state(2.0);
  auto b = coherent_state(1.0);
  auto grid = Grid1D::default_for(2.0, 1.0, 401);
  auto joint = joint_density(tensor(a, b), Axis::X, Axis::X, grid, grid).density();
  Eigen::VectorXd pa = marginal_density(a, Axis::X, grid).density();
  Eigen::VectorXd pb = marginal_density(b, Axis::X, grid).density();
  EXPECT_LT((joint - pa * pb.transpose()).cwiseAbs().maxCoeff(), 1e-10);
}

TEST(truncation, larger_cutoff_changes_little) {
  // Probabilities move by less than the tail tolerance when n_max grows.
  auto grid = Grid1D::default_for(2, 2);
  auto base = bell_cat_state(2, 2);
  auto wide = bell_cat_state(2, 2, cutoff(60), cutoff(60));
  auto s0 = spin_statistics(joint_density(base, Axis::X, Axis::X, grid, grid));
  auto s1 = spin_statistics(joint_density(wide, Axis::X, Axis::X, grid, grid));
  EXPECT_LT(std::abs(s0.p_plus_minus - s1.p_plus_minus), 1e-13);
  EXPECT_LT(std::abs(s0.p_minus_plus - s1.p_minus_plus), 1e-13);
  auto n0 = number_distribution(base, ModeLabel::A);
  auto n1 = number_distribution(wide, ModeLabel::A);
  for (std::size_t n = 0; n < n0.size(); ++n) EXPECT_LT(std::abs(n0[n] - n1[n]), 1e-13);
}
