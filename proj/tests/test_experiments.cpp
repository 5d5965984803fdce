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

#include "catsim/experiments.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "catsim/errors.hpp"
#include "gtest/gtest.h"
#include "reference.hpp"

using namespace catsim;

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
constexpr double kPi = std::numbers::pi;

double bell_lg(double a, double b) {
  return kSqrt2 * std::erf(kSqrt2 * a) * std::erf(kSqrt2 * b) / catsim_test::bell_denominator(a, b);
}

class ScopedThreads {
 public:
  explicit ScopedThreads(const char* value) {
    if (const char* old = std::getenv("CATSIM_THREADS")) old_ = old;
    setenv("CATSIM_THREADS", value, 1);
  }
  ~ScopedThreads() {
    if (old_.empty()) {
      unsetenv("CATSIM_THREADS");
    } else {
      setenv("CATSIM_THREADS", old_.c_str(), 1);
    }
  }

 private:
  std::string old_;
};

}  // namespace

TEST(experiment_config, defaults) {
  EXPECT_EQ(ExperimentConfig::eraser_defaults().k, 2);
  EXPECT_EQ(ExperimentConfig::eraser_defaults().alpha, 2.0);
  EXPECT_EQ(ExperimentConfig::leggett_garg_defaults().k, 4);
  EXPECT_EQ(ExperimentConfig::sequence_defaults().alpha, 3.0);
  EXPECT_EQ(ExperimentConfig::sequence_defaults().beta, 3.0);
  EXPECT_EQ(ExperimentConfig::dimension_witness_defaults().alpha, 3.0);
  EXPECT_EQ(ExperimentConfig::epr_defaults().k, 2);
  EXPECT_EQ(ExperimentConfig::eraser_defaults().grid().size(), 1201u);
}

TEST(experiment_config, validation) {
  auto c = ExperimentConfig::eraser_defaults();
  EXPECT_NO_THROW(c.validate());
  auto bad = c;
  bad.k = 3;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.grid_points = 1200;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.alpha = -1;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.beta = NAN;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.schedule = {{PiMultiple(0, 1), PiMultiple(-1, 8)}};
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  bad = c;
  bad.grid_half_width = 0.0;
  EXPECT_THROW(bad.validate(), std::invalid_argument);
  EXPECT_THROW(run_eraser(bad), std::invalid_argument);
}

TEST(experiment_config, overrides) {
  auto c = ExperimentConfig::eraser_defaults();
  c.n_max = 90;
  c.grid_half_width = 11.0;
  EXPECT_EQ(c.policy_for(2).n_max, 90u);
  EXPECT_EQ(c.grid().hi(), 11.0);
  c.n_max = 10;
  EXPECT_THROW(run_eraser(c), TruncationTooSmall);
  c = ExperimentConfig::eraser_defaults();
  c.grid_half_width = 3.0;
  EXPECT_THROW(run_eraser(c), GridTooNarrow);
}

TEST(eraser, fringes_match_closed_form) {
  auto d = run_eraser(ExperimentConfig::eraser_defaults());
  EXPECT_LT(d.eraser.max_deviation(), 1e-8);
  EXPECT_LT(d.which_way.max_deviation(), 1e-8);
  EXPECT_LT(d.which_way_x.max_deviation(), 1e-8);
  EXPECT_NEAR(d.prob_plus, 0.5, 1e-12);
  // Fringes are there: the plus branch vanishes near 2 sqrt2 p alpha = pi/2.
  const auto& g = d.eraser.grid;
  const double p0 = kPi / (4 * kSqrt2 * 2);
  double near_zero = INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (std::abs(g[i] - p0) < 0.03) near_zero = std::min(near_zero, d.eraser.numeric_plus(static_cast<Eigen::Index>(i)));
  }
  EXPECT_LT(near_zero, 1e-3);
  EXPECT_GT(fringe_visibility(g, d.eraser.numeric_plus), 0.99);
}

TEST(eraser, which_way_arm_residual_fringes) {
  // Keeping the which-way record leaves a cos fringe of relative size
  // e^{-2 beta^2} (about 3.4e-4 at beta = 2), the overlap of the two B
  // pointer states. It follows the closed form, and is far from the 1e-6
  // one would get from ideal pointers.
  auto d = run_eraser(ExperimentConfig::eraser_defaults());
  const double overlap = std::exp(-8.0);
  EXPECT_NEAR(d.which_way_visibility, overlap, 2e-6);
  double worst = 0;
  for (std::size_t i = 0; i < d.which_way.grid.size(); ++i) {
    const double p = d.which_way.grid[i];
    worst = std::max(worst, std::abs(d.which_way.oracle_plus(static_cast<Eigen::Index>(i)) -
                                     std::exp(-p * p) / std::sqrt(kPi)));
  }
  EXPECT_NEAR(d.which_way_gaussian_deviation, worst, 1e-10);
  EXPECT_LT(d.which_way_gaussian_deviation, 1e-3);
  EXPECT_GT(d.which_way_gaussian_deviation, 1e-4);
}

TEST(eraser, large_beta) {
  auto c = ExperimentConfig::eraser_defaults();
  c.beta = 8;
  auto d = run_eraser(c);
  EXPECT_LT(d.max_deviation_from_simple, 1e-8);
  EXPECT_LT(d.eraser.max_deviation(), 1e-8);
  EXPECT_LT(d.which_way_visibility, 1e-6);
  EXPECT_LT(d.which_way_gaussian_deviation, 1e-6);
}

TEST(eraser, zero_alpha_is_flat) {
  auto c = ExperimentConfig::eraser_defaults();
  c.alpha = 0;
  auto d = run_eraser(c);
  EXPECT_LT(d.eraser.max_deviation(), 1e-8);
  EXPECT_LT(fringe_visibility(d.eraser.grid, d.eraser.numeric_plus), 1e-8);
  EXPECT_LT(fringe_visibility(d.eraser.grid, d.eraser.numeric_minus), 1e-8);
}

TEST(eraser, which_way_x_branches_are_separated) {
  auto d = run_eraser(ExperimentConfig::eraser_defaults());
  // X_A stays bimodal per branch: plus sits right, minus left.
  GriddedDistribution1D plus(d.which_way_x.grid, d.which_way_x.numeric_plus);
  GriddedDistribution1D minus(d.which_way_x.grid, d.which_way_x.numeric_minus);
  EXPECT_GT(moments(plus).mean, 0);
  EXPECT_LT(moments(minus).mean, 0);
  EXPECT_NEAR(plus.integral(), 1.0, 1e-10);
}

TEST(leggett_garg, violation_at_two) {
  auto r = run_leggett_garg(2, 2, ExperimentConfig::leggett_garg_defaults());
  EXPECT_NEAR(r.b_lg, std::sqrt(2.0), 5e-3);
  EXPECT_NEAR(r.b_lg, bell_lg(2, 2), 1e-8);
  EXPECT_GE(r.p_cond, 0.999);
  EXPECT_NEAR(r.p_cond, catsim_test::bell_p_cond(2, 2), 1e-9);
  EXPECT_NEAR(r.b_lg, r.e12 + r.e23 - r.e13, 1e-12);
  EXPECT_EQ(r.e12, -r.c12);
  EXPECT_EQ(r.e13, -r.c13);
  EXPECT_EQ(r.e23, -r.c23);
  EXPECT_NEAR(r.c12, catsim_test::bell_sign_correlator(kPi / 4, 0, 2, 2), 1e-8);
  EXPECT_NEAR(r.c13, catsim_test::bell_sign_correlator(kPi / 2, 0, 2, 2), 1e-8);
  EXPECT_NEAR(r.c23, catsim_test::bell_sign_correlator(kPi / 2, kPi / 4, 2, 2), 1e-8);
  for (double e : {r.e12, r.e13, r.e23}) EXPECT_LE(std::abs(e), 1.0);
}

TEST(leggett_garg, sweep_rises_to_plateau) {
  const auto c = ExperimentConfig::leggett_garg_defaults();
  double last = -INFINITY;
  for (double a : {0.3, 0.5, 0.75, 1.0, 1.5, 2.0, 2.5, 3.0}) {
    auto r = run_leggett_garg(a, 2, c);
    EXPECT_GT(r.b_lg, last) << a;
    EXPECT_NEAR(r.b_lg, bell_lg(a, 2), 1e-8) << a;
    EXPECT_NEAR(r.p_cond, catsim_test::bell_p_cond(a, 2), 1e-8) << a;
    if (a >= 1.5) {
      EXPECT_NEAR(r.b_lg, std::sqrt(2.0), 5e-3) << a;
    }
    last = r.b_lg;
  }
  EXPECT_LE(run_leggett_garg(0.3, 2, c).b_lg, 1.05);
  EXPECT_LT(std::abs(run_leggett_garg(2, 2, c).b_lg - run_leggett_garg(3, 2, c).b_lg), 1e-3);
}

TEST(leggett_garg, thread_count_does_not_change_results) {
  const auto c = ExperimentConfig::leggett_garg_defaults();
  LgReport one, many;
  {
    ScopedThreads t("1");
    one = run_leggett_garg(1.3, 2, c);
  }
  {
    ScopedThreads t("8");
    many = run_leggett_garg(1.3, 2, c);
  }
  EXPECT_EQ(one.c12, many.c12);
  EXPECT_EQ(one.c13, many.c13);
  EXPECT_EQ(one.c23, many.c23);
  EXPECT_EQ(one.p_cond, many.p_cond);
}

TEST(mixture_comparison, single_rotations_indistinguishable) {
  auto c = ExperimentConfig::sequence_defaults();
  c.schedule = single_rotation_schedule();
  auto mc = run_mixture_comparison(c);
  ASSERT_EQ(mc.snapshots.size(), 5u);
  for (const auto& s : mc.snapshots) {
    EXPECT_LE(s.sup_diff, 5e-4) << s.times.first.str();
    EXPECT_NEAR(s.bell.integral(), 1.0, 1e-8);
    EXPECT_NEAR(s.mix.integral(), 1.0, 1e-8);
    EXPECT_NEAR(s.bell_spin.correlator,
                catsim_test::bell_sign_correlator(s.times.first.value(), s.times.second.value(), 3, 3), 1e-8);
  }
}

TEST(mixture_comparison, double_rotation_diverges) {
  auto mc = run_mixture_comparison(ExperimentConfig::sequence_defaults());
  ASSERT_EQ(mc.snapshots.size(), 6u);
  const auto& last = mc.snapshots.back();
  EXPECT_EQ(last.times, (TimePair{PiMultiple(1, 2), PiMultiple(1, 4)}));
  EXPECT_GT(std::abs(last.delta_e()), 0.5);
  EXPECT_NEAR(last.bell_spin.correlator, -std::cos(kPi / 4), 1e-6);
  EXPECT_NEAR(last.mix_spin.correlator, 0.0, 1e-8);
  EXPECT_GT(last.sup_diff, 5e-4);
}

TEST(mixture_comparison, bell_state_at_quarter_lattice_has_no_mixture_analogue) {
  // (pi/4, pi/4): both sides rotated by the same amount keep the Bell
  // anti-correlation, the mixture loses half of it.
  auto c = ExperimentConfig::sequence_defaults();
  c.schedule = {{PiMultiple(1, 4), PiMultiple(1, 4)}};
  auto mc = run_mixture_comparison(c);
  EXPECT_NEAR(mc.snapshots[0].bell_spin.correlator, catsim_test::bell_sign_correlator(0, 0, 3, 3), 1e-8);
  EXPECT_NEAR(mc.snapshots[0].mix_spin.correlator, -0.5, 1e-6);
}

TEST(dimension_witness, macroscopic_angles) {
  auto r = run_dimension_witness(DwAngles::macroscopic(), 3, ExperimentConfig::dimension_witness_defaults());
  EXPECT_NEAR(r.i_dw, 1 + 2 * kSqrt2, 5e-3);
  EXPECT_NEAR(r.i_dw_analytic, 1 + 2 * kSqrt2, 1e-12);
  EXPECT_LT(r.max_deviation, 5e-3);
  auto pairs = r.angles.pairs();
  for (std::size_t i = 0; i < 5; ++i) {
    const double e = catsim_test::dw_sign_expectation(pairs[i].first.value(), pairs[i].second.value(), 3);
    EXPECT_NEAR(r.correlators[i], e, 1e-8) << i;
    EXPECT_EQ(r.analytic[i], dw_expectation(pairs[i].first, pairs[i].second));
  }
  EXPECT_NEAR(r.i_dw, dw_combination(r.correlators[0], r.correlators[1], r.correlators[2], r.correlators[3],
                                     r.correlators[4]),
              1e-15);
}

TEST(dimension_witness, alternate_and_trivial_angles) {
  const auto c = ExperimentConfig::dimension_witness_defaults();
  EXPECT_GT(run_dimension_witness(DwAngles::alternate(), 3, c).i_dw, 3);
  DwAngles zero{PiMultiple(0, 1), PiMultiple(0, 1), PiMultiple(0, 1), PiMultiple(0, 1), PiMultiple(0, 1)};
  auto z = run_dimension_witness(zero, 3, c);
  EXPECT_NEAR(z.i_dw, 1.0, 1e-8);
  EXPECT_EQ(z.i_dw_analytic, 1.0);
  DwAngles off = DwAngles::macroscopic();
  off.phi2 = PiMultiple(1, 16);
  EXPECT_THROW(run_dimension_witness(off, 3, c), InvalidAngle);
}

TEST(dimension_witness, small_alpha_loses_violation) {
  auto r = run_dimension_witness(DwAngles::macroscopic(), 0.3, ExperimentConfig::dimension_witness_defaults());
  EXPECT_NEAR(r.i_dw, (1 + 2 * kSqrt2) * std::erf(0.3 * kSqrt2), 1e-8);
  EXPECT_LT(r.i_dw, 3);
}

TEST(dimension_witness, qubit_model) {
  auto q = qubit_dimension_witness(DwAngles::qubit());
  EXPECT_NEAR(q.i_dw, 1 + 2 * kSqrt2, 1e-12);
}

TEST(dimension_witness, classical_bound_is_three) {
  auto b = classical_dw_bound();
  EXPECT_EQ(b.product_model, 3.0);
  EXPECT_EQ(b.bit_model, 3.0);
  EXPECT_EQ(b.strategies, 32u + 128u);
}

TEST(epr, numeric_matches_closed_form) {
  auto r = run_epr(2, 2, ExperimentConfig::epr_defaults());
  EXPECT_NEAR(r.var_x_inf, r.oracle.var_x_inf, 1e-6);
  EXPECT_NEAR(r.var_p_inf, r.oracle.var_p_inf, 1e-6);
  EXPECT_NEAR(r.epsilon_sq, r.var_x_inf * r.var_p_inf, 1e-15);
  EXPECT_NEAR(r.epsilon_m_sq, r.epsilon_m_sq_oracle, 1e-8);
  EXPECT_GE(r.var_x_inf, 0);
  EXPECT_GE(r.var_p_inf, 0);
}

TEST(epr, alpha2_beta2_sits_just_above_quarter) {
  // The X inference misassigns the sign of X_B with probability of order
  // erfc(2 sqrt2)/2 ~ 3e-5, each mistake costing (2 sqrt2 alpha)^2 in
  // variance. That lifts var_x_inf to 0.50101 and epsilon^2 to 0.25051,
  // above 1/4, while var_p_inf is already at its ideal 1/2 - 8e^{-16}.
  auto r = run_epr(2, 2, ExperimentConfig::epr_defaults());
  EXPECT_NEAR(r.epsilon_sq, 0.250506273851, 1e-10);
  EXPECT_GT(r.epsilon_sq, 0.25);
  EXPECT_LT(r.epsilon_m_sq, 0.25);
  // A larger beta removes the misassignment.
  auto far = run_epr(2, 4, ExperimentConfig::epr_defaults());
  EXPECT_LT(far.epsilon_sq, 0.25);
}

TEST(epr, large_beta_limit) {
  auto r = run_epr(2, 8, ExperimentConfig::epr_defaults());
  EXPECT_NEAR(r.epsilon_sq, 0.5 * (0.5 - 4 * std::exp(-16.0)), 1e-6);
  EXPECT_NEAR(r.var_p_inf, 0.5 - 4 * std::exp(-16.0), 1e-6);
  EXPECT_NEAR(r.var_p_inf, ideal_p_variance(2), 1e-12);
}

TEST(epr, frozen_alpha1_beta2) {
  auto r = run_epr(1, 2, ExperimentConfig::epr_defaults());
  EXPECT_NEAR(r.epsilon_sq, 0.231805768371, 1e-10);
}

TEST(epr, macro_epr_below_quarter_from_one) {
  const auto c = ExperimentConfig::epr_defaults();
  for (int i = 0; i <= 20; ++i) {
    const double a = 1.0 + 0.1 * i;
    auto r = run_epr(a, 2, c);
    EXPECT_LT(r.epsilon_m_sq, 0.25) << a;
    EXPECT_NEAR(r.epsilon_m_sq, r.epsilon_m_sq_oracle, 1e-8) << a;
  }
}

TEST(epr, vacuum_limit) {
  auto r = run_epr(0.01, 2, ExperimentConfig::epr_defaults());
  EXPECT_NEAR(r.epsilon_sq, 0.25, 1e-3);
  EXPECT_LE(r.epsilon_sq, 0.25);
}

TEST(epr, steering_region_nonempty_for_each_beta) {
  for (double b : {0.5, 1.0, 2.0}) {
    bool found = false;
    for (int i = 1; i <= 30 && !found; ++i) {
      found = epr_variances({0.1 * i, b, Branch::Plus}).product() < 0.25;
    }
    EXPECT_TRUE(found) << b;
  }
}

TEST(q_scan, dw_sequence_weights) {
  auto grid = default_q_grid(3);
  auto sup = q_scan(dw_q_sequence(3, 4, PiMultiple(1, 4), PiMultiple(-1, 8), false), grid, grid);
  auto mix = q_scan(dw_q_sequence(3, 4, PiMultiple(1, 4), PiMultiple(-1, 8), true), grid, grid);
  ASSERT_EQ(sup.size(), 3u);
  ASSERT_EQ(mix.size(), 3u);
  EXPECT_EQ(sup[0].label, "initial");
  EXPECT_EQ(sup[1].label, "prepared");
  EXPECT_EQ(sup[2].label, "measured");
  for (const auto& s : {sup[0], sup[1], sup[2], mix[0], mix[1], mix[2]}) {
    EXPECT_NEAR(s.integral, 1.0, 1e-6);
    EXPECT_GE(s.q.minCoeff(), 0.0);
  }
  // Single peak at (3, 0).
  Eigen::Index i, j;
  sup[0].q.maxCoeff(&i, &j);
  EXPECT_NEAR(sup[0].x[static_cast<std::size_t>(i)], 3.0, 0.06);
  EXPECT_NEAR(sup[0].p[static_cast<std::size_t>(j)], 0.0, 0.06);
  EXPECT_NEAR(sup[1].weight_right, 0.5, 1e-3);
  EXPECT_NEAR(sup[1].weight_left, 0.5, 1e-3);
  EXPECT_NEAR(mix[1].weight_right, 0.5, 1e-3);
  // cos^2(pi/8) against 1/2.
  EXPECT_NEAR(sup[2].weight_right, std::pow(std::cos(kPi / 8), 2), 1e-3);
  EXPECT_NEAR(mix[2].weight_right, 0.5, 1e-3);
  EXPECT_GT(std::abs(sup[2].weight_right - mix[2].weight_right), 0.2);
  // Before the second rotation the two are close.
  EXPECT_LT((sup[1].q - mix[1].q).cwiseAbs().maxCoeff(), 5e-4);
}

TEST(q_scan, rejects_narrow_grid) {
  auto narrow = Grid1D::symmetric(2, 41);
  auto seq = dw_q_sequence(3, 4, PiMultiple(1, 4), PiMultiple(-1, 8), false);
  EXPECT_THROW(q_scan(seq, narrow, narrow), GridTooNarrow);
}
