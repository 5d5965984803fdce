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

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>

#include "catsim/parallel.hpp"

namespace catsim {

namespace {

const PiMultiple kZero(0, 1);
const PiMultiple kPiOver8(1, 8);
const PiMultiple kPiOver4(1, 4);
const PiMultiple kPiOver2(1, 2);

Eigen::VectorXd sample(const Grid1D& grid, const std::function<double(double)>& f) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(grid.size()));
  for (std::size_t i = 0; i < grid.size(); ++i) v(static_cast<Eigen::Index>(i)) = f(grid[i]);
  return v;
}

OracleParams params(double alpha, double beta, Branch branch) { return OracleParams{alpha, beta, branch}; }

}  // namespace

// ---------------------------------------------------------------------------
// Config

ExperimentConfig ExperimentConfig::eraser_defaults() {
  ExperimentConfig c;
  c.alpha = 2.0;
  c.beta = 2.0;
  c.k = 2;
  return c;
}

ExperimentConfig ExperimentConfig::leggett_garg_defaults() {
  ExperimentConfig c;
  c.alpha = 2.0;
  c.beta = 2.0;
  c.k = 4;
  return c;
}

ExperimentConfig ExperimentConfig::sequence_defaults() {
  ExperimentConfig c;
  c.alpha = 3.0;
  c.beta = 3.0;
  c.k = 4;
  c.schedule = double_rotation_schedule();
  return c;
}

ExperimentConfig ExperimentConfig::dimension_witness_defaults() {
  ExperimentConfig c;
  c.alpha = 3.0;
  c.beta = 0.0;
  c.k = 4;
  return c;
}

ExperimentConfig ExperimentConfig::epr_defaults() {
  ExperimentConfig c;
  c.alpha = 2.0;
  c.beta = 2.0;
  c.k = 2;
  return c;
}

void ExperimentConfig::validate() const {
  if (!(alpha >= 0.0) || !(beta >= 0.0) || !std::isfinite(alpha) || !std::isfinite(beta))
    throw std::invalid_argument("alpha and beta must be finite and non-negative");
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("k must be even and >= 2");
  if (grid_points < 5 || grid_points % 2 == 0)
    throw std::invalid_argument("grid point count must be odd and at least 5");
  if (grid_half_width && !(*grid_half_width > 0.0)) throw std::invalid_argument("grid span must be positive");
  if (!(tail_tolerance > 0.0)) throw std::invalid_argument("tail tolerance must be positive");
  for (const auto& [ta, tb] : schedule) {
    if (ta.num() < 0 || tb.num() < 0) throw std::invalid_argument("schedule times must be non-negative");
  }
}

TruncationPolicy ExperimentConfig::policy_for(double amplitude) const {
  TruncationPolicy p = TruncationPolicy::for_amplitude(amplitude, tail_tolerance);
  if (n_max) p.n_max = *n_max;
  return p;
}

Grid1D ExperimentConfig::grid() const {
  if (grid_half_width) return Grid1D::symmetric(*grid_half_width, grid_points);
  return Grid1D::default_for(alpha, beta, grid_points);
}

// ---------------------------------------------------------------------------
// Eraser

double BranchTable::max_deviation() const {
  return std::max((numeric_plus - oracle_plus).cwiseAbs().maxCoeff(),
                  (numeric_minus - oracle_minus).cwiseAbs().maxCoeff());
}

double fringe_visibility(const Grid1D& grid, const Eigen::VectorXd& density, double p_max) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  const double gauss_norm = 1.0 / std::sqrt(std::numbers::pi);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double p = grid[i];
    if (std::abs(p) > p_max) continue;
    double r = density(static_cast<Eigen::Index>(i)) / (gauss_norm * std::exp(-p * p));
    lo = std::min(lo, r);
    hi = std::max(hi, r);
  }
  if (!(hi > lo)) return 0.0;
  return (hi - lo) / (hi + lo);
}

namespace {

// Conditionals of the first variable on X_B < 0 (plus) and X_B > 0 (minus).
std::pair<Eigen::VectorXd, Eigen::VectorXd> conditionals(const GriddedDistribution2D& joint) {
  return {conditional_density(joint, Sign::Negative).density(),
          conditional_density(joint, Sign::Positive).density()};
}

// Both modes rotated by pi/2 from the cat Bell state.
TwoModeState rotated_bell(const ExperimentConfig& config) {
  TwoModeState bell = bell_cat_state(config.alpha, config.beta, config.policy_for(config.alpha),
                                     config.policy_for(config.beta));
  return evolve_both(bell, config.k, kPiOver2, kPiOver2);
}

}  // namespace

EraserDataset run_eraser(const ExperimentConfig& config) {
  config.validate();
  const Grid1D grid = config.grid();
  const double a = config.alpha;
  const double b = config.beta;
  const auto op = params(a, b, Branch::Plus);
  const auto om = params(a, b, Branch::Minus);

  const TwoModeState which_way_state = rotated_bell(config);
  const TwoModeState eraser_state =
      inverse_evolve(which_way_state, NonlinearUnitary(config.k, kPiOver2, ModeLabel::B));

  EraserDataset out{.alpha = a, .beta = b,
                    .which_way = {grid, {}, {}, {}, {}},
                    .which_way_x = {grid, {}, {}, {}, {}},
                    .eraser = {grid, {}, {}, {}, {}}};

  {
    auto joint = joint_density(which_way_state, Axis::P, Axis::X, grid, grid);
    auto [plus, minus] = conditionals(joint);
    out.which_way.numeric_plus = plus;
    out.which_way.numeric_minus = minus;
    out.which_way.oracle_plus = sample(grid, [&](double p) { return which_way_p(p, op); });
    out.which_way.oracle_minus = sample(grid, [&](double p) { return which_way_p(p, om); });
    out.which_way_visibility =
        std::max(fringe_visibility(grid, plus), fringe_visibility(grid, minus));
    Eigen::VectorXd gauss = sample(grid, [](double p) { return std::exp(-p * p) / std::sqrt(std::numbers::pi); });
    out.which_way_gaussian_deviation =
        std::max((plus - gauss).cwiseAbs().maxCoeff(), (minus - gauss).cwiseAbs().maxCoeff());
  }
  {
    auto joint = joint_density(which_way_state, Axis::X, Axis::X, grid, grid);
    auto [plus, minus] = conditionals(joint);
    out.which_way_x.numeric_plus = plus;
    out.which_way_x.numeric_minus = minus;
    out.which_way_x.oracle_plus = sample(grid, [&](double x) { return conditional_x_full(x, op); });
    out.which_way_x.oracle_minus = sample(grid, [&](double x) { return conditional_x_full(x, om); });
  }
  {
    auto joint = joint_density(eraser_state, Axis::P, Axis::X, grid, grid);
    auto [plus, minus] = conditionals(joint);
    out.eraser.numeric_plus = plus;
    out.eraser.numeric_minus = minus;
    out.eraser.oracle_plus = sample(grid, [&](double p) { return fringe_full(p, op); });
    out.eraser.oracle_minus = sample(grid, [&](double p) { return fringe_full(p, om); });
    Eigen::VectorXd sp = sample(grid, [&](double p) { return fringe_simple(p, op); });
    Eigen::VectorXd sm = sample(grid, [&](double p) { return fringe_simple(p, om); });
    out.max_deviation_from_simple =
        std::max((plus - sp).cwiseAbs().maxCoeff(), (minus - sm).cwiseAbs().maxCoeff());
    out.prob_plus = condition_probability(joint, Sign::Negative);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Leggett-Garg

LgReport run_leggett_garg(double alpha, double beta, const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.alpha = alpha;
  c.beta = beta;
  c.validate();
  const Grid1D grid = c.grid();
  const TwoModeState bell = bell_cat_state(alpha, beta, c.policy_for(alpha), c.policy_for(beta));

  const std::vector<TimePair> times = {
      {kZero, kZero}, {kPiOver4, kZero}, {kPiOver2, kZero}, {kPiOver2, kPiOver4}};
  std::vector<SpinStatistics> spins = parallel_map<SpinStatistics>(times.size(), [&](std::size_t i) {
    TwoModeState s = evolve_both(bell, c.k, times[i].first, times[i].second);
    return spin_statistics(joint_density(s, Axis::X, Axis::X, grid, grid));
  });

  LgReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.c12 = spins[1].correlator;
  r.c13 = spins[2].correlator;
  r.c23 = spins[3].correlator;
  r.e12 = -r.c12;
  r.e13 = -r.c13;
  r.e23 = -r.c23;
  r.b_lg = r.e12 + r.e23 - r.e13;
  const SpinStatistics& s0 = spins[0];
  r.p_cond = s0.p_plus_minus / (s0.p_plus_minus + s0.p_minus_minus);
  return r;
}

// ---------------------------------------------------------------------------
// Bell versus mixture

std::vector<TimePair> single_rotation_schedule() {
  return {{kZero, kZero},
          {kPiOver8, kZero},
          {kPiOver4, kZero},
          {PiMultiple(3, 8), kZero},
          {kPiOver2, kZero}};
}

std::vector<TimePair> double_rotation_schedule() {
  auto s = single_rotation_schedule();
  s.push_back({kPiOver2, kPiOver4});
  return s;
}

MixtureComparison run_mixture_comparison(const ExperimentConfig& config) {
  config.validate();
  const std::vector<TimePair> schedule = config.schedule.empty() ? double_rotation_schedule() : config.schedule;
  const Grid1D grid = config.grid();
  const auto pa = config.policy_for(config.alpha);
  const auto pb = config.policy_for(config.beta);
  const TwoModeState bell = bell_cat_state(config.alpha, config.beta, pa, pb);
  const MixtureState mix = mix_state(config.alpha, config.beta, pa, pb);

  MixtureComparison out;
  out.alpha = config.alpha;
  out.beta = config.beta;
  out.snapshots = parallel_map<SequenceSnapshot>(schedule.size(), [&](std::size_t i) {
    const auto& [ta, tb] = schedule[i];
    auto jb = joint_density(evolve_both(bell, config.k, ta, tb), Axis::X, Axis::X, grid, grid);
    auto jm = joint_density(evolve_both(mix, config.k, ta, tb), Axis::X, Axis::X, grid, grid);
    SequenceSnapshot s{schedule[i], jb, jm, spin_statistics(jb), spin_statistics(jm), 0.0};
    s.sup_diff = (jb.density() - jm.density()).cwiseAbs().maxCoeff();
    return s;
  });
  return out;
}

// ---------------------------------------------------------------------------
// Dimension witness

DwAngles DwAngles::macroscopic() {
  return {PiMultiple(1, 8), PiMultiple(3, 8), PiMultiple(7, 4), PiMultiple(7, 4), PiMultiple(0, 1)};
}

DwAngles DwAngles::alternate() {
  return {PiMultiple(1, 4), PiMultiple(1, 2), PiMultiple(7, 8), PiMultiple(13, 8), PiMultiple(15, 8)};
}

DwAngles DwAngles::qubit() {
  return {PiMultiple(1, 8), PiMultiple(3, 8), PiMultiple(-1, 4), PiMultiple(1, 4), PiMultiple(0, 1)};
}

std::array<std::pair<PiMultiple, PiMultiple>, 5> DwAngles::pairs() const {
  return {{{theta, phi}, {theta, phi2}, {theta2, phi}, {theta2, phi2}, {theta3, phi}}};
}

namespace {

double witness(const std::array<double, 5>& e) { return dw_combination(e[0], e[1], e[2], e[3], e[4]); }

}  // namespace

DwReport run_dimension_witness(const DwAngles& angles, double alpha, const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.alpha = alpha;
  c.beta = 0.0;
  c.validate();
  const auto pairs = angles.pairs();
  DwReport r;
  r.angles = angles;
  // Validates every angle before any work.
  for (std::size_t i = 0; i < 5; ++i) r.analytic[i] = dw_expectation(pairs[i].first, pairs[i].second);

  const Grid1D grid = c.grid();
  const SingleModeState start = coherent_state(alpha, c.policy_for(alpha));
  auto values = parallel_map<double>(5, [&](std::size_t i) {
    const auto& [theta, phi] = pairs[i];
    SingleModeState s = evolve(start, NonlinearUnitary(c.k, (2 * theta).mod_two_pi()));
    s = evolve(s, NonlinearUnitary(c.k, (2 * phi).mod_two_pi()));
    return sign_expectation(marginal_density(s, Axis::X, grid));
  });
  for (std::size_t i = 0; i < 5; ++i) {
    r.correlators[i] = values[i];
    r.max_deviation = std::max(r.max_deviation, std::abs(values[i] - r.analytic[i]));
  }
  r.i_dw = witness(r.correlators);
  r.i_dw_analytic = witness(r.analytic);
  return r;
}

DwReport qubit_dimension_witness(const DwAngles& angles) {
  DwReport r;
  r.angles = angles;
  const auto pairs = angles.pairs();
  for (std::size_t i = 0; i < 5; ++i) {
    r.correlators[i] = mz_qubit_expectation(pairs[i].first.value(), pairs[i].second.value());
    r.analytic[i] = r.correlators[i];
  }
  r.i_dw = witness(r.correlators);
  r.i_dw_analytic = r.i_dw;
  return r;
}

ClassicalBound classical_dw_bound() {
  // Setting indices of the five terms: (prep, meas).
  static constexpr int kPrep[5] = {0, 0, 1, 1, 2};
  static constexpr int kMeas[5] = {0, 1, 0, 1, 0};
  auto combine = [](auto&& e) {
    std::array<double, 5> v{};
    for (int i = 0; i < 5; ++i) v[i] = e(kPrep[i], kMeas[i]);
    return witness(v);
  };

  ClassicalBound out;
  for (unsigned bits = 0; bits < 32; ++bits) {
    auto a = [&](int x) { return (bits >> x) & 1u ? -1.0 : 1.0; };
    auto b = [&](int y) { return (bits >> (3 + y)) & 1u ? -1.0 : 1.0; };
    out.product_model = std::max(out.product_model, combine([&](int x, int y) { return a(x) * b(y); }));
    ++out.strategies;
  }
  for (unsigned enc = 0; enc < 8; ++enc) {
    for (unsigned dec = 0; dec < 16; ++dec) {
      auto msg = [&](int x) { return static_cast<int>((enc >> x) & 1u); };
      auto out_bit = [&](int m, int y) { return (dec >> (2 * m + y)) & 1u ? -1.0 : 1.0; };
      out.bit_model =
          std::max(out.bit_model, combine([&](int x, int y) { return out_bit(msg(x), y); }));
      ++out.strategies;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// EPR

namespace {

double inferred_variance(const GriddedDistribution2D& joint) {
  double total = 0.0;
  for (Sign s : {Sign::Negative, Sign::Positive}) {
    double weight = condition_probability(joint, s);
    total += weight * moments(conditional_density(joint, s)).variance;
  }
  return total / (condition_probability(joint, Sign::Negative) + condition_probability(joint, Sign::Positive));
}

}  // namespace

EprReport run_epr(double alpha, double beta, const ExperimentConfig& config) {
  ExperimentConfig c = config;
  c.alpha = alpha;
  c.beta = beta;
  c.validate();
  const Grid1D grid = c.grid();
  const TwoModeState which_way_state = rotated_bell(c);
  const TwoModeState eraser_state =
      inverse_evolve(which_way_state, NonlinearUnitary(c.k, kPiOver2, ModeLabel::B));

  EprReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.var_x_inf = inferred_variance(joint_density(which_way_state, Axis::X, Axis::X, grid, grid));
  r.var_p_inf = inferred_variance(joint_density(eraser_state, Axis::P, Axis::X, grid, grid));
  r.epsilon_sq = r.var_x_inf * r.var_p_inf;

  const SingleModeState fringe =
      evolve(coherent_state(alpha, c.policy_for(alpha)), NonlinearUnitary(c.k, kPiOver2));
  r.epsilon_m_sq = 0.5 * moments(marginal_density(fringe, Axis::P, grid)).variance;

  const OracleParams op{alpha, beta, Branch::Plus};
  r.oracle = epr_variances(op);
  r.epsilon_sq_oracle = r.oracle.product();
  r.epsilon_m_sq_oracle = macro_epr(op);
  return r;
}

// ---------------------------------------------------------------------------
// Q function

Grid1D default_q_grid(double alpha, std::size_t points) {
  return Grid1D::symmetric(std::abs(alpha) + 6.0, points);
}

QSnapshot q_grid(const LabeledState& state, const Grid1D& x, const Grid1D& p) {
  QSnapshot s{state.label, x, p, Eigen::MatrixXd(x.size(), p.size())};
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (std::size_t j = 0; j < p.size(); ++j) {
      s.q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = q_function(x[i], p[j], state.state);
    }
  }
  GriddedDistribution2D dist(x, p, s.q);
  if (dist.boundary_density() > kBoundaryCutoff)
    throw GridTooNarrow("Q function does not vanish at the edge of the scan");
  Eigen::VectorXd wp = p.weights();
  s.integral = dist.integral();
  s.weight_right = x.half_line_weights(Sign::Positive).dot(s.q * wp);
  s.weight_left = x.half_line_weights(Sign::Negative).dot(s.q * wp);
  return s;
}

std::vector<QSnapshot> q_scan(const std::vector<LabeledState>& sequence, const Grid1D& x, const Grid1D& p) {
  return parallel_map<QSnapshot>(sequence.size(), [&](std::size_t i) { return q_grid(sequence[i], x, p); });
}

std::vector<LabeledState> dw_q_sequence(double alpha, int k, PiMultiple theta, PiMultiple phi, bool mixture) {
  const TruncationPolicy policy = TruncationPolicy::for_amplitude(alpha);
  const SingleModeState start = coherent_state(alpha, policy);
  const NonlinearUnitary prep(k, (2 * theta).mod_two_pi());
  const NonlinearUnitary meas(k, (2 * phi).mod_two_pi());

  auto pure = [](SingleModeState s) { return SingleModeMixture({{1.0, std::move(s)}}); };
  std::vector<LabeledState> seq;
  seq.push_back({"initial", pure(start)});
  if (!mixture) {
    SingleModeState prepared = evolve(start, prep);
    seq.push_back({"prepared", pure(prepared)});
    seq.push_back({"measured", pure(evolve(prepared, meas))});
  } else {
    const double c = std::cos(theta.value());
    const double w_plus = c * c;
    SingleModeMixture prepared({{w_plus, start}, {1.0 - w_plus, coherent_state(-alpha, policy)}});
    seq.push_back({"prepared", prepared});
    seq.push_back({"measured", evolve(prepared, meas)});
  }
  return seq;
}

}  // namespace catsim
