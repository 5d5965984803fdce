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

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "catsim/dynamics.hpp"
#include "catsim/fock.hpp"
#include "catsim/oracles.hpp"
#include "catsim/pi_multiple.hpp"
#include "catsim/quadrature.hpp"

namespace catsim {

using TimePair = std::pair<PiMultiple, PiMultiple>;

struct ExperimentConfig {
  double alpha = 2.0;
  double beta = 2.0;
  int k = 2;
  /// (t_a, t_b) snapshots, used by the evolution-sequence comparison.
  std::vector<TimePair> schedule;
  /// Odd so that 0 is a grid sample.
  std::size_t grid_points = 1201;
  /// Defaults to sqrt2 max(alpha, beta) + 6.
  std::optional<double> grid_half_width;
  double tail_tolerance = 1e-13;
  /// Overrides the cutoff rule for every mode.
  std::optional<std::size_t> n_max;

  static ExperimentConfig eraser_defaults();
  static ExperimentConfig leggett_garg_defaults();
  static ExperimentConfig sequence_defaults();
  static ExperimentConfig dimension_witness_defaults();
  static ExperimentConfig epr_defaults();

  /// Throws std::invalid_argument on unusable settings.
  void validate() const;
  TruncationPolicy policy_for(double amplitude) const;
  Grid1D grid() const;
};

// ---------------------------------------------------------------------------
// Eraser

/// One conditional-density table: numeric densities for the two branches
/// next to the closed form for each.
struct BranchTable {
  Grid1D grid;
  Eigen::VectorXd numeric_plus;
  Eigen::VectorXd numeric_minus;
  Eigen::VectorXd oracle_plus;
  Eigen::VectorXd oracle_minus;

  double max_deviation() const;
};

struct EraserDataset {
  double alpha = 0.0;
  double beta = 0.0;
  /// P(P_A | sign X_B) with both modes rotated: no eraser.
  BranchTable which_way;
  /// P(X_A | sign X_B) on the same state.
  BranchTable which_way_x;
  /// P(P_A | sign X_B) after undoing the rotation at B.
  BranchTable eraser;
  /// Eraser densities against the beta -> infinity fringe form.
  double max_deviation_from_simple = 0.0;
  /// (max - min)/(max + min) of P(P_A)_+- / (pi^{-1/2} e^{-p^2}) over |p| <= 3.
  double which_way_visibility = 0.0;
  /// max |P(P_A)_+- - pi^{-1/2} e^{-p^2}|.
  double which_way_gaussian_deviation = 0.0;
  /// P(X_B < 0) on the eraser state.
  double prob_plus = 0.0;
};

EraserDataset run_eraser(const ExperimentConfig& config);

/// Fringe visibility of a P density relative to the vacuum Gaussian, over |p| <= p_max.
double fringe_visibility(const Grid1D& grid, const Eigen::VectorXd& density, double p_max = 3.0);

// ---------------------------------------------------------------------------
// Leggett-Garg

struct LgReport {
  double alpha = 0.0;
  double beta = 0.0;
  /// Raw <S^B S^A> correlators at (t_a, t_b) = (pi/4, 0), (pi/2, 0), (pi/2, pi/4).
  double c12 = 0.0;
  double c13 = 0.0;
  double c23 = 0.0;
  /// Moments <S_i S_j> inferred through the B-side anti-correlation, e = -c.
  double e12 = 0.0;
  double e13 = 0.0;
  double e23 = 0.0;
  /// e12 + e23 - e13; above 1 is a violation.
  double b_lg = 0.0;
  /// P(S^A = +1 | S^B = -1) at t = 0.
  double p_cond = 0.0;
};

LgReport run_leggett_garg(double alpha, double beta, const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Bell state versus mixture

struct SequenceSnapshot {
  TimePair times;
  GriddedDistribution2D bell;
  GriddedDistribution2D mix;
  SpinStatistics bell_spin;
  SpinStatistics mix_spin;
  double sup_diff = 0.0;
  double delta_e() const { return bell_spin.correlator - mix_spin.correlator; }
};

struct MixtureComparison {
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<SequenceSnapshot> snapshots;
};

/// (0,0), (pi/8,0), (pi/4,0), (3pi/8,0), (pi/2,0).
std::vector<TimePair> single_rotation_schedule();
/// single_rotation_schedule() followed by (pi/2, pi/4).
std::vector<TimePair> double_rotation_schedule();

/// Evolves the cat Bell state and the equal mixture through config.schedule
/// (double_rotation_schedule() if empty), both starting at t = 0.
MixtureComparison run_mixture_comparison(const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Dimension witness

struct DwAngles {
  PiMultiple theta;
  PiMultiple theta2;
  PiMultiple theta3;
  PiMultiple phi;
  PiMultiple phi2;

  /// theta = pi/8, 3pi/8, 7pi/4; phi = 7pi/4, 0.
  static DwAngles macroscopic();
  /// theta = pi/4, pi/2, 7pi/8; phi = 13pi/8, 15pi/8.
  static DwAngles alternate();
  /// theta = pi/8, 3pi/8, -pi/4; phi = pi/4, 0, for the qubit model.
  static DwAngles qubit();

  /// (theta, phi) pairs in the order the witness combines them.
  std::array<std::pair<PiMultiple, PiMultiple>, 5> pairs() const;
};

struct DwReport {
  DwAngles angles;
  std::array<double, 5> correlators{};
  std::array<double, 5> analytic{};
  double i_dw = 0.0;
  double i_dw_analytic = 0.0;
  double max_deviation = 0.0;
};

/// Prepare-and-measure on one mode: |alpha> -> U(2 theta) -> U(2 phi) -> sign of X.
DwReport run_dimension_witness(const DwAngles& angles, double alpha, const ExperimentConfig& config);
/// The same combination for the qubit model cos(2(theta - phi)).
DwReport qubit_dimension_witness(const DwAngles& angles);

struct ClassicalBound {
  /// max over E(x, y) = a(x) b(y), a, b in {+-1}: 2^5 assignments.
  double product_model = 0.0;
  /// max over one-bit messages with deterministic encoder and decoder: 2^3 * 2^4 strategies.
  double bit_model = 0.0;
  std::size_t strategies = 0;
};

ClassicalBound classical_dw_bound();

// ---------------------------------------------------------------------------
// EPR

struct EprReport {
  double alpha = 0.0;
  double beta = 0.0;
  double var_x_inf = 0.0;
  double var_p_inf = 0.0;
  double epsilon_sq = 0.0;
  /// (1/2) Var P of the single-mode fringe state, computed numerically.
  double epsilon_m_sq = 0.0;
  VariancePair oracle;
  double epsilon_sq_oracle = 0.0;
  double epsilon_m_sq_oracle = 0.0;
};

EprReport run_epr(double alpha, double beta, const ExperimentConfig& config);

// ---------------------------------------------------------------------------
// Q function

struct LabeledState {
  std::string label;
  SingleModeMixture state;
};

struct QSnapshot {
  std::string label;
  Grid1D x;
  Grid1D p;
  /// q(i, j) at (x[i], p[j]).
  Eigen::MatrixXd q;
  double integral = 0.0;
  /// Integrated mass on x > 0 and x < 0.
  double weight_right = 0.0;
  double weight_left = 0.0;
};

QSnapshot q_grid(const LabeledState& state, const Grid1D& x, const Grid1D& p);
std::vector<QSnapshot> q_scan(const std::vector<LabeledState>& sequence, const Grid1D& x, const Grid1D& p);

/// |alpha> -> U(2 theta) -> U(2 phi), with the prepared superposition
/// replaced by the matching mixture of |alpha> and |-alpha> when `mixture` is set.
std::vector<LabeledState> dw_q_sequence(double alpha, int k, PiMultiple theta, PiMultiple phi,
                                        bool mixture);

/// +-(alpha + 6) with the given point count.
Grid1D default_q_grid(double alpha, std::size_t points = 241);

}  // namespace catsim
