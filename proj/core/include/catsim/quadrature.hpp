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

#include <cstddef>
#include <optional>
#include <utility>

#include <Eigen/Dense>

#include "catsim/fock.hpp"

namespace catsim {

/// X = (a + a^dag)/sqrt2, P = (a - a^dag)/(i sqrt2), the same on both modes.
enum class Axis { X, P };

enum class Sign { Positive, Negative };

/// Uniform grid lo..hi with `points` samples.
class Grid1D {
 public:
  Grid1D(double lo, double hi, std::size_t points);

  /// -half_width..half_width; an odd point count puts a sample at 0.
  static Grid1D symmetric(double half_width, std::size_t points);
  /// +-(sqrt2 max(alpha, beta) + 6) with 1201 points.
  static Grid1D default_for(double alpha, double beta = 0.0, std::size_t points = 1201);

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  std::size_t size() const { return points_; }
  double spacing() const { return (hi_ - lo_) / static_cast<double>(points_ - 1); }
  double operator[](std::size_t i) const;
  Eigen::VectorXd values() const;

  /// Index of the sample at 0, if the grid has one.
  std::optional<std::size_t> zero_index() const;

  /// Trapezoid weights over the full grid.
  Eigen::VectorXd weights() const;
  /// Weights for the integral over u > 0 (Positive) or u < 0 (Negative).
  /// Requires a sample at 0. Built from the sinc interpolant of the samples,
  /// so every sample contributes a little to both halves; the two halves add
  /// up to weights().
  Eigen::VectorXd half_line_weights(Sign sign) const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double lo_;
  double hi_;
  std::size_t points_;
};

class GriddedDistribution1D {
 public:
  GriddedDistribution1D(Grid1D grid, Eigen::VectorXd density);

  const Grid1D& grid() const { return grid_; }
  const Eigen::VectorXd& density() const { return density_; }
  double integral() const;
  /// Mass on one side of 0.
  double mass(Sign sign) const;
  /// Largest density value on the two end samples.
  double boundary_density() const;

 private:
  Grid1D grid_;
  Eigen::VectorXd density_;
};

/// density(i, j) at (grid_a[i], grid_b[j]).
class GriddedDistribution2D {
 public:
  GriddedDistribution2D(Grid1D grid_a, Grid1D grid_b, Eigen::MatrixXd density);

  const Grid1D& grid_a() const { return grid_a_; }
  const Grid1D& grid_b() const { return grid_b_; }
  const Eigen::MatrixXd& density() const { return density_; }
  double integral() const;
  double boundary_density() const;
  GriddedDistribution1D marginal(ModeLabel mode) const;

 private:
  Grid1D grid_a_;
  Grid1D grid_b_;
  Eigen::MatrixXd density_;
};

struct SpinStatistics {
  double p_plus_plus = 0.0;
  double p_plus_minus = 0.0;
  double p_minus_plus = 0.0;
  double p_minus_minus = 0.0;
  double correlator = 0.0;

  double total() const { return p_plus_plus + p_plus_minus + p_minus_plus + p_minus_minus; }
};

struct Moments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Boundary density above which a grid is rejected.
inline constexpr double kBoundaryCutoff = 1e-10;
/// Conditioning mass below which a conditional is rejected.
inline constexpr double kEmptyConditionMass = 1e-12;

/// Oscillator eigenfunctions psi_0(x)..psi_{n_max}(x).
Eigen::VectorXd hermite_basis(double x, std::size_t n_max);

/// Real matrix R(i, n) = psi_n(grid[i]). The P-axis wavefunction is
/// <p|n> = (-i)^n psi_n(p), i.e. R times axis_phases().
Eigen::MatrixXd basis_matrix(const Grid1D& grid, std::size_t n_max);
Eigen::VectorXcd axis_phases(Axis axis, std::size_t n_max);

GriddedDistribution1D marginal_density(const SingleModeState& state, Axis axis, const Grid1D& grid);
GriddedDistribution1D marginal_density(const SingleModeMixture& state, Axis axis, const Grid1D& grid);
GriddedDistribution1D marginal_density(const TwoModeState& state, ModeLabel mode, Axis axis,
                                       const Grid1D& grid);
GriddedDistribution1D marginal_density(const MixtureState& state, ModeLabel mode, Axis axis,
                                       const Grid1D& grid);

GriddedDistribution2D joint_density(const TwoModeState& state, Axis axis_a, Axis axis_b,
                                    const Grid1D& grid_a, const Grid1D& grid_b);
GriddedDistribution2D joint_density(const MixtureState& state, Axis axis_a, Axis axis_b,
                                    const Grid1D& grid_a, const Grid1D& grid_b);

/// Density of the first variable given the sign of the second.
GriddedDistribution1D conditional_density(const GriddedDistribution2D& joint, Sign condition);
/// Probability that the second variable has the given sign.
double condition_probability(const GriddedDistribution2D& joint, Sign condition);

SpinStatistics spin_statistics(const GriddedDistribution2D& joint);
/// Sign expectation of a single density, P(u > 0) - P(u < 0).
double sign_expectation(const GriddedDistribution1D& dist);

Moments moments(const GriddedDistribution1D& dist);

}  // namespace catsim
