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

#include "catsim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>

namespace catsim {

namespace {

void check_boundary(double boundary, const char* what) {
  if (boundary > kBoundaryCutoff) {
    std::ostringstream msg;
    msg << what << ": density " << boundary << " at the grid edge exceeds " << kBoundaryCutoff;
    throw GridTooNarrow(msg.str());
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Grid1D

Grid1D::Grid1D(double lo, double hi, std::size_t points) : lo_(lo), hi_(hi), points_(points) {
  if (!(hi > lo) || !std::isfinite(lo) || !std::isfinite(hi))
    throw std::invalid_argument("grid needs finite lo < hi");
  if (points < 2) throw std::invalid_argument("grid needs at least two points");
}

Grid1D Grid1D::symmetric(double half_width, std::size_t points) {
  return Grid1D(-half_width, half_width, points);
}

Grid1D Grid1D::default_for(double alpha, double beta, std::size_t points) {
  return symmetric(std::sqrt(2.0) * std::max(std::abs(alpha), std::abs(beta)) + 6.0, points);
}

double Grid1D::operator[](std::size_t i) const {
  // Evaluate symmetrically about the midpoint so a symmetric grid is exactly
  // antisymmetric in its samples and hits 0 exactly.
  double mid = 0.5 * (lo_ + hi_);
  double half = 0.5 * (hi_ - lo_);
  double n = static_cast<double>(points_ - 1);
  double s = (2.0 * static_cast<double>(i) - n) / n;
  return mid + half * s;
}

Eigen::VectorXd Grid1D::values() const {
  Eigen::VectorXd v(static_cast<Eigen::Index>(points_));
  for (std::size_t i = 0; i < points_; ++i) v(static_cast<Eigen::Index>(i)) = (*this)[i];
  return v;
}

std::optional<std::size_t> Grid1D::zero_index() const {
  if (!(lo_ < 0.0 && hi_ > 0.0)) return std::nullopt;
  double pos = -lo_ / spacing();
  double r = std::round(pos);
  if (std::abs(pos - r) > 1e-9) return std::nullopt;
  std::size_t i = static_cast<std::size_t>(r);
  if ((*this)[i] != 0.0 && std::abs((*this)[i]) > 1e-12 * spacing()) return std::nullopt;
  return i;
}

Eigen::VectorXd Grid1D::weights() const {
  Eigen::VectorXd w = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(points_), spacing());
  w(0) *= 0.5;
  w(w.size() - 1) *= 0.5;
  return w;
}

namespace {

// Si(pi k) / pi for k = 0..count-1, by Gauss-Legendre on each [pi j, pi (j+1)].
std::vector<double> sine_integral_at_pi_multiples(std::size_t count) {
  std::vector<double> out(count, 0.0);
  double acc = 0.0;
  const double pi = std::numbers::pi;
  for (std::size_t k = 1; k < count; ++k) {
    const double lo = pi * static_cast<double>(k - 1);
    acc += boost::math::quadrature::gauss<double, 20>::integrate(
        [](double t) { return t == 0.0 ? 1.0 : std::sin(t) / t; }, lo, lo + pi);
    out[k] = acc / pi;
  }
  return out;
}

}  // namespace

Eigen::VectorXd Grid1D::half_line_weights(Sign sign) const {
  auto z = zero_index();
  if (!z) throw std::invalid_argument("sign binning needs a grid sample at 0");
  const Eigen::Index i0 = static_cast<Eigen::Index>(*z);
  const Eigen::Index n = static_cast<Eigen::Index>(points_);
  if (i0 < 2 || i0 > n - 3) throw std::invalid_argument("grid has too few samples on one side of 0");
  // Integrating the sinc interpolant of the samples against a unit step gives
  // each sample the fraction 1/2 + Si(pi k)/pi of its weight, k its signed
  // offset from 0. For smooth densities that are resolved by the grid this
  // is exponentially accurate, unlike any trapezoid rule cut at 0.
  const auto si = sine_integral_at_pi_multiples(static_cast<std::size_t>(std::max(i0, n - 1 - i0)) + 1);
  Eigen::VectorXd w = weights();
  const double s = sign == Sign::Positive ? 1.0 : -1.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::Index k = i - i0;
    const double frac = si[static_cast<std::size_t>(k < 0 ? -k : k)] * (k < 0 ? -1.0 : 1.0);
    w(i) *= 0.5 + s * frac;
  }
  return w;
}

// ---------------------------------------------------------------------------
// Distributions

GriddedDistribution1D::GriddedDistribution1D(Grid1D grid, Eigen::VectorXd density)
    : grid_(grid), density_(std::move(density)) {
  if (static_cast<std::size_t>(density_.size()) != grid_.size())
    throw std::invalid_argument("density length does not match grid");
}

double GriddedDistribution1D::integral() const { return grid_.weights().dot(density_); }

double GriddedDistribution1D::mass(Sign sign) const {
  return grid_.half_line_weights(sign).dot(density_);
}

double GriddedDistribution1D::boundary_density() const {
  return std::max(std::abs(density_(0)), std::abs(density_(density_.size() - 1)));
}

GriddedDistribution2D::GriddedDistribution2D(Grid1D grid_a, Grid1D grid_b, Eigen::MatrixXd density)
    : grid_a_(grid_a), grid_b_(grid_b), density_(std::move(density)) {
  if (static_cast<std::size_t>(density_.rows()) != grid_a_.size() ||
      static_cast<std::size_t>(density_.cols()) != grid_b_.size())
    throw std::invalid_argument("density shape does not match grids");
}

double GriddedDistribution2D::integral() const {
  return grid_a_.weights().dot(density_ * grid_b_.weights());
}

double GriddedDistribution2D::boundary_density() const {
  const auto& d = density_;
  double m = d.row(0).cwiseAbs().maxCoeff();
  m = std::max(m, d.row(d.rows() - 1).cwiseAbs().maxCoeff());
  m = std::max(m, d.col(0).cwiseAbs().maxCoeff());
  m = std::max(m, d.col(d.cols() - 1).cwiseAbs().maxCoeff());
  return m;
}

GriddedDistribution1D GriddedDistribution2D::marginal(ModeLabel mode) const {
  if (mode == ModeLabel::A) return GriddedDistribution1D(grid_a_, density_ * grid_b_.weights());
  return GriddedDistribution1D(grid_b_, density_.transpose() * grid_a_.weights());
}

// ---------------------------------------------------------------------------
// Basis

Eigen::VectorXd hermite_basis(double x, std::size_t n_max) {
  Eigen::VectorXd psi(static_cast<Eigen::Index>(n_max + 1));
  psi(0) = std::exp(-0.5 * x * x) / std::sqrt(std::sqrt(std::numbers::pi));
  if (n_max >= 1) psi(1) = std::sqrt(2.0) * x * psi(0);
  for (std::size_t n = 1; n < n_max; ++n) {
    double dn = static_cast<double>(n);
    psi(static_cast<Eigen::Index>(n + 1)) =
        std::sqrt(2.0 / (dn + 1.0)) * x * psi(static_cast<Eigen::Index>(n)) -
        std::sqrt(dn / (dn + 1.0)) * psi(static_cast<Eigen::Index>(n - 1));
  }
  return psi;
}

Eigen::MatrixXd basis_matrix(const Grid1D& grid, std::size_t n_max) {
  Eigen::MatrixXd r(static_cast<Eigen::Index>(grid.size()), static_cast<Eigen::Index>(n_max + 1));
  for (std::size_t i = 0; i < grid.size(); ++i) {
    r.row(static_cast<Eigen::Index>(i)) = hermite_basis(grid[i], n_max).transpose();
  }
  return r;
}

Eigen::VectorXcd axis_phases(Axis axis, std::size_t n_max) {
  Eigen::VectorXcd d(static_cast<Eigen::Index>(n_max + 1));
  static const Complex minus_i_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
  for (std::size_t n = 0; n <= n_max; ++n) {
    d(static_cast<Eigen::Index>(n)) = axis == Axis::X ? Complex(1, 0) : minus_i_pow[n % 4];
  }
  return d;
}

// ---------------------------------------------------------------------------
// Densities

GriddedDistribution1D marginal_density(const SingleModeState& state, Axis axis, const Grid1D& grid) {
  Eigen::MatrixXd r = basis_matrix(grid, state.n_max());
  Eigen::VectorXcd c = axis_phases(axis, state.n_max()).cwiseProduct(state.amplitudes());
  Eigen::VectorXd re = r * c.real();
  Eigen::VectorXd im = r * c.imag();
  GriddedDistribution1D out(grid, re.cwiseAbs2() + im.cwiseAbs2());
  check_boundary(out.boundary_density(), "marginal density");
  return out;
}

GriddedDistribution1D marginal_density(const SingleModeMixture& state, Axis axis, const Grid1D& grid) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (const auto& b : state.branches()) total += b.weight * marginal_density(b.state, axis, grid).density();
  return GriddedDistribution1D(grid, std::move(total));
}

GriddedDistribution1D marginal_density(const TwoModeState& state, ModeLabel mode, Axis axis,
                                       const Grid1D& grid) {
  const std::size_t n_max = state.truncation(mode).n_max;
  Eigen::MatrixXcd c = mode == ModeLabel::A ? Eigen::MatrixXcd(state.amplitudes())
                                            : Eigen::MatrixXcd(state.amplitudes().transpose());
  c = axis_phases(axis, n_max).asDiagonal() * c;
  Eigen::MatrixXd r = basis_matrix(grid, n_max);
  Eigen::MatrixXd re = r * c.real();
  Eigen::MatrixXd im = r * c.imag();
  Eigen::VectorXd density = re.cwiseAbs2().rowwise().sum() + im.cwiseAbs2().rowwise().sum();
  GriddedDistribution1D out(grid, std::move(density));
  check_boundary(out.boundary_density(), "marginal density");
  return out;
}

GriddedDistribution1D marginal_density(const MixtureState& state, ModeLabel mode, Axis axis,
                                       const Grid1D& grid) {
  Eigen::VectorXd total = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(grid.size()));
  for (const auto& b : state.branches())
    total += b.weight * marginal_density(b.state, mode, axis, grid).density();
  return GriddedDistribution1D(grid, std::move(total));
}

GriddedDistribution2D joint_density(const TwoModeState& state, Axis axis_a, Axis axis_b,
                                    const Grid1D& grid_a, const Grid1D& grid_b) {
  const std::size_t na = state.truncation(ModeLabel::A).n_max;
  const std::size_t nb = state.truncation(ModeLabel::B).n_max;
  // J = R_a (D_a C D_b) R_b^T; the real basis matrices keep the two large
  // products real-by-real.
  Eigen::MatrixXcd c = axis_phases(axis_a, na).asDiagonal() * state.amplitudes() *
                       axis_phases(axis_b, nb).asDiagonal();
  Eigen::MatrixXd ra = basis_matrix(grid_a, na);
  Eigen::MatrixXd rb = basis_matrix(grid_b, nb);
  Eigen::MatrixXd t_re = c.real() * rb.transpose();
  Eigen::MatrixXd t_im = c.imag() * rb.transpose();
  Eigen::MatrixXd j_re = ra * t_re;
  Eigen::MatrixXd j_im = ra * t_im;
  GriddedDistribution2D out(grid_a, grid_b, j_re.cwiseAbs2() + j_im.cwiseAbs2());
  check_boundary(out.boundary_density(), "joint density");
  return out;
}

GriddedDistribution2D joint_density(const MixtureState& state, Axis axis_a, Axis axis_b,
                                    const Grid1D& grid_a, const Grid1D& grid_b) {
  Eigen::MatrixXd total = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(grid_a.size()),
                                                static_cast<Eigen::Index>(grid_b.size()));
  for (const auto& b : state.branches())
    total += b.weight * joint_density(b.state, axis_a, axis_b, grid_a, grid_b).density();
  return GriddedDistribution2D(grid_a, grid_b, std::move(total));
}

double condition_probability(const GriddedDistribution2D& joint, Sign condition) {
  return joint.grid_a().weights().dot(joint.density() * joint.grid_b().half_line_weights(condition));
}

GriddedDistribution1D conditional_density(const GriddedDistribution2D& joint, Sign condition) {
  Eigen::VectorXd numerator = joint.density() * joint.grid_b().half_line_weights(condition);
  double mass = joint.grid_a().weights().dot(numerator);
  if (!(mass >= kEmptyConditionMass)) {
    std::ostringstream msg;
    msg << "conditioning half-line carries probability " << mass;
    throw EmptyCondition(msg.str());
  }
  return GriddedDistribution1D(joint.grid_a(), numerator / mass);
}

SpinStatistics spin_statistics(const GriddedDistribution2D& joint) {
  const Eigen::VectorXd ap = joint.grid_a().half_line_weights(Sign::Positive);
  const Eigen::VectorXd am = joint.grid_a().half_line_weights(Sign::Negative);
  const Eigen::VectorXd bp = joint.grid_b().half_line_weights(Sign::Positive);
  const Eigen::VectorXd bm = joint.grid_b().half_line_weights(Sign::Negative);
  const Eigen::MatrixXd& d = joint.density();
  Eigen::VectorXd dbp = d * bp;
  Eigen::VectorXd dbm = d * bm;
  SpinStatistics s;
  s.p_plus_plus = ap.dot(dbp);
  s.p_plus_minus = ap.dot(dbm);
  s.p_minus_plus = am.dot(dbp);
  s.p_minus_minus = am.dot(dbm);
  s.correlator = s.p_plus_plus + s.p_minus_minus - s.p_plus_minus - s.p_minus_plus;
  return s;
}

double sign_expectation(const GriddedDistribution1D& dist) {
  return dist.mass(Sign::Positive) - dist.mass(Sign::Negative);
}

Moments moments(const GriddedDistribution1D& dist) {
  const Eigen::VectorXd w = dist.grid().weights().cwiseProduct(dist.density());
  const Eigen::VectorXd x = dist.grid().values();
  double total = w.sum();
  Moments m;
  m.mean = w.dot(x) / total;
  m.variance = w.dot((x.array() - m.mean).square().matrix()) / total;
  return m;
}

}  // namespace catsim
