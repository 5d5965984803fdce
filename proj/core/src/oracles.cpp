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

#include "catsim/oracles.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "catsim/errors.hpp"

namespace catsim {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;
const double kInvSqrtPi = 1.0 / std::sqrt(std::numbers::pi);

double branch_sign(const OracleParams& p) { return p.branch == Branch::Plus ? 1.0 : -1.0; }

// 1 - e^{-2 alpha^2 - 2 beta^2}, without cancellation for small arguments.
double one_minus_overlap(double alpha, double beta) {
  return -std::expm1(-2.0 * alpha * alpha - 2.0 * beta * beta);
}

double n_sq(const OracleParams& p) { return 0.5 / one_minus_overlap(p.alpha, p.beta); }

}  // namespace

double fringe_simple(double p, const OracleParams& params) {
  return std::exp(-p * p) * kInvSqrtPi *
         (1.0 - branch_sign(params) * std::sin(2.0 * kSqrt2 * p * params.alpha));
}

double fringe_full(double p, const OracleParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  const double arg = 2.0 * kSqrt2 * p * a;
  return 2.0 * n_sq(params) * std::exp(-p * p) * kInvSqrtPi *
         (1.0 - std::exp(-2.0 * b * b) * std::cos(arg) -
          branch_sign(params) * std::sin(arg) * std::erf(kSqrt2 * b));
}

double which_way_p(double p, const OracleParams& params) {
  const double b = params.beta;
  return 2.0 * n_sq(params) * std::exp(-p * p) * kInvSqrtPi *
         (1.0 - std::exp(-2.0 * b * b) * std::cos(2.0 * kSqrt2 * p * params.alpha));
}

double joint_p_x(double p, double x_b, const OracleParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  const double s = std::sin(kSqrt2 * p * a);
  const double sh = std::sinh(kSqrt2 * x_b * b);
  const double pref = 2.0 * std::exp(-p * p - x_b * x_b - 2.0 * b * b) /
                      (std::numbers::pi * one_minus_overlap(a, b));
  return pref * (s * s + sh * sh + 0.5 * std::sin(2.0 * kSqrt2 * p * a) * std::sinh(2.0 * kSqrt2 * x_b * b));
}

double marginal_x_b(double x_b, const OracleParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  const double sh = std::sinh(kSqrt2 * x_b * b);
  return std::exp(-x_b * x_b - 2.0 * b * b) * kInvSqrtPi / one_minus_overlap(a, b) *
         (-std::expm1(-2.0 * a * a) + 2.0 * sh * sh);
}

double conditional_x_full(double x, const OracleParams& params) {
  const double a = params.alpha;
  const double b = params.beta;
  // e^{-x^2 - 2a^2} cosh(2 sqrt2 a x) overflows for large |x| if formed naively.
  const double g_plus = std::exp(-(x - kSqrt2 * a) * (x - kSqrt2 * a));
  const double g_minus = std::exp(-(x + kSqrt2 * a) * (x + kSqrt2 * a));
  const double cosh_term = 0.5 * (g_plus + g_minus);
  const double sinh_term = 0.5 * (g_plus - g_minus);
  const double base = std::exp(-x * x - 2.0 * a * a - 2.0 * b * b);
  return 2.0 * n_sq(params) * kInvSqrtPi *
         (cosh_term + branch_sign(params) * std::erf(kSqrt2 * b) * sinh_term - base);
}

VariancePair epr_variances(const OracleParams& params) {
  const double a2 = params.alpha * params.alpha;
  const double b2 = params.beta * params.beta;
  const double d = one_minus_overlap(params.alpha, params.beta);
  const double e = std::erf(kSqrt2 * params.beta);
  VariancePair v;
  v.var_x_inf = 0.5 + 2.0 * a2 / d - 2.0 * a2 * e * e / (d * d);
  v.var_p_inf = 0.5 + 2.0 * a2 / std::expm1(2.0 * a2 + 2.0 * b2) -
                2.0 * a2 * std::exp(-4.0 * a2) * e * e / (d * d);
  return v;
}

double ideal_p_variance(double alpha) {
  const double a2 = alpha * alpha;
  return 0.5 - 2.0 * a2 * std::exp(-4.0 * a2);
}

MeanVariance fringe_state_p_moments(double alpha) {
  MeanVariance m;
  m.mean = -kSqrt2 * alpha * std::exp(-2.0 * alpha * alpha);
  m.variance = ideal_p_variance(alpha);
  return m;
}

double ideal_p_variance_as_printed(double alpha) {
  const double a2 = alpha * alpha;
  return 0.5 - a2 * std::exp(-4.0 * a2);
}

double var_p_inf_as_printed(const OracleParams& params) {
  const double a2 = params.alpha * params.alpha;
  const double b2 = params.beta * params.beta;
  const double e = std::erf(kSqrt2 * params.beta);
  const double den = std::exp(2.0 * a2) - std::exp(-2.0 * b2);
  return 0.5 + 2.0 * a2 / std::expm1(2.0 * a2 + 2.0 * b2) - a2 * e * e / (den * den);
}

double macro_epr(const OracleParams& params) { return 0.5 * ideal_p_variance(params.alpha); }

double macro_epr_as_printed(const OracleParams& params) {
  return 0.5 * ideal_p_variance_as_printed(params.alpha);
}

namespace {

std::int64_t eighths_or_throw(double angle) {
  double m = angle / (std::numbers::pi / 8.0);
  double r = std::round(m);
  if (!std::isfinite(m) || std::abs(angle - r * std::numbers::pi / 8.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "angle " << angle << " is not a multiple of pi/8";
    throw InvalidAngle(msg.str());
  }
  return static_cast<std::int64_t>(r);
}

std::int64_t eighths_or_throw(const PiMultiple& angle) {
  auto m = angle.in_units_of_pi_over(8);
  if (!m) throw InvalidAngle("angle " + angle.str() + " is not a multiple of pi/8");
  return *m;
}

// cos(2 m pi/8) = cos(m pi/4) from a table, so lattice values are exact to
// the last bit.
double cos_quarter_pi(std::int64_t m) {
  static const double table[8] = {1.0, std::numbers::sqrt2 / 2, 0.0, -std::numbers::sqrt2 / 2,
                                  -1.0, -std::numbers::sqrt2 / 2, 0.0, std::numbers::sqrt2 / 2};
  return table[((m % 8) + 8) % 8];
}

}  // namespace

double dw_expectation(PiMultiple theta, PiMultiple phi) {
  return cos_quarter_pi(eighths_or_throw(theta) + eighths_or_throw(phi));
}

double dw_expectation(double theta, double phi) {
  return cos_quarter_pi(eighths_or_throw(theta) + eighths_or_throw(phi));
}

double mz_qubit_expectation(double theta, double phi) { return std::cos(2.0 * (theta - phi)); }

double dw_combination(double e_tf, double e_tf2, double e_t2f, double e_t2f2, double e_t3f) {
  return std::abs(e_tf + e_tf2 + e_t2f - e_t2f2 - e_t3f);
}

double q_function(double x, double p, const SingleModeState& state) {
  // <alpha0|psi> = e^{-|alpha0|^2/2} sum_n conj(alpha0)^n / sqrt(n!) c_n
  const Complex a0c(x, -p);
  const auto& c = state.amplitudes();
  Complex coeff(std::exp(-0.5 * (x * x + p * p)), 0.0);
  Complex sum = coeff * c(0);
  for (Eigen::Index n = 1; n < c.size(); ++n) {
    coeff *= a0c / std::sqrt(static_cast<double>(n));
    sum += coeff * c(n);
  }
  return std::norm(sum) / std::numbers::pi;
}

double q_function(double x, double p, const SingleModeMixture& state) {
  double q = 0.0;
  for (const auto& b : state.branches()) q += b.weight * q_function(x, p, b.state);
  return q;
}

double q_coherent(double x, double p, double alpha) {
  return std::exp(-((x - alpha) * (x - alpha) + p * p)) / std::numbers::pi;
}

double coherent_x_density(double x, double alpha) {
  const double d = x - kSqrt2 * alpha;
  return kInvSqrtPi * std::exp(-d * d);
}

}  // namespace catsim
