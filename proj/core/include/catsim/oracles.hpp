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

#include "catsim/fock.hpp"
#include "catsim/pi_multiple.hpp"

namespace catsim {

/// Plus is the branch where the remote X_B was found negative, so that the
/// local hill sits at +sqrt2 alpha.
enum class Branch { Plus, Minus };

struct OracleParams {
  double alpha = 0.0;
  double beta = 0.0;
  Branch branch = Branch::Plus;
};

struct VariancePair {
  double var_x_inf = 0.0;
  double var_p_inf = 0.0;
  double product() const { return var_x_inf * var_p_inf; }
};

struct MeanVariance {
  double mean = 0.0;
  double variance = 0.0;
};

/// e^{-p^2}/sqrt(pi) (1 -+ sin(2 sqrt2 p alpha)).
double fringe_simple(double p, const OracleParams& params);

/// 2N^2 e^{-p^2}/sqrt(pi) (1 - e^{-2 beta^2} cos(2 sqrt2 p alpha) -+ sin(2 sqrt2 p alpha) erf(sqrt2 beta)).
double fringe_full(double p, const OracleParams& params);

/// P_A density on either branch when which-way information is kept:
/// 2N^2 e^{-p^2}/sqrt(pi) (1 - e^{-2 beta^2} cos(2 sqrt2 p alpha)).
double which_way_p(double p, const OracleParams& params);

/// Joint density of (P_A, X_B) after the eraser rotation.
double joint_p_x(double p, double x_b, const OracleParams& params);

/// X_B marginal of the same state.
double marginal_x_b(double x_b, const OracleParams& params);

/// X_A density of the cat Bell state given the sign of X_B.
double conditional_x_full(double x, const OracleParams& params);

/// Inference variances for sign-of-X_B conditioning at finite beta.
VariancePair epr_variances(const OracleParams& params);

/// beta -> infinity limit of var_p_inf: 1/2 - 2 alpha^2 e^{-4 alpha^2}.
double ideal_p_variance(double alpha);

/// Mean and variance of P for exp(-i pi/2 n^2)|alpha>.
MeanVariance fringe_state_p_moments(double alpha);

/// The P-variance expressions with coefficient alpha^2 in the subtracted
/// term. They differ from the direct moment integrals above by a factor 2
/// in that term, and are kept for comparison only.
double ideal_p_variance_as_printed(double alpha);
double var_p_inf_as_printed(const OracleParams& params);

/// epsilon_M^2 = (1/2) (Delta P)^2 of the single-mode fringe state.
double macro_epr(const OracleParams& params);
double macro_epr_as_printed(const OracleParams& params);

/// cos(2(theta + phi)), valid on the pi/8 lattice. Throws InvalidAngle elsewhere.
double dw_expectation(PiMultiple theta, PiMultiple phi);
double dw_expectation(double theta, double phi);

/// cos(2(theta - phi)).
double mz_qubit_expectation(double theta, double phi);

/// |E(t,f) + E(t,f') + E(t',f) - E(t',f') - E(t'',f)|.
double dw_combination(double e_tf, double e_tf2, double e_t2f, double e_t2f2, double e_t3f);

/// (1/pi) |<alpha0|psi>|^2 with alpha0 = x + i p.
double q_function(double x, double p, const SingleModeState& state);
double q_function(double x, double p, const SingleModeMixture& state);
double q_coherent(double x, double p, double alpha);

/// pi^{-1/2} exp(-(x - sqrt2 alpha)^2).
double coherent_x_density(double x, double alpha);

}  // namespace catsim
