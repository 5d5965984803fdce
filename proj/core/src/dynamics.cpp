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

#include "catsim/dynamics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace catsim {

namespace {

void check_k(int k) {
  if (k < 2 || k % 2 != 0) throw std::invalid_argument("nonlinearity order k must be even and >= 2");
}

std::uint64_t pow_mod(std::uint64_t base, int exp, std::uint64_t mod) {
  // mod < 2^32, so products of residues fit in 64 bits.
  std::uint64_t result = 1 % mod;
  std::uint64_t b = base % mod;
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return result;
}

// t = (num/den) pi. The angle t n^k mod 2 pi equals pi s/den with
// s = num n^k mod 2 den, computed in integers.
Eigen::VectorXcd exact_phases(const PiMultiple& t, int k, std::size_t n_max, int sign) {
  const std::uint64_t mod = 2 * static_cast<std::uint64_t>(t.den());
  const std::uint64_t num = static_cast<std::uint64_t>(t.mod_two_pi().num());
  Eigen::VectorXcd out(static_cast<Eigen::Index>(n_max + 1));
  for (std::size_t n = 0; n <= n_max; ++n) {
    std::uint64_t r = pow_mod(n, k, mod);
    std::uint64_t s = num * r % mod;
    double angle = std::numbers::pi * static_cast<double>(s) / static_cast<double>(t.den());
    out(static_cast<Eigen::Index>(n)) = std::polar(1.0, -sign * angle);
  }
  return out;
}

// Generic t: reduce t n^k mod 2 pi in long double, splitting t into a 32-bit
// head and a tail so that head * n^k is exact while n^k < 2^32.
Eigen::VectorXcd generic_phases(double t, int k, std::size_t n_max, int sign) {
  using ld = long double;
  const ld two_pi = 2.0L * std::numbers::pi_v<long double>;
  const ld two_pi_hi = std::ldexp(std::floor(std::ldexp(two_pi, 29)), -29);
  const ld two_pi_lo = two_pi - two_pi_hi;
  int e = 0;
  std::frexp(t, &e);
  const ld t_hi = std::ldexp(std::floor(std::ldexp(static_cast<ld>(t), 32 - e)), e - 32);
  const ld t_lo = static_cast<ld>(t) - t_hi;

  Eigen::VectorXcd out(static_cast<Eigen::Index>(n_max + 1));
  for (std::size_t n = 0; n <= n_max; ++n) {
    ld nk = std::pow(static_cast<ld>(n), k);
    ld x = t_hi * nk;
    ld q = std::nearbyint(x / two_pi);
    ld r = (x - q * two_pi_hi) - q * two_pi_lo;
    r += t_lo * nk;
    r = std::fmod(r, two_pi);
    out(static_cast<Eigen::Index>(n)) = std::polar(1.0, -sign * static_cast<double>(r));
  }
  return out;
}

}  // namespace

NonlinearUnitary::NonlinearUnitary(int k, PiMultiple t, ModeLabel mode)
    : k_(k), t_(t.value()), exact_(t), mode_(mode) {
  check_k(k);
  if (t.num() < 0) throw std::invalid_argument("evolution time must be non-negative");
}

NonlinearUnitary::NonlinearUnitary(int k, double t, ModeLabel mode) : k_(k), t_(t), mode_(mode) {
  check_k(k);
  if (!(t >= 0.0) || !std::isfinite(t)) throw std::invalid_argument("evolution time must be finite and non-negative");
}

NonlinearUnitary NonlinearUnitary::on(ModeLabel mode) const {
  NonlinearUnitary u = *this;
  u.mode_ = mode;
  return u;
}

Eigen::VectorXcd NonlinearUnitary::phases(std::size_t n_max, int sign) const {
  if (exact_ && exact_->den() < (std::int64_t{1} << 30)) return exact_phases(*exact_, k_, n_max, sign);
  return generic_phases(t_, k_, n_max, sign);
}

namespace {

SingleModeState apply(const SingleModeState& s, const NonlinearUnitary& u, int sign) {
  Eigen::VectorXcd c = s.amplitudes().cwiseProduct(u.phases(s.n_max(), sign));
  return SingleModeState::normalized(std::move(c), s.truncation());
}

TwoModeState apply(const TwoModeState& s, const NonlinearUnitary& u, int sign) {
  Eigen::MatrixXcd c = s.amplitudes();
  Eigen::VectorXcd ph = u.phases(s.truncation(u.mode()).n_max, sign);
  if (u.mode() == ModeLabel::A) {
    c = ph.asDiagonal() * c;
  } else {
    c = c * ph.asDiagonal();
  }
  return TwoModeState::normalized(std::move(c), s.truncation(ModeLabel::A), s.truncation(ModeLabel::B));
}

template <class S>
Mixture<S> apply(const Mixture<S>& m, const NonlinearUnitary& u, int sign) {
  std::vector<typename Mixture<S>::Branch> out;
  out.reserve(m.size());
  for (const auto& b : m.branches()) out.push_back({b.weight, apply(b.state, u, sign)});
  return Mixture<S>(std::move(out));
}

}  // namespace

SingleModeState evolve(const SingleModeState& s, const NonlinearUnitary& u) { return apply(s, u, +1); }
TwoModeState evolve(const TwoModeState& s, const NonlinearUnitary& u) { return apply(s, u, +1); }
MixtureState evolve(const MixtureState& s, const NonlinearUnitary& u) { return apply(s, u, +1); }
SingleModeMixture evolve(const SingleModeMixture& s, const NonlinearUnitary& u) { return apply(s, u, +1); }

SingleModeState inverse_evolve(const SingleModeState& s, const NonlinearUnitary& u) { return apply(s, u, -1); }
TwoModeState inverse_evolve(const TwoModeState& s, const NonlinearUnitary& u) { return apply(s, u, -1); }
MixtureState inverse_evolve(const MixtureState& s, const NonlinearUnitary& u) { return apply(s, u, -1); }
SingleModeMixture inverse_evolve(const SingleModeMixture& s, const NonlinearUnitary& u) {
  return apply(s, u, -1);
}

TwoModeState evolve_both(const TwoModeState& state, int k, PiMultiple t_a, PiMultiple t_b) {
  return evolve(evolve(state, NonlinearUnitary(k, t_a.mod_two_pi(), ModeLabel::A)),
                NonlinearUnitary(k, t_b.mod_two_pi(), ModeLabel::B));
}

MixtureState evolve_both(const MixtureState& state, int k, PiMultiple t_a, PiMultiple t_b) {
  return evolve(evolve(state, NonlinearUnitary(k, t_a.mod_two_pi(), ModeLabel::A)),
                NonlinearUnitary(k, t_b.mod_two_pi(), ModeLabel::B));
}

double CatDecomposition::norm_sq() const {
  return std::norm(coeff_plus) + std::norm(coeff_minus) +
         2.0 * std::real(coeff_plus * std::conj(coeff_minus)) * std::exp(-2.0 * base_alpha * base_alpha);
}

SingleModeState CatDecomposition::state(const TruncationPolicy& policy) const {
  Eigen::VectorXcd c = coeff_plus * coherent_state(base_alpha, policy).amplitudes() +
                       coeff_minus * coherent_state(-base_alpha, policy).amplitudes();
  return SingleModeState::normalized(std::move(c), policy);
}

CatDecomposition cat_decomposition(std::int64_t m, double alpha) {
  // theta = t/2 = m pi/16; reduce m mod 32 so the trig arguments stay small.
  std::int64_t r = ((m % 32) + 32) % 32;
  double theta = std::numbers::pi * static_cast<double>(r) / 16.0;
  Complex global = std::polar(1.0, -theta);
  CatDecomposition d;
  d.coeff_plus = global * std::cos(theta);
  d.coeff_minus = Complex(0.0, 1.0) * global * std::sin(theta);
  d.base_alpha = alpha;
  d.m = m;
  return d;
}

double two_state_fidelity(const SingleModeState& state, double alpha) {
  const TruncationPolicy& policy = state.truncation();
  Eigen::Matrix<Complex, Eigen::Dynamic, 2> basis(state.amplitudes().size(), 2);
  basis.col(0) = coherent_state(alpha, policy).amplitudes();
  basis.col(1) = coherent_state(-alpha, policy).amplitudes();
  Eigen::Matrix2cd gram = basis.adjoint() * basis;
  Eigen::Vector2cd v = basis.adjoint() * state.amplitudes();
  if (alpha == 0.0) return std::norm(v(0));
  return std::real(v.dot(gram.ldlt().solve(v)));
}

}  // namespace catsim
