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

#include "catsim/cli.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "catsim/catsim.hpp"

namespace catsim::cli {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

std::string format_double(double value) {
  if (!std::isfinite(value)) throw std::domain_error("non-finite value in output");
  if (value == 0.0) value = 0.0;  // drops the sign of -0
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) throw std::runtime_error("float formatting failed");
  return std::string(buf, ptr);
}

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

constexpr double kOracleTolerance = 1e-8;
constexpr double kNormTolerance = 1e-8;
constexpr const char* kManifestName = "manifest.json";

// ---------------------------------------------------------------------------
// Flags

struct CommonFlags {
  double alpha = 0.0;
  double beta = 0.0;
  int k = 0;
  std::size_t nmax = 0;
  std::size_t grid_points = 0;
  double grid_span = 0.0;
  std::string out_dir = ".";
  std::string format = "csv";

  CLI::Option* nmax_opt = nullptr;
  CLI::Option* grid_points_opt = nullptr;
  CLI::Option* grid_span_opt = nullptr;

  ExperimentConfig apply(ExperimentConfig c) const {
    c.alpha = alpha;
    c.beta = beta;
    c.k = k;
    if (nmax_opt->count()) c.n_max = nmax;
    if (grid_points_opt->count()) c.grid_points = grid_points;
    if (grid_span_opt->count()) c.grid_half_width = grid_span;
    return c;
  }
};

void add_common(CLI::App* sub, CommonFlags& f, const ExperimentConfig& defaults, bool with_beta = true) {
  f.alpha = defaults.alpha;
  f.beta = defaults.beta;
  f.k = defaults.k;
  f.grid_points = defaults.grid_points;
  sub->add_option("--alpha", f.alpha, "Coherent amplitude of mode A")->capture_default_str();
  if (with_beta) sub->add_option("--beta", f.beta, "Coherent amplitude of mode B")->capture_default_str();
  sub->add_option("--k", f.k, "Order of the nonlinearity (even)")->capture_default_str();
  f.nmax_opt = sub->add_option("--nmax", f.nmax, "Fock cutoff (default: from amplitude)");
  f.grid_points_opt =
      sub->add_option("--grid-points", f.grid_points, "Samples per quadrature axis (odd)")->capture_default_str();
  f.grid_span_opt = sub->add_option("--grid-span", f.grid_span, "Grid half-width (default: from amplitudes)");
  sub->add_option("--out-dir", f.out_dir, "Output directory")->capture_default_str();
  sub->add_option("--format", f.format, "Table format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
}

std::vector<double> parse_sweep(const std::string& text) {
  // lo:hi:step, inclusive of hi up to rounding.
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad sweep '" + text + "': expected lo:hi:step");
    }
  }
  if (parts.size() != 3 || !(parts[2] > 0.0) || parts[1] < parts[0])
    throw UsageError("bad sweep '" + text + "': expected lo:hi:step with step > 0 and hi >= lo");
  const double lo = parts[0], hi = parts[1], step = parts[2];
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<double> out;
  for (std::size_t i = 0; i < count; ++i) {
    // Round to 12 decimals so that 0.2 + 9 * 0.1 prints as 1.1.
    out.push_back(std::round((lo + static_cast<double>(i) * step) * 1e12) / 1e12);
  }
  return out;
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("bad number '" + item + "' in list '" + text + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

std::vector<PiMultiple> parse_angles(const std::string& text) {
  std::vector<PiMultiple> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(PiMultiple::parse(item));
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }
  return out;
}

std::vector<TimePair> parse_schedule(const std::string& text) {
  // "ta,tb;ta,tb;..."
  std::vector<TimePair> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    auto pair = parse_angles(item);
    if (pair.size() != 2) throw UsageError("schedule entry '" + item + "' needs two times");
    out.push_back({pair[0], pair[1]});
  }
  if (out.empty()) throw UsageError("empty schedule");
  return out;
}

// ---------------------------------------------------------------------------
// Output

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  void add(std::vector<double> row) { rows.push_back(std::move(row)); }
};

struct Manifest {
  std::string command;
  json params = json::object();
  json outputs = json::array();
  json max_deviations = json::object();
  json metrics = json::object();
  json checks = json::object();

  void check(const std::string& name, bool passed) { checks[name] = passed; }
  bool passed() const {
    for (const auto& [name, ok] : checks.items()) {
      if (!ok.get<bool>()) return false;
    }
    return true;
  }
};

json finite(double v) {
  if (!std::isfinite(v)) throw std::domain_error("non-finite value in output");
  return v;
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

class Writer {
 public:
  Writer(const CommonFlags& flags, Manifest& manifest) : flags_(flags), manifest_(manifest) {
    fs::create_directories(flags.out_dir);
  }

  void table(const std::string& stem, const Table& t) {
    std::string name = stem + "." + flags_.format;
    std::ofstream f(path(name), std::ios::binary);
    if (flags_.format == "csv") {
      f << "# manifest=" << kManifestName << "\n";
      for (std::size_t c = 0; c < t.columns.size(); ++c) f << (c ? "," : "") << t.columns[c];
      f << "\n";
      for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) f << (c ? "," : "") << format_double(row[c]);
        f << "\n";
      }
    } else {
      json j = json::object();
      j["manifest"] = kManifestName;
      for (std::size_t c = 0; c < t.columns.size(); ++c) {
        json col = json::array();
        for (const auto& row : t.rows) col.push_back(finite(row[c]));
        j[t.columns[c]] = std::move(col);
      }
      f << j.dump(1) << "\n";
    }
    finish(f, name);
  }

  void document(const std::string& name, json j) {
    j["manifest"] = kManifestName;
    std::ofstream f(path(name), std::ios::binary);
    f << j.dump(2) << "\n";
    finish(f, name);
  }

  void manifest() {
    json j = json::object();
    j["command"] = manifest_.command;
    j["params"] = manifest_.params;
    j["engine_version"] = catsim::version();
    j["timestamp"] = utc_timestamp();
    j["outputs"] = manifest_.outputs;
    j["max_deviations"] = manifest_.max_deviations;
    j["metrics"] = manifest_.metrics;
    j["checks"] = manifest_.checks;
    j["status"] = manifest_.passed() ? "ok" : "invariant_failure";
    std::ofstream f(path(kManifestName), std::ios::binary);
    f << j.dump(2) << "\n";
    if (!f) throw std::runtime_error(std::string("failed writing ") + kManifestName);
  }

 private:
  fs::path path(const std::string& name) const { return fs::path(flags_.out_dir) / name; }

  void finish(std::ofstream& f, const std::string& name) {
    if (!f) throw std::runtime_error("failed writing " + name);
    manifest_.outputs.push_back(name);
  }

  const CommonFlags& flags_;
  Manifest& manifest_;
};

void record_common(Manifest& m, const CommonFlags& f, const ExperimentConfig& c) {
  m.params["alpha"] = finite(c.alpha);
  m.params["beta"] = finite(c.beta);
  m.params["k"] = c.k;
  if (c.n_max) m.params["nmax"] = *c.n_max;
  m.params["grid_points"] = c.grid_points;
  if (c.grid_half_width) m.params["grid_span"] = finite(*c.grid_half_width);
  m.params["format"] = f.format;
}

bool normalized(const Grid1D& grid, const Eigen::VectorXd& density) {
  return std::abs(grid.weights().dot(density) - 1.0) <= kNormTolerance;
}

bool nonnegative(const Eigen::VectorXd& v) { return v.minCoeff() >= 0.0; }

Table branch_table(const std::string& axis, const BranchTable& b) {
  Table t{{axis, "density_plus", "density_minus", "oracle_plus", "oracle_minus"}, {}};
  for (std::size_t i = 0; i < b.grid.size(); ++i) {
    auto j = static_cast<Eigen::Index>(i);
    t.add({b.grid[i], b.numeric_plus(j), b.numeric_minus(j), b.oracle_plus(j), b.oracle_minus(j)});
  }
  return t;
}

void check_branch_table(Manifest& m, const std::string& name, const BranchTable& b) {
  m.max_deviations[name] = finite(b.max_deviation());
  m.check(name + "_matches_oracle", b.max_deviation() < kOracleTolerance);
  m.check(name + "_normalized", normalized(b.grid, b.numeric_plus) && normalized(b.grid, b.numeric_minus));
  m.check(name + "_nonnegative", nonnegative(b.numeric_plus) && nonnegative(b.numeric_minus));
}

// ---------------------------------------------------------------------------
// Commands

int cmd_eraser(const CommonFlags& f, std::ostream& out) {
  ExperimentConfig c = f.apply(ExperimentConfig::eraser_defaults());
  Manifest m{"eraser"};
  record_common(m, f, c);
  EraserDataset d = run_eraser(c);

  Writer w(f, m);
  w.table("eraser_whichway", branch_table("p", d.which_way));
  w.table("eraser_fringes", branch_table("p", d.eraser));
  w.table("eraser_whichway_x", branch_table("x", d.which_way_x));

  check_branch_table(m, "fringes", d.eraser);
  check_branch_table(m, "whichway", d.which_way);
  check_branch_table(m, "whichway_x", d.which_way_x);
  m.max_deviations["fringes_vs_simple"] = finite(d.max_deviation_from_simple);
  m.metrics["which_way_visibility"] = finite(d.which_way_visibility);
  m.metrics["which_way_gaussian_deviation"] = finite(d.which_way_gaussian_deviation);
  m.metrics["prob_plus"] = finite(d.prob_plus);
  w.manifest();

  out << "fringes max|numeric-oracle| = " << format_double(d.eraser.max_deviation())
      << "\nwhich-way visibility = " << format_double(d.which_way_visibility) << "\n";
  return m.passed() ? kExitOk : kExitInvariantFailure;
}

int cmd_lg(const CommonFlags& f, const std::string& sweep, std::ostream& out) {
  ExperimentConfig c = f.apply(ExperimentConfig::leggett_garg_defaults());
  Manifest m{"lg"};
  record_common(m, f, c);
  std::vector<double> alphas = sweep.empty() ? std::vector<double>{c.alpha} : parse_sweep(sweep);
  if (!sweep.empty()) m.params["alpha_sweep"] = sweep;

  Table t{{"alpha", "e12", "e13", "e23", "b_lg", "p_cond"}, {}};
  json points = json::array();
  double best = -std::numeric_limits<double>::infinity();
  double best_alpha = 0.0;
  bool bounded = true;
  bool composed = true;
  for (double a : alphas) {
    LgReport r = run_leggett_garg(a, c.beta, c);
    t.add({a, r.e12, r.e13, r.e23, r.b_lg, r.p_cond});
    for (double e : {r.e12, r.e13, r.e23}) bounded = bounded && std::abs(e) <= 1.0 + 1e-9;
    composed = composed && std::abs(r.b_lg - (r.e12 + r.e23 - r.e13)) <= 1e-12;
    if (r.b_lg > best) {
      best = r.b_lg;
      best_alpha = a;
    }
    points.push_back({{"alpha", finite(a)}, {"c12", finite(r.c12)}, {"c13", finite(r.c13)},
                      {"c23", finite(r.c23)}, {"b_lg", finite(r.b_lg)}, {"p_cond", finite(r.p_cond)}});
  }
  m.check("moments_bounded", bounded);
  m.check("b_lg_composition", composed);
  m.metrics["max_b_lg"] = finite(best);

  Writer w(f, m);
  w.table("lg_sweep", t);
  json summary = json::object();
  summary["beta"] = finite(c.beta);
  summary["k"] = c.k;
  summary["max_b_lg"] = finite(best);
  summary["alpha_at_max"] = finite(best_alpha);
  summary["violation"] = best > 1.0;
  summary["points"] = points;
  w.document("lg_summary.json", summary);
  w.manifest();

  out << "max b_lg = " << format_double(best) << " at alpha = " << format_double(best_alpha) << "\n";
  return m.passed() ? kExitOk : kExitInvariantFailure;
}

int cmd_dw(const CommonFlags& f, const std::string& angle_text, bool qubit_model, std::ostream& out) {
  ExperimentConfig c = f.apply(ExperimentConfig::dimension_witness_defaults());
  Manifest m{"dw"};
  record_common(m, f, c);
  m.params["qubit_model"] = qubit_model;

  DwAngles angles = qubit_model ? DwAngles::qubit() : DwAngles::macroscopic();
  if (!angle_text.empty()) {
    auto v = parse_angles(angle_text);
    if (v.size() != 5) throw UsageError("--angles needs five values: theta,theta',theta'',phi,phi'");
    angles = {v[0], v[1], v[2], v[3], v[4]};
  }
  m.params["angles"] = {angles.theta.str(), angles.theta2.str(), angles.theta3.str(), angles.phi.str(),
                        angles.phi2.str()};

  DwReport r;
  try {
    r = qubit_model ? qubit_dimension_witness(angles) : run_dimension_witness(angles, c.alpha, c);
  } catch (const InvalidAngle& e) {
    throw UsageError(e.what());
  }
  ClassicalBound bound = classical_dw_bound();

  json report = json::object();
  report["model"] = qubit_model ? "qubit" : "cat";
  report["alpha"] = finite(c.alpha);
  report["angles"] = m.params["angles"];
  static const char* kLabels[5] = {"E(theta,phi)", "E(theta,phi')", "E(theta',phi)", "E(theta',phi')",
                                   "E(theta'',phi)"};
  json corr = json::object();
  json analytic = json::object();
  for (std::size_t i = 0; i < 5; ++i) {
    corr[kLabels[i]] = finite(r.correlators[i]);
    analytic[kLabels[i]] = finite(r.analytic[i]);
  }
  report["correlators"] = corr;
  report["analytic_correlators"] = analytic;
  report["i_dw"] = finite(r.i_dw);
  report["i_dw_analytic"] = finite(r.i_dw_analytic);
  report["classical_bound"] = finite(std::max(bound.product_model, bound.bit_model));
  report["classical_strategies"] = bound.strategies;
  report["max_deviation"] = finite(r.max_deviation);

  m.max_deviations["correlators"] = finite(r.max_deviation);
  m.metrics["i_dw"] = finite(r.i_dw);
  m.check("correlators_match_analytic", r.max_deviation < 5e-3);
  m.check("classical_bound_is_3", bound.product_model == 3.0 && bound.bit_model == 3.0);

  Writer w(f, m);
  w.document("dw_report.json", report);
  w.manifest();
  out << "i_dw = " << format_double(r.i_dw) << " (analytic " << format_double(r.i_dw_analytic)
      << ", classical bound " << format_double(report["classical_bound"].get<double>()) << ")\n";
  return m.passed() ? kExitOk : kExitInvariantFailure;
}

int cmd_epr(const CommonFlags& f, const std::string& betas_text, const std::string& sweep, std::ostream& out) {
  ExperimentConfig c = f.apply(ExperimentConfig::epr_defaults());
  Manifest m{"epr"};
  record_common(m, f, c);
  m.params.erase("beta");
  m.params["beta"] = betas_text;
  if (!sweep.empty()) m.params["alpha_sweep"] = sweep;
  std::vector<double> betas = parse_list(betas_text);
  std::vector<double> alphas = sweep.empty() ? std::vector<double>{c.alpha} : parse_sweep(sweep);

  Table t{{"alpha", "beta", "var_x_inf", "var_p_inf", "eps_sq", "eps_m_sq", "oracle_var_x_inf",
           "oracle_var_p_inf", "oracle_eps_sq", "oracle_eps_m_sq"},
          {}};
  double dev = 0.0;
  bool nonneg = true;
  for (double b : betas) {
    for (double a : alphas) {
      EprReport r = run_epr(a, b, c);
      t.add({a, b, r.var_x_inf, r.var_p_inf, r.epsilon_sq, r.epsilon_m_sq, r.oracle.var_x_inf,
             r.oracle.var_p_inf, r.epsilon_sq_oracle, r.epsilon_m_sq_oracle});
      dev = std::max({dev, std::abs(r.var_x_inf - r.oracle.var_x_inf), std::abs(r.var_p_inf - r.oracle.var_p_inf),
                      std::abs(r.epsilon_m_sq - r.epsilon_m_sq_oracle)});
      nonneg = nonneg && r.var_x_inf >= 0.0 && r.var_p_inf >= 0.0 && r.epsilon_m_sq >= 0.0;
    }
  }
  m.max_deviations["variances"] = finite(dev);
  m.check("variances_match_oracle", dev < 1e-6);
  m.check("variances_nonnegative", nonneg);

  Writer w(f, m);
  w.table("epr_sweep", t);
  w.manifest();
  out << t.rows.size() << " points, max|numeric-oracle| = " << format_double(dev) << "\n";
  return m.passed() ? kExitOk : kExitInvariantFailure;
}

int cmd_qfunc(const CommonFlags& f, const std::string& theta_text, const std::string& phi_text,
              const std::string& which, std::ostream& out) {
  Manifest m{"qfunc"};
  if (f.alpha < 0.0 || !std::isfinite(f.alpha)) throw UsageError("--alpha must be non-negative");
  PiMultiple theta, phi;
  try {
    theta = PiMultiple::parse(theta_text);
    phi = PiMultiple::parse(phi_text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::size_t points = f.grid_points_opt->count() ? f.grid_points : 241;
  if (points < 5 || points % 2 == 0) throw UsageError("--grid-points must be odd and at least 5");
  Grid1D grid = f.grid_span_opt->count() ? Grid1D::symmetric(f.grid_span, points) : default_q_grid(f.alpha, points);

  m.params["alpha"] = finite(f.alpha);
  m.params["k"] = f.k;
  m.params["theta"] = theta.str();
  m.params["phi"] = phi.str();
  m.params["state"] = which;
  m.params["grid_points"] = points;
  m.params["grid_span"] = finite(grid.hi());
  m.params["format"] = f.format;

  Writer w(f, m);
  json summary = json::object();
  summary["alpha"] = finite(f.alpha);
  summary["theta"] = theta.str();
  summary["phi"] = phi.str();
  json snaps = json::array();
  bool normalized_ok = true;
  bool nonneg = true;
  std::vector<std::pair<std::string, bool>> kinds;
  if (which != "mixture") kinds.push_back({"superposition", false});
  if (which != "superposition") kinds.push_back({"mixture", true});
  for (const auto& [name, is_mix] : kinds) {
    auto seq = dw_q_sequence(f.alpha, f.k, theta, phi, is_mix);
    for (const QSnapshot& s : q_scan(seq, grid, grid)) {
      Table t{{"x", "p", "q"}, {}};
      for (std::size_t i = 0; i < s.x.size(); ++i) {
        for (std::size_t j = 0; j < s.p.size(); ++j)
          t.add({s.x[i], s.p[j], s.q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))});
      }
      w.table("qfunc_" + name + "_" + s.label, t);
      normalized_ok = normalized_ok && std::abs(s.integral - 1.0) <= 1e-6;
      nonneg = nonneg && s.q.minCoeff() >= 0.0;
      snaps.push_back({{"state", name}, {"stage", s.label}, {"integral", finite(s.integral)},
                       {"weight_right", finite(s.weight_right)}, {"weight_left", finite(s.weight_left)}});
    }
  }
  summary["snapshots"] = snaps;
  w.document("qfunc_summary.json", summary);
  m.check("q_normalized", normalized_ok);
  m.check("q_nonnegative", nonneg);
  w.manifest();
  for (const auto& s : snaps) {
    out << s["state"].get<std::string>() << " " << s["stage"].get<std::string>()
        << ": weights " << format_double(s["weight_right"].get<double>()) << " : "
        << format_double(s["weight_left"].get<double>()) << "\n";
  }
  return m.passed() ? kExitOk : kExitInvariantFailure;
}

int cmd_sequence(const CommonFlags& f, const std::string& which, const std::string& schedule_text,
                 std::ostream& out) {
  ExperimentConfig c = f.apply(ExperimentConfig::sequence_defaults());
  if (!f.grid_points_opt->count()) c.grid_points = 241;
  if (!schedule_text.empty()) c.schedule = parse_schedule(schedule_text);
  Manifest m{"sequence"};
  record_common(m, f, c);
  m.params["state"] = which;
  json sched = json::array();
  for (const auto& [ta, tb] : c.schedule) sched.push_back({ta.str(), tb.str()});
  m.params["schedule"] = sched;

  MixtureComparison cmp = run_mixture_comparison(c);
  Writer w(f, m);
  json snaps = json::array();
  bool divergence = false;
  bool normalized_ok = true;
  double worst_single = 0.0;
  for (const SequenceSnapshot& s : cmp.snapshots) {
    std::vector<std::string> cols = {"x_a", "x_b"};
    if (which != "mix") cols.push_back("density_bell");
    if (which != "bell") cols.push_back("density_mix");
    Table t{cols, {}};
    const Grid1D& ga = s.bell.grid_a();
    const Grid1D& gb = s.bell.grid_b();
    for (std::size_t i = 0; i < ga.size(); ++i) {
      for (std::size_t j = 0; j < gb.size(); ++j) {
        auto ii = static_cast<Eigen::Index>(i);
        auto jj = static_cast<Eigen::Index>(j);
        std::vector<double> row = {ga[i], gb[j]};
        if (which != "mix") row.push_back(s.bell.density()(ii, jj));
        if (which != "bell") row.push_back(s.mix.density()(ii, jj));
        t.add(std::move(row));
      }
    }
    w.table("sequence_" + s.times.first.file_label() + "_" + s.times.second.file_label(), t);
    bool diverged = std::abs(s.delta_e()) > 0.5;
    divergence = divergence || diverged;
    if (s.times.second.num() == 0) worst_single = std::max(worst_single, s.sup_diff);
    normalized_ok = normalized_ok && std::abs(s.bell.integral() - 1.0) <= kNormTolerance &&
                    std::abs(s.mix.integral() - 1.0) <= kNormTolerance;
    snaps.push_back({{"t_a", s.times.first.str()}, {"t_b", s.times.second.str()},
                     {"sup_diff", finite(s.sup_diff)}, {"e_bell", finite(s.bell_spin.correlator)},
                     {"e_mix", finite(s.mix_spin.correlator)}, {"delta_e", finite(s.delta_e())},
                     {"macroscopic_divergence", diverged}});
  }
  json summary = json::object();
  summary["alpha"] = finite(c.alpha);
  summary["beta"] = finite(c.beta);
  summary["state"] = which;
  summary["snapshots"] = snaps;
  summary["max_sup_diff_single_rotation"] = finite(worst_single);
  summary["macroscopic_divergence"] = divergence;
  w.document("sequence_summary.json", summary);
  m.metrics["max_sup_diff_single_rotation"] = finite(worst_single);
  m.metrics["macroscopic_divergence"] = divergence;
  m.check("joint_normalized", normalized_ok);
  w.manifest();
  out << "macroscopic divergence: " << (divergence ? "yes" : "no") << "\n";
  return m.passed() ? kExitOk : kExitInvariantFailure;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"catsim: cat-state delayed-choice simulator", "catsim"};
  app.set_version_flag("--version", catsim::version());
  app.require_subcommand(1);

  CommonFlags eraser_f, lg_f, dw_f, epr_f, q_f, seq_f;
  std::string lg_sweep, dw_angles, epr_betas = "2", epr_sweep, q_theta = "pi/4", q_phi = "-pi/8",
                                   q_state = "both", seq_state = "both", seq_times;
  bool dw_qubit = false;

  auto* eraser = app.add_subcommand("eraser", "Conditional quadrature densities with and without which-way information");
  add_common(eraser, eraser_f, ExperimentConfig::eraser_defaults());

  auto* lg = app.add_subcommand("lg", "Leggett-Garg moments and B_lg");
  add_common(lg, lg_f, ExperimentConfig::leggett_garg_defaults());
  lg->add_option("--alpha-sweep", lg_sweep, "lo:hi:step");

  auto* dw = app.add_subcommand("dw", "Dimension witness correlators");
  add_common(dw, dw_f, ExperimentConfig::dimension_witness_defaults(), false);
  dw->add_option("--angles", dw_angles, "theta,theta',theta'',phi,phi' as multiples of pi");
  dw->add_flag("--qubit-model", dw_qubit, "Use the qubit reference model cos(2(theta - phi))");

  auto* epr = app.add_subcommand("epr", "EPR inference variances");
  add_common(epr, epr_f, ExperimentConfig::epr_defaults(), false);
  epr->add_option("--beta", epr_betas, "Comma-separated beta values")->capture_default_str();
  epr->add_option("--alpha-sweep", epr_sweep, "lo:hi:step");

  auto* qfunc = app.add_subcommand("qfunc", "Q function snapshots of the dimension-witness sequence");
  add_common(qfunc, q_f, ExperimentConfig::dimension_witness_defaults(), false);
  qfunc->add_option("--theta", q_theta, "Preparation angle")->capture_default_str();
  qfunc->add_option("--phi", q_phi, "Measurement angle")->capture_default_str();
  qfunc->add_option("--state", q_state, "superposition, mixture or both")
      ->check(CLI::IsMember({"superposition", "mixture", "both"}))
      ->capture_default_str();

  auto* sequence = app.add_subcommand("sequence", "Joint (X_A, X_B) densities of the Bell state and the mixture");
  add_common(sequence, seq_f, ExperimentConfig::sequence_defaults());
  sequence->add_option("--state", seq_state, "bell, mix or both")
      ->check(CLI::IsMember({"bell", "mix", "both"}))
      ->capture_default_str();
  sequence->add_option("--times", seq_times, "ta,tb;ta,tb;... (default: the double-rotation schedule)");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  if (!rev.empty()) rev.pop_back();
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsageError;
  }

  try {
    if (*eraser) return cmd_eraser(eraser_f, out);
    if (*lg) return cmd_lg(lg_f, lg_sweep, out);
    if (*dw) return cmd_dw(dw_f, dw_angles, dw_qubit, out);
    if (*epr) return cmd_epr(epr_f, epr_betas, epr_sweep, out);
    if (*qfunc) return cmd_qfunc(q_f, q_theta, q_phi, q_state, out);
    if (*sequence) return cmd_sequence(seq_f, seq_state, seq_times, out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::invalid_argument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitEngineError;
  }
  return kExitUsageError;
}

int main(int argc, const char* const* argv) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, std::cout, std::cerr);
}

}  // namespace catsim::cli
