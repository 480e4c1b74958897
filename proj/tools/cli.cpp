// Copyright 2026 The psmet Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "psmet/errors.hpp"
#include "psmet/fisher.hpp"
#include "psmet/linalg.hpp"
#include "psmet/protocols.hpp"
#include "psmet/quasiprob.hpp"
#include "psmet/rng.hpp"
#include "psmet/states.hpp"
#include "psmet/weakvalue.hpp"

namespace psmet::cli {

namespace {

using nlohmann::ordered_json;

// One output cell; booleans are carried as integer 0/1 so CSV and JSON
// agree on every value.
using Cell = std::variant<double, long long, std::string>;

struct Doc {
  std::string command;
  ordered_json params = ordered_json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  std::vector<std::pair<std::string, Cell>> summary;
};

struct CommonOpts {
  std::string out_path;
  std::string format = "csv";
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

std::string format_cell(const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    return format_double(*d);
  }
  if (const long long* i = std::get_if<long long>(&cell)) {
    return std::to_string(*i);
  }
  return std::get<std::string>(cell);
}

void cell_to_json(ordered_json& object, const std::string& key, const Cell& cell) {
  if (const double* d = std::get_if<double>(&cell)) {
    object[key] = *d;
  } else if (const long long* i = std::get_if<long long>(&cell)) {
    object[key] = *i;
  } else {
    object[key] = std::get<std::string>(cell);
  }
}

void write_csv(const Doc& doc, std::ostream& out) {
  for (std::size_t c = 0; c < doc.columns.size(); ++c) {
    out << (c == 0 ? "" : ",") << doc.columns[c];
  }
  out << "\n";
  for (const std::vector<Cell>& row : doc.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c == 0 ? "" : ",") << format_cell(row[c]);
    }
    out << "\n";
  }
  for (const auto& [key, value] : doc.summary) {
    out << "# " << key << "=" << format_cell(value) << "\n";
  }
}

void write_json(const Doc& doc, std::ostream& out) {
  ordered_json root;
  root["command"] = doc.command;
  root["params"] = doc.params;
  ordered_json records = ordered_json::array();
  for (const std::vector<Cell>& row : doc.rows) {
    ordered_json record = ordered_json::object();
    for (std::size_t c = 0; c < row.size(); ++c) {
      cell_to_json(record, doc.columns[c], row[c]);
    }
    records.push_back(std::move(record));
  }
  root["records"] = std::move(records);
  ordered_json summary = ordered_json::object();
  for (const auto& [key, value] : doc.summary) {
    cell_to_json(summary, key, value);
  }
  root["summary"] = std::move(summary);
  out << root.dump(2) << "\n";
}

int emit(const Doc& doc, const CommonOpts& common, std::ostream& out,
         std::ostream& err) {
  if (common.out_path.empty()) {
    if (common.format == "json") {
      write_json(doc, out);
    } else {
      write_csv(doc, out);
    }
    return 0;
  }
  std::ofstream file(common.out_path);
  if (!file) {
    err << "error: cannot open output file '" << common.out_path << "'\n";
    return 1;
  }
  if (common.format == "json") {
    write_json(doc, file);
  } else {
    write_csv(doc, file);
  }
  return 0;
}

long long as_int(bool flag) { return flag ? 1 : 0; }

// The sweep-schema row shared by `three-level` and `three-level-sweep`.
std::vector<Cell> metrics_row(const SweepRecord& r) {
  return {r.x,      r.alpha,  r.p_ps,   r.qfi,    r.xi,
          r.aw1_re, r.aw1_im, r.aw2_re, r.aw2_im, as_int(r.divergent)};
}

SweepRecord record_from_metrics(const ThreeLevelMetrics& m, double alpha) {
  SweepRecord record;
  record.x = m.x;
  record.alpha = alpha;
  record.p_ps = m.metrics.probability;
  record.qfi = m.metrics.qfi.value_or(0.0);
  record.xi = m.metrics.xi;
  if (m.a_w1.has_value()) {
    record.aw1_re = m.a_w1->real();
    record.aw1_im = m.a_w1->imag();
  }
  if (m.a_w2.has_value()) {
    record.aw2_re = m.a_w2->real();
    record.aw2_im = m.a_w2->imag();
  }
  record.divergent =
      m.metrics.divergent() || !m.a_w1.has_value() || !m.a_w2.has_value();
  return record;
}

const std::vector<std::string> kSweepColumns = {
    "x",      "alpha",  "p_ps",   "qfi",    "xi",
    "aw1_re", "aw1_im", "aw2_re", "aw2_im", "divergent"};

// Deterministic in-place Fisher-Yates driven by the artifact RNG.
void shuffle_indices(std::vector<std::size_t>& indices, Rng& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.next_u64() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

struct RandomKdInstance {
  Ket psi;
  HermitianOperator op;
  Postselection ps;
};

RandomKdInstance random_kd_instance(std::size_t dim, std::uint64_t seed,
                                    bool commuting) {
  Rng rng(seed);
  HermitianOperator op(random_hermitian(dim, rng));
  Ket psi = random_haar_ket(dim, rng);
  std::vector<Ket> basis = commuting ? op.spectrum().eigenvectors
                                     : random_orthonormal_basis(dim, rng);
  Postselection ps(std::move(basis), std::vector<std::size_t>{0});
  return RandomKdInstance{std::move(psi), std::move(op), std::move(ps)};
}

int handle_three_level(double lambda, double lambda_tilde, double alpha,
                       std::optional<double> x, std::optional<double> phi,
                       std::optional<double> delta_theta, bool limits,
                       const CommonOpts& common, std::ostream& out,
                       std::ostream& err) {
  std::optional<ThreeLevelConfig> cfg;
  try {
    if (x.has_value()) {
      cfg = ThreeLevelConfig::from_x(lambda, lambda_tilde, alpha, *x);
    } else {
      cfg = ThreeLevelConfig(lambda, lambda_tilde, alpha, *phi, 0.0,
                             *delta_theta);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  Doc doc;
  doc.command = "three-level";
  doc.params["lambda"] = lambda;
  doc.params["lambda_tilde"] = lambda_tilde;
  doc.params["alpha"] = alpha;
  doc.params["phi"] = cfg->phi();
  doc.params["delta_theta"] = cfg->delta_theta();
  doc.params["x"] = cfg->x();
  doc.params["limits"] = limits ? 1 : 0;
  doc.params["tol"] = common.tol;
  doc.columns = kSweepColumns;
  const ThreeLevelMetrics m = three_level_metrics(*cfg);
  doc.rows.push_back(metrics_row(record_from_metrics(m, alpha)));
  doc.summary.emplace_back("alpha_singular", as_int(m.alpha_singular));
  if (limits) {
    try {
      const ThreeLevelLimits lim = three_level_limits(lambda, alpha);
      doc.summary.emplace_back("p_lim", lim.probability);
      doc.summary.emplace_back("qfi_lim", lim.qfi);
      doc.summary.emplace_back("xi_lim", lim.xi);
    } catch (const AlphaSingularError& e) {
      err << "error: " << e.what() << "\n";
      return 1;
    }
  }
  return emit(doc, common, out, err);
}

int handle_three_level_sweep(double lambda, double lambda_tilde, double theta0,
                             double delta_theta, double x_min, double x_max,
                             std::size_t x_steps, double alpha_min,
                             double alpha_max, std::size_t alpha_steps,
                             const CommonOpts& common, std::ostream& out,
                             std::ostream& err) {
  std::vector<SweepRecord> records;
  try {
    const SweepGrid grid = SweepGrid::linspace(x_min, x_max, x_steps, alpha_min,
                                               alpha_max, alpha_steps);
    const ThreeLevelConfig base(lambda, lambda_tilde, 0.0,
                                lambda * delta_theta, theta0, delta_theta);
    records = sweep(base, grid);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  Doc doc;
  doc.command = "three-level-sweep";
  doc.params["lambda"] = lambda;
  doc.params["lambda_tilde"] = lambda_tilde;
  doc.params["theta0"] = theta0;
  doc.params["delta_theta"] = delta_theta;
  doc.params["x_min"] = x_min;
  doc.params["x_max"] = x_max;
  doc.params["x_steps"] = static_cast<std::uint64_t>(x_steps);
  doc.params["alpha_min"] = alpha_min;
  doc.params["alpha_max"] = alpha_max;
  doc.params["alpha_steps"] = static_cast<std::uint64_t>(alpha_steps);
  doc.columns = kSweepColumns;
  long long divergent_cells = 0;
  for (const SweepRecord& r : records) {
    doc.rows.push_back(metrics_row(r));
    divergent_cells += as_int(r.divergent);
  }
  doc.summary.emplace_back("cells", static_cast<long long>(records.size()));
  doc.summary.emplace_back("divergent_cells", divergent_cells);
  return emit(doc, common, out, err);
}

int handle_bound_check(std::size_t dim, std::size_t trials,
                       const CommonOpts& common, std::ostream& out,
                       std::ostream& err) {
  Doc doc;
  doc.command = "bound-check";
  doc.params["dim"] = static_cast<std::uint64_t>(dim);
  doc.params["trials"] = static_cast<std::uint64_t>(trials);
  doc.params["seed"] = common.seed;
  doc.params["tol"] = common.tol;
  doc.columns = {"trial", "dim", "rank", "p_ps", "xi", "bound", "ratio",
                 "within"};
  long long violations = 0;
  double max_ratio = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    Rng rng(common.seed + trial);
    HermitianOperator op(random_hermitian(dim, rng));
    const Ket psi = random_haar_ket(dim, rng);
    std::vector<Ket> basis = random_orthonormal_basis(dim, rng);
    const std::size_t rank = 1 + static_cast<std::size_t>(rng.next_u64() % dim);
    std::vector<std::size_t> indices(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      indices[i] = i;
    }
    shuffle_indices(indices, rng);
    indices.resize(rank);
    const double delta = (2.0 * rng.uniform() - 1.0) * std::numbers::pi;
    const double bound = 4.0 * operator_norm_sq(op);
    const Postselection ps(std::move(basis), indices);
    const ProtocolMetrics metrics =
        postselected_metrics(psi, EncodingConfig(op, 0.0, delta), ps);
    const double ratio = bound > 0.0 ? metrics.xi / bound : 0.0;
    const bool within =
        metrics.xi >= -common.tol && metrics.xi <= bound + common.tol;
    if (!within) {
      ++violations;
    }
    max_ratio = std::max(max_ratio, ratio);
    doc.rows.push_back({static_cast<long long>(trial),
                        static_cast<long long>(dim),
                        static_cast<long long>(rank), metrics.probability,
                        metrics.xi, bound, ratio, as_int(within)});
  }
  doc.summary.emplace_back("trials", static_cast<long long>(trials));
  doc.summary.emplace_back("violations", violations);
  doc.summary.emplace_back("max_ratio", max_ratio);
  const int rc = emit(doc, common, out, err);
  if (rc != 0) {
    return rc;
  }
  return violations == 0 ? 0 : 1;
}

int handle_kd(const std::string& demo, bool random, std::size_t dim,
              double alpha, double lambda, const CommonOpts& common,
              std::ostream& out, std::ostream& err) {
  Doc doc;
  doc.command = "kd";
  KDTable kd;
  std::vector<std::vector<double>> wigner;
  std::vector<std::vector<double>> modification;
  IdentityCheckResult identity;
  if (random) {
    doc.params["mode"] = "random";
    doc.params["dim"] = static_cast<std::uint64_t>(dim);
    doc.params["seed"] = common.seed;
    const RandomKdInstance inst = random_kd_instance(dim, common.seed, false);
    kd = kd_distribution(inst.psi, inst.op, inst.ps);
    wigner = wigner_formula(inst.psi, inst.op, inst.ps);
    modification = quantum_modification(inst.psi, inst.op, inst.ps);
    identity = kd_identity_check(inst.psi, inst.op, inst.ps);
  } else if (demo == "three-level") {
    doc.params["mode"] = "three-level";
    doc.params["alpha"] = alpha;
    doc.params["lambda"] = lambda;
    const ThreeLevelConfig cfg =
        ThreeLevelConfig::from_x(lambda, 0.0, alpha, kOptimumX);
    const ThreeLevelSetup setup = three_level_setup(cfg);
    const Ket psi_theta =
        encode(setup.psi_i, EncodingConfig(setup.generator, 0.0, 0.0));
    kd = kd_distribution(psi_theta, setup.generator, setup.ps);
    wigner = wigner_formula(psi_theta, setup.generator, setup.ps);
    modification = quantum_modification(psi_theta, setup.generator, setup.ps);
    identity = kd_identity_check(psi_theta, setup.generator, setup.ps);
  } else {  // commuting
    doc.params["mode"] = "commuting";
    doc.params["dim"] = static_cast<std::uint64_t>(dim);
    doc.params["seed"] = common.seed;
    const RandomKdInstance inst = random_kd_instance(dim, common.seed, true);
    kd = kd_distribution(inst.psi, inst.op, inst.ps);
    wigner = wigner_formula(inst.psi, inst.op, inst.ps);
    modification = quantum_modification(inst.psi, inst.op, inst.ps);
    identity = kd_identity_check(inst.psi, inst.op, inst.ps);
  }
  doc.params["tol"] = common.tol;
  doc.columns = {"table", "row", "col", "re", "im"};
  const std::size_t n = kd.entries.size();
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      doc.rows.push_back({std::string("kd"), static_cast<long long>(m),
                          static_cast<long long>(k), kd.entries[m][k].real(),
                          kd.entries[m][k].imag()});
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      doc.rows.push_back({std::string("wigner"), static_cast<long long>(m),
                          static_cast<long long>(k), wigner[m][k], 0.0});
    }
  }
  for (std::size_t m = 0; m < n; ++m) {
    for (std::size_t k = 0; k < n; ++k) {
      doc.rows.push_back({std::string("modification"),
                          static_cast<long long>(m), static_cast<long long>(k),
                          modification[m][k], 0.0});
    }
  }
  const ClassicalityReport report =
      classicality_report(kd, common.tol, common.tol);
  doc.summary.emplace_back("min_real", report.min_real);
  doc.summary.emplace_back("max_abs_imag", report.max_abs_imag);
  doc.summary.emplace_back("classical", as_int(report.classical));
  doc.summary.emplace_back("max_residual", identity.max_residual);
  doc.summary.emplace_back("imag_flagged", as_int(identity.imag_flagged));
  return emit(doc, common, out, err);
}

int handle_wva_entangled(std::size_t n, double lambda_x, double lambda_y,
                         std::size_t sub_dim, std::optional<double> target,
                         const CommonOpts& common, std::ostream& out,
                         std::ostream& err) {
  EntangledProbeConfig config;
  config.n = n;
  config.lambda_x = lambda_x;
  config.lambda_y = lambda_y;
  config.sub_dim = sub_dim;
  EntangledScalingReport report;
  try {
    report = entangled_scaling_report(config, target);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  Doc doc;
  doc.command = "wva";
  doc.params["mode"] = "entangled";
  doc.params["n"] = static_cast<std::uint64_t>(n);
  doc.params["sub_dim"] = static_cast<std::uint64_t>(sub_dim);
  doc.params["lambda_x"] = lambda_x;
  doc.params["lambda_y"] = lambda_y;
  if (target.has_value()) {
    doc.params["target"] = *target;
  }
  doc.columns = {"n",    "sub_dim",      "lambda_x",  "lambda_y",
                 "aw",   "p_s",          "approx_p_s", "relative_gap",
                 "amplified", "eta",     "anomalous", "divergent"};
  const double nd = static_cast<double>(n);
  const double eta = nd * nd * (lambda_x * lambda_x + lambda_y * lambda_y) / 2.0;
  doc.rows.push_back({static_cast<long long>(n),
                      static_cast<long long>(sub_dim), lambda_x, lambda_y,
                      report.weak_value.value_or(0.0), report.probability,
                      report.approx_probability, report.relative_gap,
                      report.amplified_weak_value, eta,
                      as_int(report.anomalous), as_int(report.divergent())});
  if (report.lambda_y_roots.has_value()) {
    doc.summary.emplace_back("lambda_y_root_hi", report.lambda_y_roots->first);
    doc.summary.emplace_back("lambda_y_root_lo", report.lambda_y_roots->second);
  } else if (target.has_value()) {
    doc.summary.emplace_back("lambda_y_roots_real", static_cast<long long>(0));
  }
  return emit(doc, common, out, err);
}

int handle_wva_spin_half(double theta, double phi, const CommonOpts& common,
                         std::ostream& out, std::ostream& err) {
  const double c = std::cos(theta / 2.0);
  const double s = std::sin(theta / 2.0);
  const Ket psi_i({Complex(c, 0.0), std::polar(s, phi)});
  const Ket psi_f({Complex(c, 0.0), std::polar(s, phi + std::numbers::pi)});
  const HermitianOperator sz = HermitianOperator::diagonal({1.0, -1.0});
  Doc doc;
  doc.command = "wva";
  doc.params["mode"] = "spin-half";
  doc.params["theta"] = theta;
  doc.params["phi"] = phi;
  doc.columns = {"theta",    "phi", "aw_re",    "aw_im",
                 "p_s",      "eta", "phase_up", "phase_down"};
  try {
    const Complex aw = weak_value(psi_i, psi_f, sz);
    const double p_s = std::norm(psi_f.inner(psi_i));
    const double eta = wva_efficiency(psi_i, psi_f, sz);
    const GeometricPhaseResult up =
        geometric_phase(psi_i, Ket::basis_state(2, 0), psi_f);
    const GeometricPhaseResult down =
        geometric_phase(psi_i, Ket::basis_state(2, 1), psi_f);
    doc.rows.push_back({theta, phi, aw.real(), aw.imag(), p_s, eta, up.phase,
                        down.phase});
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return emit(doc, common, out, err);
}

int handle_identity_check(std::size_t dim, std::size_t trials,
                          const CommonOpts& common, std::ostream& out,
                          std::ostream& err) {
  Doc doc;
  doc.command = "identity-check";
  doc.params["dim"] = static_cast<std::uint64_t>(dim);
  doc.params["trials"] = static_cast<std::uint64_t>(trials);
  doc.params["seed"] = common.seed;
  doc.params["tol"] = common.tol;
  doc.columns = {"trial", "dim", "max_residual", "max_abs_imag", "imag_flagged"};
  double worst = 0.0;
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const RandomKdInstance inst =
        random_kd_instance(dim, common.seed + trial, false);
    const IdentityCheckResult r = kd_identity_check(inst.psi, inst.op, inst.ps);
    worst = std::max(worst, r.max_residual);
    doc.rows.push_back({static_cast<long long>(trial),
                        static_cast<long long>(dim), r.max_residual,
                        r.max_abs_imag, as_int(r.imag_flagged)});
  }
  const bool pass = worst <= common.tol;
  doc.summary.emplace_back("trials", static_cast<long long>(trials));
  doc.summary.emplace_back("worst_residual", worst);
  doc.summary.emplace_back("tol", common.tol);
  doc.summary.emplace_back("pass", as_int(pass));
  const int rc = emit(doc, common, out, err);
  if (rc != 0) {
    return rc;
  }
  return pass ? 0 : 1;
}

void add_common(CLI::App* cmd, CommonOpts* common) {
  cmd->add_option("--out", common->out_path,
                  "Write output to this path instead of standard output");
  cmd->add_option("--format", common->format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->default_str("csv");
  cmd->add_option("--seed", common->seed,
                  "Seed for randomized commands (default 0)");
  cmd->add_option("--tol", common->tol,
                  "Report threshold (classification only, never physics)")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"postselected-metrology toolkit"};
  app.require_subcommand(1);
  CommonOpts common;

  // three-level -------------------------------------------------------------
  CLI::App* tl = app.add_subcommand(
      "three-level", "Single-point metrics of the three-level protocol");
  double tl_lambda = 0.0;
  double tl_lambda_tilde = 0.0;
  double tl_alpha = 0.0;
  std::optional<double> tl_x;
  std::optional<double> tl_phi;
  std::optional<double> tl_delta;
  bool tl_limits = false;
  tl->add_option("--lambda", tl_lambda, "Spectral scale lambda (> 0)")
      ->required()
      ->check(CLI::PositiveNumber);
  tl->add_option("--lambda-tilde", tl_lambda_tilde,
                 "Middle eigenvalue (default 0)");
  tl->add_option("--alpha", tl_alpha, "Postselection mixing angle (radians)")
      ->required();
  CLI::Option* tl_x_opt =
      tl->add_option("--x", tl_x, "Effective detuning x = phi - lambda*delta");
  CLI::Option* tl_phi_opt = tl->add_option("--phi", tl_phi, "Preparation phase");
  CLI::Option* tl_delta_opt =
      tl->add_option("--delta-theta", tl_delta, "Parameter offset from theta0");
  tl_x_opt->excludes(tl_phi_opt);
  tl_x_opt->excludes(tl_delta_opt);
  tl->add_flag("--limits", tl_limits, "Also report the x -> 0 limit triple");
  add_common(tl, &common);

  // three-level-sweep -------------------------------------------------------
  CLI::App* sw = app.add_subcommand("three-level-sweep",
                                    "Metrics over an (x, alpha) grid");
  double sw_lambda = 0.0;
  double sw_lambda_tilde = 0.0;
  double sw_theta0 = 0.0;
  double sw_delta = 0.0;
  double sw_x_min = -1.5;
  double sw_x_max = 1.5;
  std::size_t sw_x_steps = 61;
  double sw_alpha_min = 0.0;
  double sw_alpha_max = 1.5;
  std::size_t sw_alpha_steps = 31;
  sw->add_option("--lambda", sw_lambda, "Spectral scale lambda (> 0)")
      ->required()
      ->check(CLI::PositiveNumber);
  sw->add_option("--lambda-tilde", sw_lambda_tilde,
                 "Middle eigenvalue (default 0)");
  sw->add_option("--theta0", sw_theta0, "True-value anchor (default 0)");
  sw->add_option("--delta-theta", sw_delta, "Parameter offset (default 0)");
  sw->add_option("--x-min", sw_x_min, "Grid minimum for x");
  sw->add_option("--x-max", sw_x_max, "Grid maximum for x");
  sw->add_option("--x-steps", sw_x_steps, "Grid points along x")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  sw->add_option("--alpha-min", sw_alpha_min, "Grid minimum for alpha");
  sw->add_option("--alpha-max", sw_alpha_max, "Grid maximum for alpha");
  sw->add_option("--alpha-steps", sw_alpha_steps, "Grid points along alpha")
      ->check(CLI::Range(std::size_t{1}, std::size_t{100000}));
  add_common(sw, &common);

  // bound-check -------------------------------------------------------------
  CLI::App* bc = app.add_subcommand(
      "bound-check", "Monte-Carlo check of the efficiency bound");
  std::size_t bc_dim = 4;
  std::size_t bc_trials = 100;
  bc->add_option("--dim", bc_dim, "Hilbert-space dimension (2..8)")
      ->required()
      ->check(CLI::Range(std::size_t{2}, std::size_t{8}));
  bc->add_option("--trials", bc_trials, "Number of random instances (>= 1)")
      ->required()
      ->check(CLI::Range(std::size_t{1}, std::size_t{10000000}));
  add_common(bc, &common);

  // kd ----------------------------------------------------------------------
  CLI::App* kd = app.add_subcommand(
      "kd", "Quasiprobability, Wigner-formula, and modification tables");
  std::string kd_demo;
  bool kd_random = false;
  std::size_t kd_dim = 3;
  double kd_alpha = std::numbers::pi / 4.0;
  double kd_lambda = 1.0;
  CLI::Option* kd_demo_opt =
      kd->add_option("--demo", kd_demo, "Named instance")
          ->check(CLI::IsMember({"three-level", "commuting"}));
  CLI::Option* kd_random_opt =
      kd->add_flag("--random", kd_random, "Seeded random instance");
  kd_demo_opt->excludes(kd_random_opt);
  kd->add_option("--dim", kd_dim, "Dimension for random/commuting modes (2..8)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{8}));
  kd->add_option("--alpha", kd_alpha,
                 "Mixing angle for the three-level demo (radians)");
  kd->add_option("--lambda", kd_lambda, "Spectral scale for the demo (> 0)")
      ->check(CLI::PositiveNumber);
  add_common(kd, &common);

  // wva ---------------------------------------------------------------------
  CLI::App* wva = app.add_subcommand(
      "wva", "Weak-value amplification demos (entangled probe, spin-half)");
  bool wva_entangled = false;
  bool wva_spin_half = false;
  std::size_t wva_n = 2;
  double wva_lx = 1.0;
  double wva_ly = 0.0;
  std::size_t wva_sub_dim = 2;
  std::optional<double> wva_target;
  double wva_theta = 0.0;
  double wva_phi = 0.0;
  CLI::Option* wva_ent_opt =
      wva->add_flag("--entangled", wva_entangled, "Collective-probe demo");
  CLI::Option* wva_sh_opt =
      wva->add_flag("--spin-half", wva_spin_half, "Spin-half geometric demo");
  wva_ent_opt->excludes(wva_sh_opt);
  wva->add_option("--n", wva_n, "Number of subsystems")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}));
  wva->add_option("--lx", wva_lx, "Local eigenvalue lambda_x");
  wva->add_option("--ly", wva_ly, "Local eigenvalue lambda_y");
  wva->add_option("--sub-dim", wva_sub_dim, "Subsystem dimension (>= 2)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{4096}));
  wva->add_option("--target", wva_target,
                  "Weak-value target; reports the lambda_y values reaching it");
  wva->add_option("--theta", wva_theta, "Polar angle for spin-half (radians)");
  wva->add_option("--phi", wva_phi, "Azimuth for spin-half (radians)");
  add_common(wva, &common);

  // identity-check ----------------------------------------------------------
  CLI::App* ic = app.add_subcommand(
      "identity-check", "Random verification of Re(q) = Wigner + modification");
  std::size_t ic_dim = 4;
  std::size_t ic_trials = 10;
  ic->add_option("--dim", ic_dim, "Hilbert-space dimension (2..8)")
      ->check(CLI::Range(std::size_t{2}, std::size_t{8}));
  ic->add_option("--trials", ic_trials, "Number of random instances (>= 1)")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000000}));
  add_common(ic, &common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    err << "Run with --help for usage.\n";
    return 2;
  }

  try {
    if (tl->parsed()) {
      if (!tl_x.has_value() && !(tl_phi.has_value() && tl_delta.has_value())) {
        err << "error: provide --x, or both --phi and --delta-theta\n";
        return 2;
      }
      return handle_three_level(tl_lambda, tl_lambda_tilde, tl_alpha, tl_x,
                                tl_phi, tl_delta, tl_limits, common, out, err);
    }
    if (sw->parsed()) {
      return handle_three_level_sweep(sw_lambda, sw_lambda_tilde, sw_theta0,
                                      sw_delta, sw_x_min, sw_x_max, sw_x_steps,
                                      sw_alpha_min, sw_alpha_max,
                                      sw_alpha_steps, common, out, err);
    }
    if (bc->parsed()) {
      return handle_bound_check(bc_dim, bc_trials, common, out, err);
    }
    if (kd->parsed()) {
      if (kd_demo.empty() && !kd_random) {
        err << "error: provide --demo three-level|commuting or --random\n";
        return 2;
      }
      return handle_kd(kd_demo, kd_random, kd_dim, kd_alpha, kd_lambda, common,
                       out, err);
    }
    if (wva->parsed()) {
      if (wva_entangled == wva_spin_half) {
        err << "error: provide exactly one of --entangled or --spin-half\n";
        return 2;
      }
      if (wva_entangled) {
        return handle_wva_entangled(wva_n, wva_lx, wva_ly, wva_sub_dim,
                                    wva_target, common, out, err);
      }
      return handle_wva_spin_half(wva_theta, wva_phi, common, out, err);
    }
    if (ic->parsed()) {
      return handle_identity_check(ic_dim, ic_trials, common, out, err);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  err << "error: no command selected\n";
  return 2;
}

}  // namespace psmet::cli
