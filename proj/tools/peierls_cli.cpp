#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "peierls/config.hpp"
#include "peierls/io.hpp"
#include "peierls/sweep.hpp"
#include "peierls/validate.hpp"

using namespace peierls;
using nlohmann::ordered_json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kInvariant = 2, kSolver = 3 };

// Command-line values; anything left unset falls back to the config file, then defaults.
struct Overrides {
  std::string config;
  std::optional<int> sites, phonons, max_iterations, workers;
  std::optional<std::vector<double>> ratios;
  std::optional<double> lambda_min, lambda_max, lambda_step, t_e, tol, degeneracy_tol;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> solver, output, format;
};

void add_common(CLI::App* app, Overrides& o) {
  app->add_option("--config", o.config, "key = value config file")->check(CLI::ExistingFile);
  app->add_option("--sites", o.sites, "number of lattice sites N (even)");
  app->add_option("--phonons", o.phonons, "phonon truncation M");
  app->add_option("--t", o.t_e, "hopping t_e");
  app->add_option("--tol", o.tol, "Lanczos residual tolerance");
  app->add_option("--seed", o.seed, "Lanczos start-vector seed");
  app->add_option("--max-iterations", o.max_iterations, "Krylov dimension cap per eigenpair");
  app->add_option("--degeneracy-tol", o.degeneracy_tol, "relative ground-level degeneracy tolerance");
  app->add_option("--solver", o.solver, "lanczos or dense")->check(CLI::IsMember({"lanczos", "dense"}));
  app->add_option("--format", o.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--output,-o", o.output, "output path, '-' for stdout");
}

void add_grid(CLI::App* app, Overrides& o) {
  app->add_option("--ratios", o.ratios, "adiabaticity ratios omega/t")->delimiter(',');
  app->add_option("--lambda-min", o.lambda_min);
  app->add_option("--lambda-max", o.lambda_max);
  app->add_option("--lambda-step", o.lambda_step);
  app->add_option("--workers", o.workers, "worker threads (capped by PEIERLS_MAX_WORKERS)");
}

SweepConfig resolve(const Overrides& o) {
  SweepConfig cfg;
  if (!o.config.empty()) apply_config_file(o.config, cfg);
  if (o.sites) cfg.n_sites = *o.sites;
  if (o.phonons) cfg.max_phonons = *o.phonons;
  if (o.ratios) cfg.omega_ratios = *o.ratios;
  if (o.lambda_min) cfg.lambda_min = *o.lambda_min;
  if (o.lambda_max) cfg.lambda_max = *o.lambda_max;
  if (o.lambda_step) cfg.lambda_step = *o.lambda_step;
  if (o.t_e) cfg.t_e = *o.t_e;
  if (o.tol) cfg.solver.lanczos_tol = *o.tol;
  if (o.seed) cfg.solver.seed = *o.seed;
  if (o.max_iterations) cfg.solver.max_iterations = *o.max_iterations;
  if (o.degeneracy_tol) cfg.solver.degeneracy_tol = *o.degeneracy_tol;
  if (o.solver) cfg.solver.solver = *o.solver == "dense" ? SolverKind::dense : SolverKind::lanczos;
  if (o.output) cfg.output = *o.output;
  if (o.format) cfg.format = *o.format;
  if (o.workers) cfg.workers = *o.workers;
  return cfg;
}

int fail(int code, const std::string& kind, const std::string& message, ordered_json extra = ordered_json::object()) {
  ordered_json j{{"error", kind}, {"message", message}};
  for (auto& [k, v] : extra.items()) j[k] = v;
  std::cerr << j.dump() << '\n';
  return code;
}

int invariant_status(const std::vector<SweepRow>& rows) {
  ordered_json bad = ordered_json::array();
  for (const auto& r : rows)
    if (!r.diagnostics.ok())
      bad.push_back({{"lambda_eff", r.lambda_eff}, {"omega_ratio", r.omega_ratio}, {"failures", r.diagnostics.failures}});
  if (bad.empty()) return kOk;
  return fail(kInvariant, "invariant_violation", std::to_string(bad.size()) + " row(s) failed row-level checks",
              {{"rows", bad}});
}

ordered_json critical_json(const std::vector<CriticalReport>& reports) {
  ordered_json out = ordered_json::array();
  for (const auto& r : reports) {
    ordered_json j;
    j["omega_ratio"] = r.omega_ratio;
    j["lambda_c"] = r.lambda_c ? ordered_json(*r.lambda_c) : ordered_json(nullptr);
    j["uncertainty"] = r.uncertainty;
    if (!r.lambda_c) j["note"] = "no transition in range";
    ordered_json ts = ordered_json::array();
    for (const auto& t : r.transitions)
      ts.push_back({{"lambda_before", t.lambda_before},
                    {"lambda_after", t.lambda_after},
                    {"K_before", t.k_before},
                    {"K_after", t.k_after},
                    {"degenerate_before", t.degenerate_before},
                    {"degenerate_after", t.degenerate_after}});
    j["transitions"] = ts;
    out.push_back(std::move(j));
  }
  return out;
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << text;
  if (!f) throw std::runtime_error("failed writing " + path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact diagonalization of a Peierls-coupled excitation on a phonon ring"};
  app.require_subcommand(1);

  Overrides o;
  double point_lambda = 1.0;
  double point_ratio = 1.0;
  std::string dump_path;
  auto* point = app.add_subcommand("point", "solve one (lambda_eff, omega/t) point");
  add_common(point, o);
  point->add_option("--lambda", point_lambda, "effective coupling lambda_eff")->check(CLI::NonNegativeNumber);
  point->add_option("--ratio", point_ratio, "adiabaticity ratio omega/t")->check(CLI::PositiveNumber);
  point->add_option("--dump-hamiltonian", dump_path, "write H as 'row col value' lines");

  auto* sweep = app.add_subcommand("sweep", "sweep lambda_eff for each ratio");
  add_common(sweep, o);
  add_grid(sweep, o);

  ConvergeOptions conv;
  double conv_lambda = 2.0;
  double conv_ratio = 1.0;
  auto* converge_cmd = app.add_subcommand("converge", "raise M until E0 and P(m) settle");
  add_common(converge_cmd, o);
  converge_cmd->add_option("--lambda", conv_lambda)->check(CLI::NonNegativeNumber);
  converge_cmd->add_option("--ratio", conv_ratio)->check(CLI::PositiveNumber);
  converge_cmd->add_option("--rel-tol", conv.rel_tol);
  converge_cmd->add_option("--start", conv.start_max_phonons);
  converge_cmd->add_option("--limit", conv.limit_max_phonons);
  converge_cmd->add_option("--dimension-cap", conv.dimension_cap);

  std::string critical_input;
  auto* critical = app.add_subcommand("critical", "locate the level crossing per ratio");
  add_common(critical, o);
  add_grid(critical, o);
  critical->add_option("--input", critical_input, "sweep CSV to analyse instead of running a sweep")
      ->check(CLI::ExistingFile);

  std::uint64_t validate_seed = 12345;
  auto* validate = app.add_subcommand("validate", "run the oracle and invariant suites");
  validate->add_option("--seed", validate_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return kUsage;
  }

  try {
    if (*point) {
      SweepConfig cfg = resolve(o);
      ModelParams p = params_from_lambda(point_lambda, point_ratio, cfg.n_sites, cfg.max_phonons, cfg.t_e);
      if (!dump_path.empty()) {
        const HilbertSpace space(p.n_sites, p.max_phonons);
        std::ostringstream s;
        build_hamiltonian(p, space).write_coordinate(s);
        write_text(dump_path, s.str());
      }
      SweepRow row = run_point(p, cfg.solver);
      row.lambda_eff = point_lambda;
      emit({row}, cfg.format, cfg.output, cfg.n_sites, cfg.max_phonons);
      return invariant_status({row});
    }
    if (*sweep) {
      const SweepConfig cfg = resolve(o);
      const auto rows = run_sweep(cfg);
      emit(rows, cfg.format, cfg.output, cfg.n_sites, cfg.max_phonons);
      return invariant_status(rows);
    }
    if (*converge_cmd) {
      const SweepConfig cfg = resolve(o);
      const ModelParams base = params_from_lambda(conv_lambda, conv_ratio, cfg.n_sites, 0, cfg.t_e);
      const ConvergenceReport r = converge(base, conv, cfg.solver);
      ordered_json j;
      j["lambda_eff"] = conv_lambda;
      j["omega_ratio"] = conv_ratio;
      j["N"] = r.n_sites;
      j["M"] = r.converged ? ordered_json(r.accepted_max_phonons) : ordered_json(nullptr);
      j["converged"] = r.converged;
      j["rel_tol"] = conv.rel_tol;
      j["reason"] = r.reason;
      ordered_json trace = ordered_json::array();
      for (const auto& s : r.trace)
        trace.push_back({{"M", s.max_phonons},
                         {"dimension", s.dimension},
                         {"ground_energy", s.ground_energy},
                         {"energy_change", s.energy_change},
                         {"distribution_change", s.distribution_change}});
      j["trace"] = trace;
      write_text(cfg.output, j.dump(2) + "\n");
      return r.converged ? kOk : fail(kSolver, "not_converged", r.reason);
    }
    if (*critical) {
      std::vector<SweepRow> rows;
      SweepConfig cfg = resolve(o);
      if (!critical_input.empty()) {
        std::ifstream in(critical_input);
        rows = read_csv(in);
      } else {
        rows = run_sweep(cfg);
      }
      write_text(cfg.output, critical_json(detect_critical_by_ratio(rows)).dump(2) + "\n");
      return kOk;
    }
    if (*validate) {
      const auto checks = run_validation(validate_seed);
      int failed = 0;
      for (const auto& c : checks) {
        std::printf("%s  %-62s measured %.3e  threshold %.1e%s%s\n", c.passed ? "PASS" : "FAIL", c.name.c_str(),
                    c.measured, c.threshold, c.detail.empty() ? "" : "  at ", c.detail.c_str());
        failed += c.passed ? 0 : 1;
      }
      std::printf("%d/%zu checks passed\n", static_cast<int>(checks.size()) - failed, checks.size());
      return failed ? fail(kInvariant, "validation_failed", std::to_string(failed) + " check(s) failed") : kOk;
    }
  } catch (const ConvergenceError& e) {
    return fail(kSolver, "convergence", e.what(), {{"best_residual", e.best_residual()}});
  } catch (const DegeneracyAnomaly& e) {
    return fail(kInvariant, "degeneracy_anomaly", e.what());
  } catch (const std::invalid_argument& e) {
    return fail(kUsage, "invalid_argument", e.what());
  } catch (const std::overflow_error& e) {
    return fail(kUsage, "overflow", e.what());
  } catch (const std::exception& e) {
    return fail(kInvariant, "runtime", e.what());
  }
  return kUsage;
}
