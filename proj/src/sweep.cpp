#include "peierls/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "peierls/symmetry.hpp"

namespace peierls {

namespace {

void check(PointDiagnostics& d, bool ok, const char* name) {
  if (!ok) d.failures.emplace_back(name);
}

}  // namespace

SweepRow run_point(const ModelParams& params, const SolverOptions& options, const RowTolerances& tol) {
  params.validate();
  const HilbertSpace space(params.n_sites, params.max_phonons);
  const SparseHamiltonian h = build_hamiltonian(params, space);
  const int pairs = static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(options.eigenpairs), space.size()));

  EigenResult eig;
  if (options.solver == SolverKind::dense) {
    eig = dense_oracle(h);
    eig.eigenvalues.resize(pairs);
    eig.eigenvectors.resize(pairs);
    eig.residual_norms.resize(pairs);
    eig.seed = options.seed;
  } else {
    LanczosOptions lo;
    lo.tol = options.lanczos_tol;
    lo.seed = options.seed;
    lo.max_iterations = options.max_iterations;
    eig = lanczos_lowest(h, pairs, lo);
  }
  const GroundStateSolution gs = detect_degeneracy(eig, options.degeneracy_tol);
  const auto states = resolve_momentum(gs, space);
  const MomentumResolvedState& rep = states.front();

  SweepRow row;
  row.lambda_eff = params.lambda_eff();
  row.omega_ratio = params.omega_ph / params.t_e;
  row.n_sites = params.n_sites;
  row.max_phonons = params.max_phonons;
  row.ground_energy = gs.energy;
  row.k_gs = rep.total_k / std::numbers::pi;
  row.degenerate = gs.degenerate;
  row.seed = options.seed;
  row.residual = *std::max_element(eig.residual_norms.begin(), eig.residual_norms.end());
  row.gap = gs.gap_to_next;
  row.energies = eig.eigenvalues;

  PointDiagnostics& d = row.diagnostics;
  const Eigen::MatrixXcd rho = reduced_density_matrix(rep.coefficients, space);
  try {
    check_density_matrix(rho);
  } catch (const std::exception&) {
    d.failures.emplace_back("density_matrix");
  }
  const Eigen::MatrixXcd kmat = excitation_momentum_matrix(params.n_sites);
  d.commutator = commutator_norm(rho, kmat);
  check(d, d.commutator <= tol.commutator, "commutator");

  const EntanglementSpectrum by_density = spectrum_via_density(rho);
  const EntanglementSpectrum by_svd = spectrum_via_svd(entanglement_matrix(rep.coefficients, space));
  d.route_distance = spectrum_distance(by_density, by_svd);
  check(d, d.route_distance <= tol.route, "route_agreement");

  EntanglementSpectrum labeled;
  if (d.commutator <= kCommutatorTol) {
    labeled = label_momenta(rho, kmat, options.xi_cluster_tol);
  } else {
    labeled = by_density;
    labeled.momentum_labels.assign(labeled.size(), std::nan(""));
  }
  row.xis = labeled.xis;
  row.k_labels = labeled.momentum_labels;
  row.contributions = labeled.contributions;
  row.entropy = labeled.entropy;

  double weight_sum = 0.0;
  double shannon = 0.0;
  for (double p : labeled.weights) {
    weight_sum += p;
    if (p > 0.0) shannon -= p * std::log(p);
  }
  d.weight_sum_error = std::abs(weight_sum - 1.0);
  d.entropy_sum_error = std::abs(row.entropy - shannon);
  check(d, d.weight_sum_error <= tol.weight_sum, "weight_sum");
  check(d, d.entropy_sum_error <= tol.entropy_sum, "entropy_sum");
  check(d, row.entropy >= -1e-12 && row.entropy <= std::log(params.n_sites) + 1e-12, "entropy_bounds");

  const Translation t(space);
  d.hamiltonian_translation = verify_symmetry(h, space, options.symmetry_trials, options.seed);
  check(d, d.hamiltonian_translation <= tol.hamiltonian_translation, "hamiltonian_translation");
  d.state_translation = translation_defect(rep.coefficients, rep.translation_eigenvalue, t);
  check(d, d.state_translation <= tol.state_translation, "state_translation");

  if (states.size() == 2) {
    const EntanglementSpectrum partner = spectrum_via_density(reduced_density_matrix(states[1].coefficients, space));
    d.partner_distance = spectrum_distance(by_density, partner);
    check(d, d.partner_distance <= tol.partner, "partner_spectrum");
  }

  // On the two-point grid {0, pi} every sin k vanishes, so the identity only holds for N >= 4.
  if (params.n_sites >= 4) {
    d.bz_defect = std::abs(lambda_from_bz_average(params.g, params.t_e, params.omega_ph, params.n_sites) -
                           2.0 * params.g * params.g * params.omega_ph / params.t_e);
    check(d, d.bz_defect <= tol.bz_identity, "bz_identity");
  } else {
    d.bz_defect = std::nan("");
  }

  row.phonon_distribution = phonon_distribution(rep.coefficients, space);
  return row;
}

void SweepConfig::validate() const {
  (void)dimension(n_sites, max_phonons);
  if (omega_ratios.empty()) throw std::invalid_argument("at least one adiabaticity ratio is required");
  for (double r : omega_ratios)
    if (!(r > 0.0)) throw std::invalid_argument("adiabaticity ratios must be positive");
  if (!(lambda_step > 0.0)) throw std::invalid_argument("lambda step must be positive");
  if (!(lambda_min >= 0.0) || lambda_max < lambda_min) throw std::invalid_argument("invalid lambda range");
  if (!(t_e > 0.0)) throw std::invalid_argument("t_e must be positive");
  if (format != "csv" && format != "json") throw std::invalid_argument("format must be csv or json");
}

std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step) {
  if (!(step > 0.0) || lambda_max < lambda_min) throw std::invalid_argument("invalid lambda grid");
  const auto count = static_cast<std::size_t>(std::llround((lambda_max - lambda_min) / step)) + 1;
  std::vector<double> grid(count);
  for (std::size_t i = 0; i < count; ++i) grid[i] = lambda_min + static_cast<double>(i) * step;
  return grid;
}

int resolve_workers(int requested) {
  int workers = requested > 0 ? requested : omp_get_max_threads();
  if (const char* cap = std::getenv("PEIERLS_MAX_WORKERS")) {
    const int limit = std::atoi(cap);
    if (limit > 0) workers = std::min(workers, limit);
  }
  return std::max(workers, 1);
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
  config.validate();
  const auto grid = lambda_grid(config.lambda_min, config.lambda_max, config.lambda_step);
  struct Task {
    double ratio;
    double lambda;
  };
  std::vector<Task> tasks;
  for (double ratio : config.omega_ratios)
    for (double lambda : grid) tasks.push_back({ratio, lambda});

  std::vector<SweepRow> rows(tasks.size());
  std::vector<std::exception_ptr> errors(tasks.size());
  const int workers = resolve_workers(config.workers);
  const auto n_tasks = static_cast<std::ptrdiff_t>(tasks.size());
#pragma omp parallel for schedule(dynamic) num_threads(workers)
  for (std::ptrdiff_t i = 0; i < n_tasks; ++i) {
    try {
      const ModelParams p =
          params_from_lambda(tasks[i].lambda, tasks[i].ratio, config.n_sites, config.max_phonons, config.t_e);
      rows[i] = run_point(p, config.solver);
      // Report the grid value itself rather than 2 g^2 w / t recomputed from g.
      rows[i].lambda_eff = tasks[i].lambda;
      rows[i].omega_ratio = tasks[i].ratio;
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return rows;
}

ConvergenceReport converge(const ModelParams& base, const ConvergeOptions& options, const SolverOptions& solver) {
  if (!(options.rel_tol > 0.0)) throw std::invalid_argument("converge: rel_tol must be positive");
  ConvergenceReport report;
  report.n_sites = base.n_sites;
  for (int m = options.start_max_phonons; m <= options.limit_max_phonons; ++m) {
    const std::size_t dim = dimension(base.n_sites, m);
    if (dim > options.dimension_cap) {
      report.reason = "dimension " + std::to_string(dim) + " at M=" + std::to_string(m) + " exceeds the cap " +
                      std::to_string(options.dimension_cap);
      return report;
    }
    ModelParams p = base;
    p.max_phonons = m;
    const SweepRow row = run_point(p, solver);

    ConvergenceStep step;
    step.max_phonons = m;
    step.dimension = dim;
    step.ground_energy = row.ground_energy;
    step.phonon_distribution = row.phonon_distribution;
    if (!report.trace.empty()) {
      const ConvergenceStep& prev = report.trace.back();
      step.energy_change = std::abs(step.ground_energy - prev.ground_energy) /
                           std::max(std::abs(step.ground_energy), std::numeric_limits<double>::min());
      for (std::size_t k = 0; k < step.phonon_distribution.size(); ++k) {
        const double before = k < prev.phonon_distribution.size() ? prev.phonon_distribution[k] : 0.0;
        step.distribution_change = std::max(step.distribution_change, std::abs(step.phonon_distribution[k] - before));
      }
    }
    report.trace.push_back(std::move(step));
    if (report.trace.size() >= 2 && report.trace.back().energy_change <= options.rel_tol &&
        report.trace.back().distribution_change <= options.rel_tol) {
      report.converged = true;
      report.accepted_max_phonons = m - 1;
      report.reason = "converged";
      return report;
    }
  }
  report.reason = "no convergence up to M=" + std::to_string(options.limit_max_phonons);
  return report;
}

CriticalReport detect_critical(const std::vector<SweepRow>& rows) {
  CriticalReport report;
  if (rows.empty()) return report;
  report.omega_ratio = rows.front().omega_ratio;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].omega_ratio != report.omega_ratio)
      throw std::invalid_argument("detect_critical: rows mix adiabaticity ratios");
    if (!(rows[i].lambda_eff > rows[i - 1].lambda_eff))
      throw std::invalid_argument("detect_critical: rows must be sorted by strictly increasing lambda");
  }
  constexpr double k_tol = 1e-6;
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const SweepRow& a = rows[i - 1];
    const SweepRow& b = rows[i];
    if (std::abs(a.k_gs - b.k_gs) <= k_tol && a.degenerate == b.degenerate) continue;
    report.transitions.push_back({a.lambda_eff, b.lambda_eff, a.k_gs, b.k_gs, a.degenerate, b.degenerate});
    const bool leaves_zero = std::abs(a.k_gs) <= k_tol && !a.degenerate;
    if (!report.lambda_c && leaves_zero) {
      report.lambda_c = report.transitions.back().midpoint();
      report.uncertainty = 0.5 * (b.lambda_eff - a.lambda_eff);
    }
  }
  return report;
}

std::vector<CriticalReport> detect_critical_by_ratio(const std::vector<SweepRow>& rows) {
  std::map<double, std::vector<SweepRow>> groups;
  for (const auto& r : rows) groups[r.omega_ratio].push_back(r);
  std::vector<CriticalReport> out;
  for (auto& [ratio, group] : groups) {
    std::sort(group.begin(), group.end(), [](const auto& a, const auto& b) { return a.lambda_eff < b.lambda_eff; });
    out.push_back(detect_critical(group));
  }
  return out;
}

}  // namespace peierls
