#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "peierls/eigensolve.hpp"
#include "peierls/entanglement.hpp"
#include "peierls/model.hpp"

namespace peierls {

enum class SolverKind { lanczos, dense };

struct SolverOptions {
  SolverKind solver = SolverKind::lanczos;
  double lanczos_tol = 1e-10;
  int max_iterations = 500;
  std::uint64_t seed = 12345;
  int eigenpairs = 3;
  double degeneracy_tol = kDefaultDegeneracyTol;
  double xi_cluster_tol = kXiClusterTol;
  int symmetry_trials = 1;
};

/// Tolerances every row is held to before it is written.
struct RowTolerances {
  double route = 1e-8;
  double weight_sum = 1e-10;
  double entropy_sum = 1e-10;
  double commutator = 1e-8;
  double hamiltonian_translation = 1e-12;
  double state_translation = 1e-8;
  double partner = 1e-8;
  double bz_identity = 1e-12;
};

struct PointDiagnostics {
  double route_distance = 0.0;        ///< density route vs SVD route, max |dxi|
  double weight_sum_error = 0.0;      ///< |sum e^{-xi} - 1|
  double entropy_sum_error = 0.0;     ///< |S_gs - (-sum p ln p)|
  double commutator = 0.0;            ///< ||[rho_e, K_e]||_F
  double hamiltonian_translation = 0.0;  ///< ||(HT - TH) v|| / ||v||
  double state_translation = 0.0;     ///< ||T psi - e^{-iK} psi||
  double partner_distance = 0.0;      ///< xi spectra of the +K and -K members (0 if nondegenerate)
  double bz_defect = 0.0;             ///< |BZ-average lambda - 2 g^2 omega / t|, NaN for N = 2
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

struct SweepRow {
  double lambda_eff = 0.0;
  double omega_ratio = 0.0;
  int n_sites = 0;
  int max_phonons = 0;
  double ground_energy = 0.0;
  double k_gs = 0.0;  ///< units of pi, +K member
  bool degenerate = false;
  double entropy = 0.0;
  std::vector<double> xis;
  std::vector<double> k_labels;  ///< units of pi
  std::vector<double> contributions;
  std::vector<double> phonon_distribution;
  std::uint64_t seed = 0;
  double residual = 0.0;

  // Not part of the fixed row schema; kept for checks and trailing columns.
  double gap = 0.0;
  std::vector<double> energies;
  PointDiagnostics diagnostics;
};

/// build -> solve -> degeneracy -> momentum resolution (+K member) -> rho_e ->
/// spectrum (both routes) -> labels -> row. Invariant violations land in
/// row.diagnostics.failures; solver failures propagate as exceptions.
SweepRow run_point(const ModelParams& params, const SolverOptions& options = {},
                   const RowTolerances& tolerances = {});

struct SweepConfig {
  int n_sites = 6;
  int max_phonons = 8;
  std::vector<double> omega_ratios{0.5, 1.0, 3.0};
  double lambda_min = 0.0;
  double lambda_max = 4.0;
  double lambda_step = 0.05;
  double t_e = 1.0;
  SolverOptions solver;
  std::string output;
  std::string format = "csv";
  int workers = 0;  ///< 0: OpenMP default, capped by PEIERLS_MAX_WORKERS

  void validate() const;
};

/// lambda_min + i * step for i = 0 .. round((max - min) / step).
std::vector<double> lambda_grid(double lambda_min, double lambda_max, double step);

/// Worker count after applying the PEIERLS_MAX_WORKERS cap.
int resolve_workers(int requested);

/// All (ratio, lambda) points, ordered by ratio then lambda whatever the
/// completion order. Points run concurrently on a bounded worker pool.
std::vector<SweepRow> run_sweep(const SweepConfig& config);

struct ConvergenceStep {
  int max_phonons = 0;
  std::size_t dimension = 0;
  double ground_energy = 0.0;
  std::vector<double> phonon_distribution;
  double energy_change = 0.0;        ///< relative change from the previous M
  double distribution_change = 0.0;  ///< max |dP(m)| from the previous M
};

struct ConvergenceReport {
  int n_sites = 0;
  int accepted_max_phonons = -1;
  bool converged = false;
  std::string reason;
  std::vector<ConvergenceStep> trace;
};

struct ConvergeOptions {
  double rel_tol = 1e-4;
  int start_max_phonons = 0;
  int limit_max_phonons = 16;
  std::size_t dimension_cap = 500000;
};

/// Raise M until one more phonon changes E0 (relatively) and every P(m)
/// (absolutely) by at most rel_tol; the smaller M is accepted.
ConvergenceReport converge(const ModelParams& base, const ConvergeOptions& options = {},
                           const SolverOptions& solver = {});

struct Transition {
  double lambda_before = 0.0;
  double lambda_after = 0.0;
  double k_before = 0.0;  ///< units of pi
  double k_after = 0.0;
  bool degenerate_before = false;
  bool degenerate_after = false;

  double midpoint() const { return 0.5 * (lambda_before + lambda_after); }
};

struct CriticalReport {
  double omega_ratio = 0.0;
  std::optional<double> lambda_c;  ///< empty when no transition lies in range
  double uncertainty = 0.0;
  std::vector<Transition> transitions;
};

/// Rows at one ratio sorted by lambda. lambda_c is the midpoint of the first
/// interval where the ground state leaves the nondegenerate K = 0 sector.
CriticalReport detect_critical(const std::vector<SweepRow>& rows);

/// Groups rows by ratio and runs detect_critical on each group.
std::vector<CriticalReport> detect_critical_by_ratio(const std::vector<SweepRow>& rows);

}  // namespace peierls
