#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "peierls/model.hpp"

namespace peierls {

struct EigenResult {
  std::vector<double> eigenvalues;                ///< ascending
  std::vector<std::vector<double>> eigenvectors;  ///< orthonormal, length D each
  std::vector<double> residual_norms;             ///< ||H v - E v||, recomputed after convergence
  int iterations = 0;                             ///< total Krylov steps over all deflation passes
  std::uint64_t seed = 0;
};

struct LanczosOptions {
  double tol = 1e-10;  ///< residual bound, relative to max(1, |E|)
  std::uint64_t seed = 12345;
  int max_iterations = 500;  ///< Krylov dimension cap per eigenpair
  int check_every = 5;
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double best_residual)
      : std::runtime_error(what), best_residual_(best_residual) {}
  double best_residual() const { return best_residual_; }

 private:
  double best_residual_;
};

/// k lowest eigenpairs by Lanczos with full reorthogonalization.
///
/// Eigenpairs are found one at a time; each pass keeps its Krylov basis
/// orthogonal to the pairs already locked, so exactly degenerate levels are
/// resolved (a single Krylov sequence only ever sees one vector per
/// eigenspace). Deterministic for a given seed and independent of thread count.
EigenResult lanczos_lowest(const SparseHamiltonian& h, int k, const LanczosOptions& options = {});

/// Full spectrum by dense symmetric diagonalization, D <= kDenseOracleLimit.
EigenResult dense_oracle(const SparseHamiltonian& h);
inline constexpr std::size_t kDenseOracleLimit = 2000;

struct GroundStateSolution {
  double energy = 0.0;
  std::vector<std::vector<double>> coefficients;  ///< one vector, or two when degenerate
  bool degenerate = false;
  double gap_to_next = 0.0;
};

/// Raised when three or more levels cluster at the bottom of the spectrum.
class DegeneracyAnomaly : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultDegeneracyTol = 1e-8;

/// Twofold ground-state degeneracy test: |E1 - E0| <= tol * max(1, |E0|) and
/// |E2 - E0| above it. Results with fewer than three pairs (D < 3) are judged
/// on the pairs available.
GroundStateSolution detect_degeneracy(const EigenResult& result, double rel_tol = kDefaultDegeneracyTol);

}  // namespace peierls
