#pragma once

#include <string>
#include <vector>

#include "peierls/sweep.hpp"

namespace peierls {

struct CheckResult {
  std::string name;
  bool passed = false;
  double measured = 0.0;
  double threshold = 0.0;
  std::string detail;
};

/// Largest deviations between two pipeline rows for the same point.
struct RowComparison {
  double energy = 0.0;   ///< lowest eigenvalues
  double xi = 0.0;       ///< finite entries only; +inf if flag patterns differ
  double entropy = 0.0;
};
RowComparison compare_rows(const SweepRow& a, const SweepRow& b);

/// Lanczos pipeline against the dense-diagonalization pipeline for one point.
RowComparison oracle_comparison(const ModelParams& params, const SolverOptions& options = {});

/// Small-size invariant and oracle suites behind the `validate` subcommand.
std::vector<CheckResult> run_validation(std::uint64_t seed = 12345);

}  // namespace peierls
