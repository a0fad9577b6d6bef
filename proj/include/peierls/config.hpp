#pragma once

#include <istream>
#include <string>

#include "peierls/sweep.hpp"

namespace peierls {

/// Reads `key = value` lines ('#' starts a comment) into cfg. Recognized keys:
/// sites, phonons, ratios (comma separated), lambda_min, lambda_max,
/// lambda_step, t_e, tol, seed, max_iterations, degeneracy_tol, solver
/// (lanczos|dense), output, format, workers. Unknown keys are an error.
void apply_config(std::istream& in, SweepConfig& cfg);
void apply_config_file(const std::string& path, SweepConfig& cfg);

}  // namespace peierls
