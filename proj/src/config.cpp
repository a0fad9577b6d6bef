#include "peierls/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace peierls {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  const double d = std::stod(v, &used);
  if (used != v.size()) throw std::invalid_argument("config: bad number for " + key + ": " + v);
  return d;
}

void set(SweepConfig& cfg, const std::string& key, const std::string& value) {
  if (key == "sites") {
    cfg.n_sites = std::stoi(value);
  } else if (key == "phonons") {
    cfg.max_phonons = std::stoi(value);
  } else if (key == "ratios") {
    cfg.omega_ratios.clear();
    std::istringstream in(value);
    std::string item;
    while (std::getline(in, item, ',')) cfg.omega_ratios.push_back(to_double(key, trim(item)));
  } else if (key == "lambda_min") {
    cfg.lambda_min = to_double(key, value);
  } else if (key == "lambda_max") {
    cfg.lambda_max = to_double(key, value);
  } else if (key == "lambda_step") {
    cfg.lambda_step = to_double(key, value);
  } else if (key == "t_e") {
    cfg.t_e = to_double(key, value);
  } else if (key == "tol") {
    cfg.solver.lanczos_tol = to_double(key, value);
  } else if (key == "seed") {
    cfg.solver.seed = std::stoull(value);
  } else if (key == "max_iterations") {
    cfg.solver.max_iterations = std::stoi(value);
  } else if (key == "degeneracy_tol") {
    cfg.solver.degeneracy_tol = to_double(key, value);
  } else if (key == "solver") {
    if (value == "lanczos") cfg.solver.solver = SolverKind::lanczos;
    else if (value == "dense") cfg.solver.solver = SolverKind::dense;
    else throw std::invalid_argument("config: solver must be lanczos or dense");
  } else if (key == "output") {
    cfg.output = value;
  } else if (key == "format") {
    cfg.format = value;
  } else if (key == "workers") {
    cfg.workers = std::stoi(value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

}  // namespace

void apply_config(std::istream& in, SweepConfig& cfg) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    set(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
}

void apply_config_file(const std::string& path, SweepConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  apply_config(in, cfg);
}

}  // namespace peierls
