#include "peierls/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace peierls {

namespace {

std::string fmt(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string status_of(const SweepRow& r) {
  if (r.diagnostics.ok()) return "ok";
  std::string s;
  for (const auto& f : r.diagnostics.failures) s += (s.empty() ? "" : ";") + f;
  return s;
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0') throw std::runtime_error("malformed number in CSV: '" + s + "'");
  return v;
}

}  // namespace

std::vector<std::string> csv_columns(int n_sites, int max_phonons) {
  std::vector<std::string> cols{"lambda_eff", "omega_ratio", "N", "M", "ground_energy", "K_gs", "degenerate", "S_gs"};
  for (int a = 1; a <= n_sites; ++a) cols.push_back("xi_" + std::to_string(a));
  for (int a = 1; a <= n_sites; ++a) cols.push_back("K_e_" + std::to_string(a));
  for (int a = 1; a <= n_sites; ++a) cols.push_back("S_" + std::to_string(a));
  for (int m = 0; m <= max_phonons; ++m) cols.push_back("P_" + std::to_string(m));
  for (const char* c : {"seed", "residual", "gap", "route_distance", "weight_sum_error", "entropy_sum_error",
                        "commutator", "hamiltonian_translation", "state_translation", "partner_distance",
                        "bz_defect", "status"})
    cols.emplace_back(c);
  return cols;
}

void write_csv(const std::vector<SweepRow>& rows, std::ostream& os, int n_sites, int max_phonons) {
  if (!rows.empty()) {
    n_sites = rows.front().n_sites;
    max_phonons = rows.front().max_phonons;
  }
  const auto cols = csv_columns(n_sites, max_phonons);
  for (std::size_t i = 0; i < cols.size(); ++i) os << (i ? "," : "") << cols[i];
  os << '\n';
  for (const auto& r : rows) {
    if (r.n_sites != n_sites || r.max_phonons != max_phonons)
      throw std::invalid_argument("write_csv: rows with different (N, M) cannot share one table");
    std::vector<std::string> f{fmt(r.lambda_eff), fmt(r.omega_ratio), std::to_string(r.n_sites),
                               std::to_string(r.max_phonons), fmt(r.ground_energy), fmt(r.k_gs),
                               r.degenerate ? "1" : "0", fmt(r.entropy)};
    for (double v : r.xis) f.push_back(fmt(v));
    for (double v : r.k_labels) f.push_back(fmt(v));
    for (double v : r.contributions) f.push_back(fmt(v));
    for (double v : r.phonon_distribution) f.push_back(fmt(v));
    const auto& d = r.diagnostics;
    f.push_back(std::to_string(r.seed));
    for (double v : {r.residual, r.gap, d.route_distance, d.weight_sum_error, d.entropy_sum_error, d.commutator,
                     d.hamiltonian_translation, d.state_translation, d.partner_distance, d.bz_defect})
      f.push_back(fmt(v));
    f.push_back(status_of(r));
    if (f.size() != cols.size()) throw std::logic_error("write_csv: row width does not match the header");
    for (std::size_t i = 0; i < f.size(); ++i) os << (i ? "," : "") << f[i];
    os << '\n';
  }
  if (!os) throw std::runtime_error("write_csv: output stream failed");
}

std::vector<SweepRow> read_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("read_csv: missing header");
  const auto header = split(line, ',');
  int n_sites = 0;
  int max_phonons = -1;
  for (const auto& h : header) {
    if (h.rfind("xi_", 0) == 0) ++n_sites;
    if (h.rfind("P_", 0) == 0) ++max_phonons;
  }
  if (header != csv_columns(n_sites, max_phonons)) throw std::runtime_error("read_csv: unexpected header");

  std::vector<SweepRow> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != header.size()) throw std::runtime_error("read_csv: row width does not match the header");
    std::size_t i = 0;
    SweepRow r;
    r.lambda_eff = parse_double(f[i++]);
    r.omega_ratio = parse_double(f[i++]);
    r.n_sites = std::stoi(f[i++]);
    r.max_phonons = std::stoi(f[i++]);
    r.ground_energy = parse_double(f[i++]);
    r.k_gs = parse_double(f[i++]);
    r.degenerate = f[i++] == "1";
    r.entropy = parse_double(f[i++]);
    for (int a = 0; a < n_sites; ++a) r.xis.push_back(parse_double(f[i++]));
    for (int a = 0; a < n_sites; ++a) r.k_labels.push_back(parse_double(f[i++]));
    for (int a = 0; a < n_sites; ++a) r.contributions.push_back(parse_double(f[i++]));
    for (int m = 0; m <= max_phonons; ++m) r.phonon_distribution.push_back(parse_double(f[i++]));
    r.seed = std::stoull(f[i++]);
    r.residual = parse_double(f[i++]);
    r.gap = parse_double(f[i++]);
    auto& d = r.diagnostics;
    for (double* v : {&d.route_distance, &d.weight_sum_error, &d.entropy_sum_error, &d.commutator,
                      &d.hamiltonian_translation, &d.state_translation, &d.partner_distance, &d.bz_defect})
      *v = parse_double(f[i++]);
    if (f[i] != "ok") d.failures = split(f[i], ';');
    rows.push_back(std::move(r));
  }
  return rows;
}

void write_json(const std::vector<SweepRow>& rows, std::ostream& os) {
  using nlohmann::ordered_json;
  auto num = [](double v) -> ordered_json { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); };
  ordered_json out = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json j;
    j["lambda_eff"] = r.lambda_eff;
    j["omega_ratio"] = r.omega_ratio;
    j["N"] = r.n_sites;
    j["M"] = r.max_phonons;
    j["ground_energy"] = r.ground_energy;
    j["K_gs"] = r.k_gs;
    j["degenerate"] = r.degenerate;
    j["S_gs"] = r.entropy;
    ordered_json xi = ordered_json::array();
    for (double v : r.xis) xi.push_back(num(v));
    j["xi"] = xi;
    ordered_json labels = ordered_json::array();
    for (double v : r.k_labels) labels.push_back(num(v));
    j["K_e"] = labels;
    j["S_alpha"] = r.contributions;
    j["P"] = r.phonon_distribution;
    j["seed"] = r.seed;
    j["residual"] = r.residual;
    j["gap"] = num(r.gap);
    const auto& d = r.diagnostics;
    j["diagnostics"] = {{"route_distance", num(d.route_distance)},
                        {"weight_sum_error", d.weight_sum_error},
                        {"entropy_sum_error", d.entropy_sum_error},
                        {"commutator", d.commutator},
                        {"hamiltonian_translation", d.hamiltonian_translation},
                        {"state_translation", d.state_translation},
                        {"partner_distance", num(d.partner_distance)},
                        {"bz_defect", num(d.bz_defect)},
                        {"failures", d.failures}};
    out.push_back(std::move(j));
  }
  os << out.dump(2) << '\n';
  if (!os) throw std::runtime_error("write_json: output stream failed");
}

void emit(const std::vector<SweepRow>& rows, const std::string& format, const std::string& path, int n_sites,
          int max_phonons) {
  std::ofstream file;
  std::ostream* os = &std::cout;
  if (!path.empty() && path != "-") {
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file " + path);
    os = &file;
  }
  if (format == "csv") {
    write_csv(rows, *os, n_sites, max_phonons);
  } else if (format == "json") {
    write_json(rows, *os);
  } else {
    throw std::invalid_argument("unknown output format " + format);
  }
  os->flush();
  if (!*os) throw std::runtime_error("failed writing output to " + (path.empty() ? std::string("stdout") : path));
}

}  // namespace peierls
