#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "peierls/sweep.hpp"

namespace peierls {

/// Column order of the CSV output. Per-alpha and per-m columns expand to
/// xi_1..xi_N, K_e_1..K_e_N, S_1..S_N and P_0..P_M; diagnostics trail the
/// fixed schema.
std::vector<std::string> csv_columns(int n_sites, int max_phonons);

/// Numbers with 12 significant digits, infinite xi as "inf". All rows must
/// share N and M. An empty row list writes the header for (n_sites, max_phonons).
void write_csv(const std::vector<SweepRow>& rows, std::ostream& os, int n_sites = 6, int max_phonons = 8);
std::vector<SweepRow> read_csv(std::istream& is);

/// Array of row objects; infinite xi serialized as null.
void write_json(const std::vector<SweepRow>& rows, std::ostream& os);

/// Writes rows to `path` in `format` ("csv" or "json"); "-" or "" means stdout.
void emit(const std::vector<SweepRow>& rows, const std::string& format, const std::string& path, int n_sites,
          int max_phonons);

}  // namespace peierls
