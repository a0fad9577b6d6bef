#include "peierls/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace peierls {

void ModelParams::validate() const {
  if (!(t_e > 0.0)) throw std::invalid_argument("t_e must be positive");
  if (!(omega_ph > 0.0)) throw std::invalid_argument("omega_ph must be positive");
  if (!(g >= 0.0)) throw std::invalid_argument("g must be non-negative");
  (void)dimension(n_sites, max_phonons);
}

double g_from_lambda(double lambda_eff, double t_e, double omega_ph) {
  if (!(lambda_eff >= 0.0)) throw std::invalid_argument("lambda_eff must be non-negative");
  if (!(t_e > 0.0) || !(omega_ph > 0.0)) throw std::invalid_argument("t_e and omega_ph must be positive");
  return std::sqrt(lambda_eff * t_e / (2.0 * omega_ph));
}

ModelParams params_from_lambda(double lambda_eff, double omega_ratio, int n_sites, int max_phonons,
                               double t_e) {
  ModelParams p;
  p.t_e = t_e;
  p.omega_ph = omega_ratio * t_e;
  p.g = g_from_lambda(lambda_eff, p.t_e, p.omega_ph);
  p.n_sites = n_sites;
  p.max_phonons = max_phonons;
  p.validate();
  return p;
}

std::complex<double> vertex(double k, double q, double g, double omega_ph) {
  return {0.0, 2.0 * g * omega_ph * (std::sin(k) - std::sin(k + q))};
}

double lambda_from_bz_average(double g, double t_e, double omega_ph, int n_sites) {
  const auto grid = allowed_momenta(n_sites);
  double sum = 0.0;
  for (double k : grid)
    for (double q : grid) sum += std::norm(vertex(k, q, g, omega_ph));
  const double average = sum / static_cast<double>(grid.size() * grid.size());
  return average / (2.0 * t_e * omega_ph);
}

double SparseHamiltonian::entry(std::size_t row, std::size_t col) const {
  const auto first = csr_.cols.begin() + static_cast<std::ptrdiff_t>(csr_.row_ptr[row]);
  const auto last = csr_.cols.begin() + static_cast<std::ptrdiff_t>(csr_.row_ptr[row + 1]);
  const auto it = std::lower_bound(first, last, static_cast<std::uint32_t>(col));
  if (it == last || *it != col) return 0.0;
  return csr_.values[static_cast<std::size_t>(it - csr_.cols.begin())];
}

void SparseHamiltonian::write_coordinate(std::ostream& os) const {
  const auto old_precision = os.precision(17);
  for (std::size_t i = 0; i < csr_.rows; ++i)
    for (std::size_t p = csr_.row_ptr[i]; p < csr_.row_ptr[i + 1]; ++p)
      os << i << ' ' << csr_.cols[p] << ' ' << csr_.values[p] << '\n';
  os.precision(old_precision);
}

SparseHamiltonian build_hamiltonian(const ModelParams& params, const HilbertSpace& space) {
  params.validate();
  if (params.n_sites != space.n_sites() || params.max_phonons != space.max_phonons())
    throw std::invalid_argument("ModelParams (N=" + std::to_string(params.n_sites) +
                                ", M=" + std::to_string(params.max_phonons) +
                                ") do not match the Hilbert space (N=" + std::to_string(space.n_sites()) +
                                ", M=" + std::to_string(space.max_phonons()) + ")");
  const std::size_t dim = space.size();
  if (dim > std::numeric_limits<std::uint32_t>::max())
    throw std::overflow_error("Hamiltonian dimension exceeds 32-bit column indices");

  const int n_sites = space.n_sites();
  const int max_m = space.max_phonons();
  const double coupling = params.g * params.omega_ph;

  struct Triplet {
    std::size_t row;
    std::uint32_t col;
    double value;
  };
  std::vector<Triplet> triplets;
  triplets.reserve(dim * 11);

  std::vector<int> m(n_sites);
  for (std::size_t s = 0; s < dim; ++s) {
    const int site = space.site_of(s);
    const std::size_t r = space.phonon_index_of(s);
    const auto occ = space.phonons(r);
    const int total = space.total_phonons(r);
    triplets.push_back({s, static_cast<std::uint32_t>(s), params.omega_ph * total});

    // c^dag_{j+1} c_j (-t + g w (b^dag_{j+1} + b_{j+1} - b^dag_j - b_j)); the
    // Hermitian-conjugate bond term is the transpose, added by mirroring.
    const int from = site;
    const int to = (site + 1) % n_sites;
    auto emit = [&](std::size_t target, double value) {
      triplets.push_back({target, static_cast<std::uint32_t>(s), value});
      triplets.push_back({s, static_cast<std::uint32_t>(target), value});
    };
    std::copy(occ.begin(), occ.end(), m.begin());
    emit(space.index_of(to, m), -params.t_e);
    if (coupling == 0.0) continue;

    for (const auto& [j, sign] : {std::pair{to, 1.0}, std::pair{from, -1.0}}) {
      if (total < max_m) {
        ++m[j];
        emit(space.index_of(to, m), sign * coupling * std::sqrt(static_cast<double>(m[j])));
        --m[j];
      }
      if (m[j] > 0) {
        const double amp = sign * coupling * std::sqrt(static_cast<double>(m[j]));
        --m[j];
        emit(space.index_of(to, m), amp);
        ++m[j];
      }
    }
  }

  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });

  CsrMatrix csr;
  csr.rows = dim;
  csr.row_ptr.assign(dim + 1, 0);
  csr.cols.reserve(triplets.size());
  csr.values.reserve(triplets.size());
  for (std::size_t p = 0; p < triplets.size();) {
    const auto [row, col, first] = triplets[p];
    double value = first;
    std::size_t q = p + 1;
    for (; q < triplets.size() && triplets[q].row == row && triplets[q].col == col; ++q) value += triplets[q].value;
    // Cancelling bond terms (N = 2 ring) leave exact zeros; the diagonal is always kept.
    if (value != 0.0 || row == col) {
      csr.cols.push_back(col);
      csr.values.push_back(value);
      ++csr.row_ptr[row + 1];
    }
    p = q;
  }
  for (std::size_t i = 0; i < dim; ++i) csr.row_ptr[i + 1] += csr.row_ptr[i];
  return SparseHamiltonian(std::move(csr));
}

}  // namespace peierls
