#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>

#include "peierls/basis.hpp"
#include "peierls/kernels.hpp"

namespace peierls {

struct ModelParams {
  double t_e = 1.0;       ///< hopping amplitude, sets the energy unit
  double omega_ph = 1.0;  ///< Einstein phonon frequency
  double g = 0.0;         ///< dimensionless Peierls coupling
  int n_sites = 6;
  int max_phonons = 8;

  double lambda_eff() const { return 2.0 * g * g * omega_ph / t_e; }
  void validate() const;
};

/// g = sqrt(lambda * t_e / (2 omega_ph)).
double g_from_lambda(double lambda_eff, double t_e, double omega_ph);

/// Params for a given effective coupling and adiabaticity ratio omega_ph / t_e.
ModelParams params_from_lambda(double lambda_eff, double omega_ratio, int n_sites, int max_phonons,
                               double t_e = 1.0);

/// Peierls vertex 2 i g omega [sin k - sin(k + q)].
std::complex<double> vertex(double k, double q, double g, double omega_ph);

/// <|vertex|^2> over the discrete N x N momentum grid divided by 2 t_e omega_ph.
double lambda_from_bz_average(double g, double t_e, double omega_ph, int n_sites);

/// Real symmetric Hamiltonian in the enumerated basis, stored as full CSR.
class SparseHamiltonian {
 public:
  explicit SparseHamiltonian(CsrMatrix csr) : csr_(std::move(csr)) {}

  std::size_t dimension() const { return csr_.rows; }
  const CsrMatrix& csr() const { return csr_; }

  /// y = H x, row-parallel.
  void apply(std::span<const double> x, std::span<double> y) const { kernels::parallel::spmv(csr_, x, y); }
  void apply_serial(std::span<const double> x, std::span<double> y) const { kernels::serial::spmv(csr_, x, y); }
  void apply_transposed(std::span<const double> x, std::span<double> y) const {
    kernels::serial::spmv_transposed(csr_, x, y);
  }

  double entry(std::size_t row, std::size_t col) const;

  /// One "row col value" line per stored entry, 0-based indices.
  void write_coordinate(std::ostream& os) const;

 private:
  CsrMatrix csr_;
};

/// Hopping, free-phonon and Peierls terms on a periodic ring. Raising operators
/// that would leave the sum(m) <= M space are dropped.
SparseHamiltonian build_hamiltonian(const ModelParams& params, const HilbertSpace& space);

}  // namespace peierls
