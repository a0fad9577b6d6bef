#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace peierls {

/// Compressed-row storage of a real sparse matrix.
struct CsrMatrix {
  std::size_t rows = 0;
  std::vector<std::size_t> row_ptr{0};
  std::vector<std::uint32_t> cols;
  std::vector<double> values;

  std::size_t nonzeros() const { return values.size(); }
};

namespace kernels {

// Two implementations of every hot loop live side by side. `serial` is the
// plain reference used by tests and the benchmark; `parallel` is what the
// solver runs. Parallel reductions accumulate fixed-size chunks and combine
// the partials in chunk order, so results do not depend on the thread count.

inline constexpr std::size_t kReductionChunk = 4096;

namespace serial {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
/// y = A^T x via a scatter over the rows.
void spmv_transposed(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
/// Two passes of classical Gram-Schmidt of w against `count` rows of `basis`.
void orthogonalize(std::span<const double> basis, std::size_t count, std::span<double> w);
/// rho(n, n') = sum_r c(n, r) conj(c(n', r)), row-major n_sites x n_sites output.
void reduced_density(std::span<const std::complex<double>> psi, std::size_t n_sites,
                     std::span<std::complex<double>> rho);

}  // namespace serial

namespace parallel {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y);
double dot(std::span<const double> x, std::span<const double> y);
double norm(std::span<const double> x);
void axpy(double alpha, std::span<const double> x, std::span<double> y);
void scale(double alpha, std::span<double> x);
void orthogonalize(std::span<const double> basis, std::size_t count, std::span<double> w);
void reduced_density(std::span<const std::complex<double>> psi, std::size_t n_sites,
                     std::span<std::complex<double>> rho);

}  // namespace parallel

}  // namespace kernels
}  // namespace peierls
