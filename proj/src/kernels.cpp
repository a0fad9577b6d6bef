#include "peierls/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace peierls::kernels {

namespace serial {

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < a.rows; ++i) {
    double acc = 0.0;
    for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) acc += a.values[p] * x[a.cols[p]];
    y[i] = acc;
  }
}

void spmv_transposed(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) y[a.cols[p]] += a.values[p] * x[i];
}

double dot(std::span<const double> x, std::span<const double> y) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) acc += x[i] * y[i];
  return acc;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  for (double& v : x) v *= alpha;
}

void orthogonalize(std::span<const double> basis, std::size_t count, std::span<double> w) {
  const std::size_t dim = w.size();
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t j = 0; j < count; ++j) {
      const auto v = basis.subspan(j * dim, dim);
      axpy(-dot(v, w), v, w);
    }
  }
}

void reduced_density(std::span<const std::complex<double>> psi, std::size_t n_sites,
                     std::span<std::complex<double>> rho) {
  const std::size_t dph = psi.size() / n_sites;
  for (std::size_t n = 0; n < n_sites; ++n) {
    for (std::size_t np = 0; np < n_sites; ++np) {
      std::complex<double> acc = 0.0;
      for (std::size_t r = 0; r < dph; ++r) acc += psi[n * dph + r] * std::conj(psi[np * dph + r]);
      rho[n * n_sites + np] = acc;
    }
  }
}

}  // namespace serial

namespace parallel {

namespace {

std::size_t chunk_count(std::size_t n) { return (n + kReductionChunk - 1) / kReductionChunk; }

}  // namespace

void spmv(const CsrMatrix& a, std::span<const double> x, std::span<double> y) {
  const auto rows = static_cast<std::ptrdiff_t>(a.rows);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < rows; ++i) {
    double acc = 0.0;
    for (std::size_t p = a.row_ptr[i]; p < a.row_ptr[i + 1]; ++p) acc += a.values[p] * x[a.cols[p]];
    y[i] = acc;
  }
}

double dot(std::span<const double> x, std::span<const double> y) {
  const std::size_t n = x.size();
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(n));
  std::vector<double> partial(chunks, 0.0);
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t c = 0; c < chunks; ++c) {
    const std::size_t lo = c * kReductionChunk;
    const std::size_t hi = std::min(n, lo + kReductionChunk);
    double acc = 0.0;
    for (std::size_t i = lo; i < hi; ++i) acc += x[i] * y[i];
    partial[c] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

double norm(std::span<const double> x) { return std::sqrt(dot(x, x)); }

void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scale(double alpha, std::span<double> x) {
  const auto n = static_cast<std::ptrdiff_t>(x.size());
#pragma omp parallel for schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) x[i] *= alpha;
}

void orthogonalize(std::span<const double> basis, std::size_t count, std::span<double> w) {
  if (count == 0) return;
  const std::size_t dim = w.size();
  const auto chunks = static_cast<std::ptrdiff_t>(chunk_count(dim));
  std::vector<double> partial(chunks * count);
  std::vector<double> coeff(count);
  for (int pass = 0; pass < 2; ++pass) {
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * kReductionChunk;
      const std::size_t hi = std::min(dim, lo + kReductionChunk);
      for (std::size_t j = 0; j < count; ++j) {
        const double* v = basis.data() + j * dim;
        double acc = 0.0;
        for (std::size_t i = lo; i < hi; ++i) acc += v[i] * w[i];
        partial[c * count + j] = acc;
      }
    }
    std::fill(coeff.begin(), coeff.end(), 0.0);
    for (std::ptrdiff_t c = 0; c < chunks; ++c)
      for (std::size_t j = 0; j < count; ++j) coeff[j] += partial[c * count + j];

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t c = 0; c < chunks; ++c) {
      const std::size_t lo = c * kReductionChunk;
      const std::size_t hi = std::min(dim, lo + kReductionChunk);
      for (std::size_t j = 0; j < count; ++j) {
        const double* v = basis.data() + j * dim;
        const double cj = coeff[j];
        for (std::size_t i = lo; i < hi; ++i) w[i] -= cj * v[i];
      }
    }
  }
}

void reduced_density(std::span<const std::complex<double>> psi, std::size_t n_sites,
                     std::span<std::complex<double>> rho) {
  const std::size_t dph = psi.size() / n_sites;
  const auto pairs = static_cast<std::ptrdiff_t>(n_sites * (n_sites + 1) / 2);
#pragma omp parallel for schedule(dynamic)
  for (std::ptrdiff_t p = 0; p < pairs; ++p) {
    // unpack upper-triangle pair index
    std::size_t n = 0;
    std::size_t rest = p;
    while (rest >= n_sites - n) {
      rest -= n_sites - n;
      ++n;
    }
    const std::size_t np = n + rest;
    std::complex<double> acc = 0.0;
    for (std::size_t r = 0; r < dph; ++r) acc += psi[n * dph + r] * std::conj(psi[np * dph + r]);
    rho[n * n_sites + np] = acc;
    rho[np * n_sites + n] = std::conj(acc);
  }
}

}  // namespace parallel

}  // namespace peierls::kernels
