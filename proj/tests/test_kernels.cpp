#include <complex>
#include <random>

#include <omp.h>

#include "doctest.h"
#include "peierls/model.hpp"

using namespace peierls;
namespace ser = kernels::serial;
namespace par = kernels::parallel;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(n);
  for (double& x : v) x = dist(rng);
  return v;
}

}  // namespace

TEST_CASE("parallel kernels match the serial reference") {
  const HilbertSpace space(6, 4);
  const SparseHamiltonian h = build_hamiltonian(params_from_lambda(2, 1, 6, 4), space);
  const std::size_t n = space.size();
  const auto x = random_vector(n, 1);
  const auto y = random_vector(n, 2);

  std::vector<double> a(n), b(n);
  ser::spmv(h.csr(), x, a);
  par::spmv(h.csr(), x, b);
  CHECK(a == b);  // row-parallel, same per-row order

  CHECK(par::dot(x, y) == doctest::Approx(ser::dot(x, y)).epsilon(1e-13));
  CHECK(par::norm(x) == doctest::Approx(ser::norm(x)).epsilon(1e-13));

  a = y;
  b = y;
  ser::axpy(0.3, x, a);
  par::axpy(0.3, x, b);
  CHECK(a == b);
  ser::scale(-1.7, a);
  par::scale(-1.7, b);
  CHECK(a == b);

  const std::size_t count = 7;
  std::vector<double> basis(count * n);
  for (std::size_t k = 0; k < count; ++k) {
    auto v = random_vector(n, 10 + k);
    std::span<double> row(basis.data() + k * n, n);
    std::copy(v.begin(), v.end(), row.begin());
    ser::orthogonalize(std::span<const double>(basis.data(), k * n), k, row);
    ser::scale(1.0 / ser::norm(row), row);
  }
  a = x;
  b = x;
  ser::orthogonalize(basis, count, a);
  par::orthogonalize(basis, count, b);
  for (std::size_t i = 0; i < n; ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-12));
  for (std::size_t k = 0; k < count; ++k)
    CHECK(std::abs(ser::dot(std::span<const double>(basis.data() + k * n, n), b)) < 1e-12);

  std::vector<std::complex<double>> psi(n);
  for (std::size_t i = 0; i < n; ++i) psi[i] = {x[i], y[i]};
  std::vector<std::complex<double>> r1(36), r2(36);
  ser::reduced_density(psi, 6, r1);
  par::reduced_density(psi, 6, r2);
  for (int i = 0; i < 36; ++i) CHECK(std::abs(r1[i] - r2[i]) < 1e-10 * std::abs(r1[0]));
}

TEST_CASE("parallel reductions do not depend on the thread count") {
  const auto x = random_vector(100003, 5);
  const auto y = random_vector(100003, 6);
  const int before = omp_get_max_threads();
  omp_set_num_threads(1);
  const double d1 = par::dot(x, y);
  omp_set_num_threads(3);
  const double d3 = par::dot(x, y);
  omp_set_num_threads(before);
  CHECK(d1 == d3);
}

TEST_CASE("transposed product") {
  CsrMatrix a;
  a.rows = 2;
  a.row_ptr = {0, 2, 3};
  a.cols = {0, 1, 1};
  a.values = {1.0, 2.0, 3.0};
  std::vector<double> x{1.0, 1.0}, y(2);
  ser::spmv(a, x, y);
  CHECK(y == std::vector<double>{3.0, 3.0});
  ser::spmv_transposed(a, x, y);
  CHECK(y == std::vector<double>{1.0, 5.0});
}
