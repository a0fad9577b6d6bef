// Serial reference vs OpenMP kernels on the N=6, M=8 problem.
#include <benchmark/benchmark.h>

#include <complex>
#include <random>
#include <vector>

#include "peierls/model.hpp"

using namespace peierls;

namespace {

struct Fixture {
  Fixture() : space(6, 8), h(build_hamiltonian(params_from_lambda(2.0, 1.0, 6, 8), space)) {
    std::mt19937_64 rng(1);
    std::normal_distribution<double> dist;
    x.resize(space.size());
    for (double& v : x) v = dist(rng);
    basis.resize(kVectors * space.size());
    for (double& v : basis) v = dist(rng);
    psi.resize(space.size());
    for (auto& c : psi) c = {dist(rng), dist(rng)};
  }
  static constexpr std::size_t kVectors = 40;
  HilbertSpace space;
  SparseHamiltonian h;
  std::vector<double> x;
  std::vector<double> basis;
  std::vector<std::complex<double>> psi;
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

template <bool Parallel>
void BM_spmv(benchmark::State& state) {
  const auto& f = fixture();
  std::vector<double> y(f.x.size());
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::spmv(f.h.csr(), f.x, y);
    else kernels::serial::spmv(f.h.csr(), f.x, y);
    benchmark::DoNotOptimize(y.data());
  }
}

template <bool Parallel>
void BM_dot(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) {
    double d = Parallel ? kernels::parallel::dot(f.x, f.x) : kernels::serial::dot(f.x, f.x);
    benchmark::DoNotOptimize(d);
  }
}

template <bool Parallel>
void BM_orthogonalize(benchmark::State& state) {
  const auto& f = fixture();
  std::vector<double> w(f.x.size());
  for (auto _ : state) {
    w = f.x;
    if constexpr (Parallel) kernels::parallel::orthogonalize(f.basis, Fixture::kVectors, w);
    else kernels::serial::orthogonalize(f.basis, Fixture::kVectors, w);
    benchmark::DoNotOptimize(w.data());
  }
}

template <bool Parallel>
void BM_reduced_density(benchmark::State& state) {
  const auto& f = fixture();
  std::vector<std::complex<double>> rho(36);
  for (auto _ : state) {
    if constexpr (Parallel) kernels::parallel::reduced_density(f.psi, 6, rho);
    else kernels::serial::reduced_density(f.psi, 6, rho);
    benchmark::DoNotOptimize(rho.data());
  }
}

}  // namespace

BENCHMARK(BM_spmv<false>)->Name("spmv/serial");
BENCHMARK(BM_spmv<true>)->Name("spmv/parallel");
BENCHMARK(BM_dot<false>)->Name("dot/serial");
BENCHMARK(BM_dot<true>)->Name("dot/parallel");
BENCHMARK(BM_orthogonalize<false>)->Name("orthogonalize/serial");
BENCHMARK(BM_orthogonalize<true>)->Name("orthogonalize/parallel");
BENCHMARK(BM_reduced_density<false>)->Name("reduced_density/serial");
BENCHMARK(BM_reduced_density<true>)->Name("reduced_density/parallel");

BENCHMARK_MAIN();
