#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "peierls/entanglement.hpp"
#include "peierls/symmetry.hpp"

using namespace peierls;

namespace {

ComplexVector random_state(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  ComplexVector v(n);
  double nrm = 0;
  for (auto& c : v) {
    c = {dist(rng), dist(rng)};
    nrm += std::norm(c);
  }
  for (auto& c : v) c /= std::sqrt(nrm);
  return v;
}

std::vector<oracle::Product> products(const HilbertSpace& space) {
  std::vector<oracle::Product> out;
  for (std::size_t i = 0; i < space.size(); ++i) {
    const auto s = space.state_of(i);
    out.push_back({s.site, s.phonons});
  }
  return out;
}

}  // namespace

TEST_CASE("reduced density matrix against an explicit partial trace") {
  const HilbertSpace space(4, 3);
  const auto psi = random_state(space.size(), 4);
  const Eigen::MatrixXcd rho = reduced_density_matrix(psi, space);
  CHECK((rho - oracle::partial_trace(psi, products(space), 4)).norm() < 1e-13);
  CHECK_NOTHROW(check_density_matrix(rho));
  // unnormalized input is normalized
  ComplexVector scaled = psi;
  for (auto& c : scaled) c *= 3.0;
  CHECK((reduced_density_matrix(scaled, space) - rho).norm() < 1e-13);
  CHECK_THROWS(reduced_density_matrix(ComplexVector(space.size()), space));
}

TEST_CASE("density matrix validation") {
  Eigen::MatrixXcd bad = Eigen::MatrixXcd::Identity(2, 2) * 0.5;
  bad(0, 1) = 0.1;
  CHECK_THROWS(check_density_matrix(bad));
  Eigen::MatrixXcd neg = Eigen::MatrixXcd::Zero(2, 2);
  neg(0, 0) = 1.1;
  neg(1, 1) = -0.1;
  CHECK_THROWS(check_density_matrix(neg));
}

TEST_CASE("Jacobi singular values against a library SVD") {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> dist;
  for (auto [r, c] : {std::pair{6, 84}, {4, 3}, {6, 6}}) {
    Eigen::MatrixXcd a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) a(i, j) = {dist(rng), dist(rng)};
    const auto mine = singular_values(a);
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    for (int i = 0; i < std::min(r, c); ++i) CHECK(mine[i] == doctest::Approx(svd.singularValues()[i]).epsilon(1e-12));
    for (int i = std::min(r, c); i < r; ++i) CHECK(std::abs(mine[i]) < 1e-12);
  }
}

TEST_CASE("two spectrum routes agree") {
  const HilbertSpace space(6, 2);
  for (std::uint64_t seed : {1, 2, 3}) {
    const auto psi = random_state(space.size(), seed);
    const auto a = spectrum_via_density(reduced_density_matrix(psi, space));
    const auto b = spectrum_via_svd(entanglement_matrix(psi, space));
    CHECK(spectrum_distance(a, b) < 1e-10);
    CHECK(a.entropy == doctest::Approx(b.entropy).epsilon(1e-12));
  }
}

TEST_CASE("product and maximally entangled states") {
  const HilbertSpace space(6, 1);
  // product: uniform excitation, no phonons
  ComplexVector product(space.size());
  for (int n = 0; n < 6; ++n) product[space.index_of(n, std::vector<int>(6, 0))] = 1.0 / std::sqrt(6.0);
  auto s = spectrum_via_density(reduced_density_matrix(product, space));
  CHECK(std::abs(s.entropy) < 1e-12);
  CHECK(std::abs(s.xis[0]) < 1e-12);
  for (std::size_t a = 1; a < 6; ++a) CHECK(s.flagged(a));

  // excitation at n paired with one phonon at n: orthogonal phonon states
  ComplexVector bell(space.size());
  for (int n = 0; n < 6; ++n) {
    std::vector<int> m(6, 0);
    m[n] = 1;
    bell[space.index_of(n, m)] = 1.0 / std::sqrt(6.0);
  }
  s = spectrum_via_density(reduced_density_matrix(bell, space));
  CHECK(s.entropy == doctest::Approx(std::log(6.0)).epsilon(1e-13));
  for (double xi : s.xis) CHECK(xi == doctest::Approx(std::log(6.0)));
}

TEST_CASE("weights: flagging and corruption") {
  auto s = spectrum_from_weights({0.5, 0.5, 1e-15, 0.0});
  CHECK(s.flagged(2));
  CHECK(s.flagged(3));
  CHECK(s.contributions[2] == 0.0);
  CHECK(s.entropy == doctest::Approx(std::log(2.0)));
  CHECK_THROWS(spectrum_from_weights({1.0, -1e-10}));
  CHECK_NOTHROW(spectrum_from_weights({1.0, -1e-13}));
  // ordering: alpha = 1 is the largest weight
  s = spectrum_from_weights({0.1, 0.6, 0.3});
  CHECK(s.weights[0] == 0.6);
  CHECK(s.xis[0] < s.xis[1]);
  double total = 0;
  for (double c : s.contributions) total += c;
  CHECK(total == doctest::Approx(s.entropy));
}

TEST_CASE("g=0 ground state: one finite eigenvalue carrying K=0") {
  const HilbertSpace space(6, 2);
  const auto gs = detect_degeneracy(lanczos_lowest(build_hamiltonian(params_from_lambda(0, 1, 6, 2), space), 3));
  const auto st = resolve_momentum(gs, space);
  const Eigen::MatrixXcd rho = reduced_density_matrix(st[0].coefficients, space);
  const auto s = label_momenta(rho, excitation_momentum_matrix(6));
  CHECK(std::abs(s.xis[0]) < 1e-12);
  CHECK(s.momentum_labels[0] == 0.0);
  for (std::size_t a = 1; a < 6; ++a) CHECK(s.flagged(a));
  CHECK(s.entropy < 1e-10);
}

TEST_CASE("labels are sharp grid momenta for momentum eigenstates") {
  const HilbertSpace space(6, 3);
  for (double lambda : {0.5, 3.0}) {
    const auto gs =
        detect_degeneracy(lanczos_lowest(build_hamiltonian(params_from_lambda(lambda, 1, 6, 3), space), 3));
    const auto st = resolve_momentum(gs, space);
    const Eigen::MatrixXcd rho = reduced_density_matrix(st[0].coefficients, space);
    const Eigen::MatrixXcd k = excitation_momentum_matrix(6);
    CHECK(commutator_norm(rho, k) < 1e-8);
    const auto s = label_momenta(rho, k);
    std::vector<double> sorted = s.momentum_labels;
    std::sort(sorted.begin(), sorted.end());
    const auto grid = allowed_momenta(6);
    for (int i = 0; i < 6; ++i) {
      CHECK(s.label_on_grid[i]);
      CHECK(sorted[i] == doctest::Approx(grid[i] / std::numbers::pi));
    }
    // labels computed here equal rho in the plane-wave basis: p(k) = <k|rho|k>
    for (int a = 0; a < 6; ++a) {
      Eigen::VectorXcd u(6);
      for (int l = 0; l < 6; ++l) u(l) = std::polar(1.0 / std::sqrt(6.0), s.momentum_labels[a] * std::numbers::pi * l);
      CHECK((u.adjoint() * rho * u)(0, 0).real() == doctest::Approx(s.weights[a]).epsilon(1e-9));
    }
  }
}

TEST_CASE("labeling refuses a density matrix that breaks translation symmetry") {
  Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(4, 4);
  rho(0, 0) = 1.0;
  CHECK_THROWS(label_momenta(rho, excitation_momentum_matrix(4)));
}

TEST_CASE("phonon distribution") {
  const HilbertSpace space(4, 3);
  const auto psi = random_state(space.size(), 11);
  const auto p = phonon_distribution(psi, space);
  REQUIRE(p.size() == 4);
  double total = 0;
  for (double x : p) total += x;
  CHECK(total == doctest::Approx(1.0).epsilon(1e-13));
}
