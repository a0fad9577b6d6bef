#include "peierls/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace peierls {

namespace {

constexpr double kPi = std::numbers::pi;

// Largest-magnitude component made real and positive, for reproducible output.
void fix_phase(ComplexVector& psi) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < psi.size(); ++i)
    if (std::abs(psi[i]) > std::abs(psi[best]) * (1.0 + 1e-12)) best = i;
  if (psi.empty() || std::abs(psi[best]) == 0.0) return;
  const std::complex<double> phase = std::conj(psi[best]) / std::abs(psi[best]);
  for (auto& c : psi) c *= phase;
}

void normalize(ComplexVector& psi) {
  double nrm = 0.0;
  for (const auto& c : psi) nrm += std::norm(c);
  nrm = std::sqrt(nrm);
  if (nrm == 0.0) throw std::runtime_error("momentum projection annihilated the state");
  for (auto& c : psi) c /= nrm;
}

void check_modulus(std::complex<double> tau) {
  if (std::abs(std::abs(tau) - 1.0) > kTranslationModulusTol) {
    std::ostringstream msg;
    msg << "translation eigenvalue modulus " << std::abs(tau) << " deviates from 1: ground subspace is corrupted";
    throw std::runtime_error(msg.str());
  }
}

}  // namespace

double wrap_momentum(double k) {
  k = std::remainder(k, 2.0 * kPi);
  if (k <= -kPi + 1e-12) k += 2.0 * kPi;
  return k;
}

Translation::Translation(const HilbertSpace& space) : target_(space.size()) {
  const int n = space.n_sites();
  std::vector<int> shifted(n);
  // Phonon ranks are independent of the site, so shift each configuration once.
  std::vector<std::size_t> shifted_rank(space.phonon_dim());
  for (std::size_t r = 0; r < space.phonon_dim(); ++r) {
    const auto m = space.phonons(r);
    for (int i = 0; i < n; ++i) shifted[(i + 1) % n] = m[i];
    shifted_rank[r] = space.rank(shifted);
  }
  for (std::size_t s = 0; s < space.size(); ++s) {
    const auto site = static_cast<std::size_t>((space.site_of(s) + 1) % n);
    target_[s] = site * space.phonon_dim() + shifted_rank[space.phonon_index_of(s)];
  }
}

std::size_t translate(std::size_t state_index, const HilbertSpace& space) {
  const BasisState s = space.state_of(state_index);
  const int n = space.n_sites();
  PhononConfig shifted(n);
  for (int i = 0; i < n; ++i) shifted[(i + 1) % n] = s.phonons[i];
  return space.index_of((s.site + 1) % n, shifted);
}

double verify_symmetry(const SparseHamiltonian& h, const HilbertSpace& space, int trials, std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("verify_symmetry: trials must be >= 1");
  const Translation t(space);
  const std::size_t dim = space.size();
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist;
  std::vector<double> v(dim), tv(dim), htv(dim), hv(dim), thv(dim);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    for (double& x : v) x = dist(rng);
    t.apply<double>(v, tv);
    h.apply(tv, htv);
    h.apply(v, hv);
    t.apply<double>(hv, thv);
    kernels::parallel::axpy(-1.0, thv, htv);
    worst = std::max(worst, kernels::parallel::norm(htv) / kernels::parallel::norm(v));
  }
  return worst;
}

ComplexVector project_momentum(std::span<const std::complex<double>> psi, double k, const Translation& t,
                               int n_sites) {
  ComplexVector acc(psi.begin(), psi.end());
  ComplexVector current(psi.begin(), psi.end());
  ComplexVector next(psi.size());
  for (int j = 1; j < n_sites; ++j) {
    t.apply<std::complex<double>>(current, next);
    std::swap(current, next);
    const std::complex<double> w = std::polar(1.0, k * j);
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += w * current[i];
  }
  for (auto& c : acc) c /= static_cast<double>(n_sites);
  return acc;
}

double translation_defect(std::span<const std::complex<double>> psi, std::complex<double> tau, const Translation& t) {
  ComplexVector tpsi(psi.size());
  t.apply<std::complex<double>>(psi, tpsi);
  double acc = 0.0;
  for (std::size_t i = 0; i < psi.size(); ++i) acc += std::norm(tpsi[i] - tau * psi[i]);
  return std::sqrt(acc);
}

std::vector<MomentumResolvedState> resolve_momentum(const GroundStateSolution& gs, const HilbertSpace& space) {
  if (gs.coefficients.empty() || gs.coefficients.size() > 2)
    throw std::invalid_argument("resolve_momentum: expected one or two ground-state vectors");
  const Translation t(space);
  const std::size_t dim = space.size();
  const auto grid = allowed_momenta(space.n_sites());
  for (const auto& v : gs.coefficients)
    if (v.size() != dim) throw std::invalid_argument("resolve_momentum: vector length does not match the space");

  std::vector<double> tv(dim);
  auto overlap_t = [&](const std::vector<double>& a, const std::vector<double>& b) {
    t.apply<double>(b, tv);
    return kernels::parallel::dot(a, tv);
  };
  auto finish = [&](ComplexVector psi, std::complex<double> tau) {
    check_modulus(tau);
    const double raw = wrap_momentum(-std::arg(tau));
    double k = grid[0];
    for (double g : grid)
      if (std::abs(wrap_momentum(g - raw)) < std::abs(wrap_momentum(k - raw))) k = g;
    if (std::abs(wrap_momentum(k - raw)) > 1e-6)
      throw std::runtime_error("resolve_momentum: quasimomentum " + std::to_string(raw) + " is off the allowed grid");
    psi = project_momentum(psi, k, t, space.n_sites());
    normalize(psi);
    fix_phase(psi);
    return MomentumResolvedState{std::move(psi), k, std::polar(1.0, -k)};
  };

  if (gs.coefficients.size() == 1) {
    const auto& v = gs.coefficients[0];
    const double tau = overlap_t(v, v);
    return {finish(ComplexVector(v.begin(), v.end()), tau)};
  }

  const auto& v0 = gs.coefficients[0];
  const auto& v1 = gs.coefficients[1];
  Eigen::Matrix2cd block;
  block << overlap_t(v0, v0), overlap_t(v0, v1), overlap_t(v1, v0), overlap_t(v1, v1);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> eig(block);
  if (eig.info() != Eigen::Success) throw std::runtime_error("resolve_momentum: 2x2 eigensolve failed");

  std::vector<MomentumResolvedState> out;
  for (int j = 0; j < 2; ++j) {
    const std::complex<double> c0 = eig.eigenvectors()(0, j);
    const std::complex<double> c1 = eig.eigenvectors()(1, j);
    ComplexVector psi(dim);
    for (std::size_t i = 0; i < dim; ++i) psi[i] = c0 * v0[i] + c1 * v1[i];
    out.push_back(finish(std::move(psi), eig.eigenvalues()[j]));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.total_k > b.total_k; });

  return out;
}

Eigen::MatrixXcd excitation_momentum_matrix(int n_sites) {
  const auto grid = allowed_momenta(n_sites);
  Eigen::MatrixXcd kmat(n_sites, n_sites);
  for (int l = 0; l < n_sites; ++l) {
    for (int lp = 0; lp < n_sites; ++lp) {
      std::complex<double> acc = 0.0;
      for (double k : grid) acc += k * std::polar(1.0, k * (l - lp));
      kmat(l, lp) = acc / static_cast<double>(n_sites);
    }
  }
  return kmat;
}

}  // namespace peierls
