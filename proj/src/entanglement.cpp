#include "peierls/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "peierls/kernels.hpp"

namespace peierls {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

bool EntanglementSpectrum::flagged(std::size_t alpha) const { return std::isinf(xis[alpha]); }

Eigen::MatrixXcd reduced_density_matrix(std::span<const std::complex<double>> psi, const HilbertSpace& space) {
  if (psi.size() != space.size()) throw std::invalid_argument("reduced_density_matrix: length mismatch");
  const auto n = static_cast<std::size_t>(space.n_sites());
  std::vector<std::complex<double>> raw(n * n);
  kernels::parallel::reduced_density(psi, n, raw);
  double trace = 0.0;
  for (std::size_t i = 0; i < n; ++i) trace += raw[i * n + i].real();
  if (!(trace > 0.0)) throw std::invalid_argument("reduced_density_matrix: zero state vector");
  Eigen::MatrixXcd rho(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) rho(i, j) = raw[i * n + j] / trace;
  return rho;
}

void check_density_matrix(const Eigen::MatrixXcd& rho) {
  const double herm = (rho - rho.adjoint()).norm();
  const double trace_err = std::abs(rho.trace() - 1.0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  const double smallest = eig.eigenvalues()[0];
  if (herm > 1e-12 || trace_err > 1e-12 || smallest < -kNegativeWeight) {
    std::ostringstream msg;
    msg << "invalid density matrix: hermiticity defect " << herm << ", trace error " << trace_err
        << ", smallest eigenvalue " << smallest;
    throw std::runtime_error(msg.str());
  }
}

Eigen::MatrixXcd entanglement_matrix(std::span<const std::complex<double>> psi, const HilbertSpace& space) {
  if (psi.size() != space.size()) throw std::invalid_argument("entanglement_matrix: length mismatch");
  const auto n = static_cast<Eigen::Index>(space.n_sites());
  const auto dph = static_cast<Eigen::Index>(space.phonon_dim());
  Eigen::MatrixXcd m(n, dph);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index r = 0; r < dph; ++r) m(i, r) = psi[static_cast<std::size_t>(i * dph + r)];
  return m;
}

EntanglementSpectrum spectrum_from_weights(std::vector<double> weights) {
  std::sort(weights.begin(), weights.end(), std::greater<>());
  EntanglementSpectrum s;
  for (double p : weights) {
    if (p < -kNegativeWeight) {
      std::ostringstream msg;
      msg << "negative reduced-density eigenvalue " << p;
      throw std::runtime_error(msg.str());
    }
    if (p < kZeroWeight) {
      s.xis.push_back(kInf);
      s.weights.push_back(0.0);
      s.contributions.push_back(0.0);
    } else {
      const double xi = -std::log(p);
      s.xis.push_back(xi);
      s.weights.push_back(p);
      s.contributions.push_back(xi * p);
    }
  }
  s.entropy = entropy(s);
  return s;
}

EntanglementSpectrum spectrum_via_density(const Eigen::MatrixXcd& rho) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho, Eigen::EigenvaluesOnly);
  if (eig.info() != Eigen::Success) throw std::runtime_error("spectrum_via_density: eigensolve failed");
  const Eigen::VectorXd& p = eig.eigenvalues();
  return spectrum_from_weights(std::vector<double>(p.data(), p.data() + p.size()));
}

std::vector<double> singular_values(Eigen::MatrixXcd a) {
  // Hestenes: rotate pairs of rows until all rows are mutually orthogonal;
  // the row norms are then the singular values.
  const Eigen::Index rows = a.rows();
  constexpr double eps = std::numeric_limits<double>::epsilon();
  for (int sweep = 0; sweep < 60; ++sweep) {
    bool rotated = false;
    for (Eigen::Index i = 0; i + 1 < rows; ++i) {
      for (Eigen::Index j = i + 1; j < rows; ++j) {
        const double aii = a.row(i).squaredNorm();
        const double ajj = a.row(j).squaredNorm();
        // c = <row_j, row_i> = sum_k a(i,k) conj(a(j,k))
        const std::complex<double> c = a.row(j).dot(a.row(i));
        const double abs_c = std::abs(c);
        if (abs_c <= eps * std::sqrt(aii * ajj) || abs_c == 0.0) continue;
        rotated = true;
        const std::complex<double> phase = c / abs_c;
        const double zeta = (ajj - aii) / (2.0 * abs_c);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double cs = 1.0 / std::sqrt(1.0 + t * t);
        const double sn = cs * t;
        // Rotate row_i against e^{i phi} row_j, whose overlap with row_i is |c|.
        const Eigen::RowVectorXcd ri = a.row(i);
        const Eigen::RowVectorXcd rj = phase * a.row(j);
        a.row(i) = cs * ri - sn * rj;
        a.row(j) = sn * ri + cs * rj;
      }
    }
    if (!rotated) break;
  }
  std::vector<double> sigma(static_cast<std::size_t>(rows));
  for (Eigen::Index i = 0; i < rows; ++i) sigma[static_cast<std::size_t>(i)] = a.row(i).norm();
  std::sort(sigma.begin(), sigma.end(), std::greater<>());
  return sigma;
}

EntanglementSpectrum spectrum_via_svd(const Eigen::MatrixXcd& entanglement) {
  const auto sigma = singular_values(entanglement);
  std::vector<double> weights;
  weights.reserve(sigma.size());
  for (double s : sigma) weights.push_back(s * s);
  // Only min(N, D_ph) Schmidt values exist; pad so both routes have N entries.
  weights.resize(static_cast<std::size_t>(entanglement.rows()), 0.0);
  return spectrum_from_weights(std::move(weights));
}

double spectrum_distance(const EntanglementSpectrum& a, const EntanglementSpectrum& b) {
  if (a.size() != b.size()) return kInf;
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.flagged(i) != b.flagged(i)) {
      // An entry sitting on the flag threshold may fall either side; compare weights instead.
      if (std::abs(a.weights[i] - b.weights[i]) > 10 * kZeroWeight) return kInf;
      continue;
    }
    if (!a.flagged(i)) worst = std::max(worst, std::abs(a.xis[i] - b.xis[i]));
  }
  return worst;
}

double commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) { return (a * b - b * a).norm(); }

EntanglementSpectrum label_momenta(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& kmat, double degeneracy_tol) {
  const double comm = commutator_norm(rho, kmat);
  if (comm > kCommutatorTol) {
    std::ostringstream msg;
    msg << "label_momenta: ||[rho_e, K_e]||_F = " << comm << " exceeds " << kCommutatorTol;
    throw std::runtime_error(msg.str());
  }
  const Eigen::Index n = rho.rows();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(rho);
  if (eig.info() != Eigen::Success) throw std::runtime_error("label_momenta: eigensolve failed");

  // Descending weights.
  std::vector<double> weights(static_cast<std::size_t>(n));
  Eigen::MatrixXcd vecs(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    weights[static_cast<std::size_t>(a)] = eig.eigenvalues()[n - 1 - a];
    vecs.col(a) = eig.eigenvectors().col(n - 1 - a);
  }
  EntanglementSpectrum s = spectrum_from_weights(weights);

  const auto grid = allowed_momenta(static_cast<int>(n));
  s.momentum_labels.assign(static_cast<std::size_t>(n), 0.0);
  s.raw_labels.assign(static_cast<std::size_t>(n), 0.0);
  s.label_on_grid.assign(static_cast<std::size_t>(n), false);

  for (Eigen::Index begin = 0; begin < n;) {
    Eigen::Index end = begin + 1;
    while (end < n) {
      const auto prev = static_cast<std::size_t>(end - 1);
      const auto cur = static_cast<std::size_t>(end);
      const bool both_flagged = s.flagged(prev) && s.flagged(cur);
      const bool close = !s.flagged(prev) && !s.flagged(cur) && s.xis[cur] - s.xis[prev] <= degeneracy_tol;
      if (!both_flagged && !close) break;
      ++end;
    }
    const Eigen::Index width = end - begin;
    Eigen::MatrixXcd block = vecs.middleCols(begin, width);
    if (width > 1) {
      const Eigen::MatrixXcd projected = block.adjoint() * kmat * block;
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> joint(projected);
      block = block * joint.eigenvectors();  // ascending momentum inside the cluster
    }
    for (Eigen::Index c = 0; c < width; ++c) {
      const Eigen::VectorXcd v = block.col(c);
      const double label = (v.adjoint() * kmat * v)(0, 0).real();
      const auto alpha = static_cast<std::size_t>(begin + c);
      double nearest = grid[0];
      for (double k : grid)
        if (std::abs(k - label) < std::abs(nearest - label)) nearest = k;
      s.raw_labels[alpha] = label / std::numbers::pi;
      s.label_on_grid[alpha] = std::abs(nearest - label) <= kLabelSnapTol;
      s.momentum_labels[alpha] = (s.label_on_grid[alpha] ? nearest : label) / std::numbers::pi;
      vecs.col(begin + c) = v;
    }
    begin = end;
  }
  s.eigenvectors = std::move(vecs);
  return s;
}

double entropy(const EntanglementSpectrum& spectrum) {
  double total = 0.0;
  for (std::size_t a = 0; a < spectrum.size(); ++a)
    if (!spectrum.flagged(a)) total += spectrum.xis[a] * std::exp(-spectrum.xis[a]);
  return total;
}

std::vector<double> phonon_distribution(std::span<const std::complex<double>> psi, const HilbertSpace& space) {
  if (psi.size() != space.size()) throw std::invalid_argument("phonon_distribution: length mismatch");
  std::vector<double> p(static_cast<std::size_t>(space.max_phonons()) + 1, 0.0);
  for (std::size_t i = 0; i < psi.size(); ++i)
    p[static_cast<std::size_t>(space.total_phonons(space.phonon_index_of(i)))] += std::norm(psi[i]);
  return p;
}

}  // namespace peierls
