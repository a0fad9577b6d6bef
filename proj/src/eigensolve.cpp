#include "peierls/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include <Eigen/Dense>

namespace peierls {

namespace {

double residual_norm(const SparseHamiltonian& h, std::span<const double> x, double energy) {
  std::vector<double> hx(x.size());
  h.apply(x, hx);
  kernels::parallel::axpy(-energy, x, hx);
  return kernels::parallel::norm(hx);
}

// Random start vector orthogonal to the already-locked eigenvectors.
std::vector<double> start_vector(std::size_t dim, std::uint64_t seed, std::span<const double> locked,
                                 std::size_t n_locked) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  std::vector<double> v(dim);
  for (int attempt = 0; attempt < 8; ++attempt) {
    for (double& x : v) x = dist(rng);
    kernels::parallel::orthogonalize(locked, n_locked, v);
    const double nrm = kernels::parallel::norm(v);
    if (nrm > 1e-8) {
      kernels::parallel::scale(1.0 / nrm, v);
      return v;
    }
  }
  throw std::runtime_error("could not draw a start vector outside the locked subspace");
}

struct RitzPair {
  double value;
  double estimate;  // |beta_m * s_m|
  Eigen::VectorXd weights;
};

RitzPair lowest_ritz(const std::vector<double>& alpha, const std::vector<double>& beta, std::size_t m) {
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(alpha.data(), static_cast<Eigen::Index>(m));
  Eigen::VectorXd sub(static_cast<Eigen::Index>(m > 0 ? m - 1 : 0));
  for (std::size_t i = 0; i + 1 < m; ++i) sub[static_cast<Eigen::Index>(i)] = beta[i];
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
  tri.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  Eigen::VectorXd s = tri.eigenvectors().col(0);
  return {tri.eigenvalues()[0], std::abs(beta[m - 1] * s[static_cast<Eigen::Index>(m - 1)]), std::move(s)};
}

}  // namespace

EigenResult lanczos_lowest(const SparseHamiltonian& h, int k, const LanczosOptions& options) {
  const std::size_t dim = h.dimension();
  if (k < 1) throw std::invalid_argument("lanczos_lowest: k must be >= 1");
  if (static_cast<std::size_t>(k) > dim) throw std::invalid_argument("lanczos_lowest: k exceeds the dimension");
  if (!(options.tol > 0.0)) throw std::invalid_argument("lanczos_lowest: tol must be positive");

  EigenResult result;
  result.seed = options.seed;
  std::vector<double> locked;  // n_locked x dim
  locked.reserve(static_cast<std::size_t>(k) * dim);

  const auto max_krylov = static_cast<std::size_t>(std::max(options.max_iterations, 1));
  std::vector<double> basis;
  std::vector<double> w(dim);

  for (int pair = 0; pair < k; ++pair) {
    const std::size_t n_locked = static_cast<std::size_t>(pair);
    const std::size_t reachable = std::min(max_krylov, dim - n_locked);
    basis.assign(dim, 0.0);
    {
      auto v0 = start_vector(dim, options.seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(pair), locked,
                             n_locked);
      std::copy(v0.begin(), v0.end(), basis.begin());
    }
    std::vector<double> alpha;
    std::vector<double> beta;
    double scale = 1.0;
    double best_residual = std::numeric_limits<double>::infinity();
    bool converged = false;

    for (std::size_t m = 1; m <= reachable; ++m) {
      const std::span<const double> v(basis.data() + (m - 1) * dim, dim);
      h.apply(v, w);
      const double a = kernels::parallel::dot(v, w);
      alpha.push_back(a);
      kernels::parallel::axpy(-a, v, w);
      if (m > 1) kernels::parallel::axpy(-beta.back(), std::span<const double>(basis.data() + (m - 2) * dim, dim), w);
      kernels::parallel::orthogonalize(basis, m, w);
      kernels::parallel::orthogonalize(locked, n_locked, w);
      const double b = kernels::parallel::norm(w);
      beta.push_back(b);
      ++result.iterations;
      scale = std::max({scale, std::abs(a), b});

      const bool breakdown = b <= 1e-12 * scale;
      const bool last = m == reachable;
      if (breakdown || last || m % static_cast<std::size_t>(std::max(options.check_every, 1)) == 0) {
        const RitzPair ritz = lowest_ritz(alpha, beta, m);
        const double bound = options.tol * std::max(1.0, std::abs(ritz.value));
        best_residual = std::min(best_residual, ritz.estimate);
        if (ritz.estimate <= bound || breakdown || last) {
          std::vector<double> x(dim, 0.0);
          for (std::size_t i = 0; i < m; ++i)
            kernels::parallel::axpy(ritz.weights[static_cast<Eigen::Index>(i)],
                                    std::span<const double>(basis.data() + i * dim, dim), x);
          kernels::parallel::orthogonalize(locked, n_locked, x);
          kernels::parallel::scale(1.0 / kernels::parallel::norm(x), x);
          std::vector<double> hx(dim);
          h.apply(x, hx);
          const double energy = kernels::parallel::dot(x, hx);
          const double res = residual_norm(h, x, energy);
          best_residual = std::min(best_residual, res);
          if (res <= options.tol * std::max(1.0, std::abs(energy))) {
            result.eigenvalues.push_back(energy);
            result.residual_norms.push_back(res);
            locked.insert(locked.end(), x.begin(), x.end());
            result.eigenvectors.push_back(std::move(x));
            converged = true;
            break;
          }
          if (breakdown) break;
        }
      }
      if (m == reachable) break;
      kernels::parallel::scale(1.0 / b, w);
      basis.insert(basis.end(), w.begin(), w.end());
    }

    if (!converged) {
      std::ostringstream msg;
      msg << "Lanczos did not converge for eigenpair " << pair << " within " << reachable
          << " iterations; best residual " << best_residual;
      throw ConvergenceError(msg.str(), best_residual);
    }
  }

  std::vector<std::size_t> order(result.eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return result.eigenvalues[a] < result.eigenvalues[b]; });
  EigenResult sorted;
  sorted.iterations = result.iterations;
  sorted.seed = result.seed;
  for (std::size_t i : order) {
    sorted.eigenvalues.push_back(result.eigenvalues[i]);
    sorted.residual_norms.push_back(result.residual_norms[i]);
    sorted.eigenvectors.push_back(std::move(result.eigenvectors[i]));
  }
  return sorted;
}

EigenResult dense_oracle(const SparseHamiltonian& h) {
  const std::size_t dim = h.dimension();
  if (dim > kDenseOracleLimit)
    throw std::invalid_argument("dense_oracle: dimension " + std::to_string(dim) + " exceeds the dense limit " +
                                std::to_string(kDenseOracleLimit));
  const auto n = static_cast<Eigen::Index>(dim);
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(n, n);
  const auto& csr = h.csr();
  for (std::size_t i = 0; i < csr.rows; ++i)
    for (std::size_t p = csr.row_ptr[i]; p < csr.row_ptr[i + 1]; ++p)
      dense(static_cast<Eigen::Index>(i), csr.cols[p]) = csr.values[p];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(dense);
  if (solver.info() != Eigen::Success) throw std::runtime_error("dense_oracle: eigensolver failed");

  EigenResult result;
  for (Eigen::Index j = 0; j < n; ++j) {
    const double e = solver.eigenvalues()[j];
    std::vector<double> v(solver.eigenvectors().col(j).data(), solver.eigenvectors().col(j).data() + n);
    result.residual_norms.push_back(residual_norm(h, v, e));
    result.eigenvalues.push_back(e);
    result.eigenvectors.push_back(std::move(v));
  }
  return result;
}

GroundStateSolution detect_degeneracy(const EigenResult& result, double rel_tol) {
  const auto& e = result.eigenvalues;
  if (e.empty()) throw std::invalid_argument("detect_degeneracy: empty eigen result");
  const double window = rel_tol * std::max(1.0, std::abs(e[0]));
  const double inf = std::numeric_limits<double>::infinity();

  GroundStateSolution gs;
  gs.energy = e[0];
  gs.coefficients.push_back(result.eigenvectors[0]);
  if (e.size() >= 3 && std::abs(e[2] - e[0]) <= window) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "ground level is at least threefold degenerate: " << e[0] << ", " << e[1] << ", " << e[2];
    throw DegeneracyAnomaly(msg.str());
  }
  if (e.size() >= 2 && std::abs(e[1] - e[0]) <= window) {
    gs.degenerate = true;
    gs.coefficients.push_back(result.eigenvectors[1]);
    gs.gap_to_next = e.size() >= 3 ? e[2] - e[0] : inf;
  } else {
    gs.gap_to_next = e.size() >= 2 ? e[1] - e[0] : inf;
  }
  return gs;
}

}  // namespace peierls
