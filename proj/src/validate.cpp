#include "peierls/validate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "peierls/symmetry.hpp"

namespace peierls {

namespace {

CheckResult make(std::string name, double measured, double threshold, std::string detail = {}) {
  return {std::move(name), measured <= threshold, measured, threshold, std::move(detail)};
}

std::string point_label(int n, int m, double lambda, double ratio) {
  std::ostringstream s;
  s << "N=" << n << " M=" << m << " lambda=" << lambda << " w/t=" << ratio;
  return s.str();
}

}  // namespace

RowComparison compare_rows(const SweepRow& a, const SweepRow& b) {
  RowComparison c;
  const std::size_t ne = std::min(a.energies.size(), b.energies.size());
  for (std::size_t i = 0; i < ne; ++i) c.energy = std::max(c.energy, std::abs(a.energies[i] - b.energies[i]));
  for (std::size_t i = 0; i < a.xis.size() && i < b.xis.size(); ++i) {
    const bool fa = std::isinf(a.xis[i]);
    const bool fb = std::isinf(b.xis[i]);
    if (fa != fb) {
      c.xi = std::numeric_limits<double>::infinity();
      break;
    }
    if (!fa) c.xi = std::max(c.xi, std::abs(a.xis[i] - b.xis[i]));
  }
  c.entropy = std::abs(a.entropy - b.entropy);
  return c;
}

RowComparison oracle_comparison(const ModelParams& params, const SolverOptions& options) {
  SolverOptions lanczos = options;
  lanczos.solver = SolverKind::lanczos;
  SolverOptions dense = options;
  dense.solver = SolverKind::dense;
  return compare_rows(run_point(params, lanczos), run_point(params, dense));
}

std::vector<CheckResult> run_validation(std::uint64_t seed) {
  std::vector<CheckResult> out;

  {
    double worst = 0.0;
    for (int n : {2, 4, 6}) {
      for (int m = 0; m <= (n == 6 ? 4 : 8); ++m) {
        const HilbertSpace space(n, m);
        for (std::size_t i = 0; i < space.size(); ++i)
          if (space.index_of(space.state_of(i)) != i) worst = 1.0;
        if (space.size() != dimension(n, m)) worst = 1.0;
      }
    }
    out.push_back(make("basis: index/state bijection and closed-form count", worst, 0.0));
  }

  {
    double worst = 0.0;
    for (int n : {4, 6, 8})
      for (double g : {0.0, 0.3, 0.5, 1.0, 1.7})
        for (double w : {0.5, 1.0, 3.0})
          worst = std::max(worst, std::abs(lambda_from_bz_average(g, 1.0, w, n) - 2.0 * g * g * w));
    out.push_back(make("model: Brillouin-zone average reproduces 2 g^2 w / t", worst, 1e-12));
  }

  {
    const ModelParams p = params_from_lambda(1.0, 1.0, 4, 4);
    const HilbertSpace space(4, 4);
    const SparseHamiltonian h = build_hamiltonian(p, space);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    std::vector<double> v(space.size()), a(space.size()), b(space.size());
    for (double& x : v) x = dist(rng);
    h.apply_serial(v, a);
    h.apply_transposed(v, b);
    double diff = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) diff = std::max(diff, std::abs(a[i] - b[i]));
    out.push_back(make("model: H v equals H^T v (symmetric storage)", diff, 0.0));
  }

  {
    double worst = 0.0;
    for (int n : {4, 6}) {
      const ModelParams p = params_from_lambda(2.0, 1.0, n, 4);
      const HilbertSpace space(n, 4);
      worst = std::max(worst, verify_symmetry(build_hamiltonian(p, space), space, 3, seed));
    }
    out.push_back(make("symmetry: ||(HT - TH) v|| / ||v||", worst, 1e-12));
  }

  {
    double worst = 0.0;
    for (int n : {2, 4, 6}) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(excitation_momentum_matrix(n));
      const auto grid = allowed_momenta(n);
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(eig.eigenvalues()[i] - grid[i]));
    }
    out.push_back(make("symmetry: K_e spectrum equals the momentum grid", worst, 1e-12));
  }

  {
    RowComparison worst;
    std::string where;
    for (int n : {2, 4}) {
      for (int m = 0; m <= 4; ++m) {
        for (double lambda : {0.0, 0.5, 1.0, 2.0}) {
          SolverOptions opts;
          opts.seed = seed;
          const auto c = oracle_comparison(params_from_lambda(lambda, 1.0, n, m), opts);
          if (c.energy > worst.energy || c.xi > worst.xi || c.entropy > worst.entropy) where = point_label(n, m, lambda, 1.0);
          worst.energy = std::max(worst.energy, c.energy);
          worst.xi = std::max(worst.xi, c.xi);
          worst.entropy = std::max(worst.entropy, c.entropy);
        }
      }
    }
    out.push_back(make("eigensolve: Lanczos vs dense energies", worst.energy, 1e-9, where));
    out.push_back(make("entanglement: Lanczos vs dense xi spectra", worst.xi, 1e-8, where));
    out.push_back(make("entanglement: Lanczos vs dense S_gs", worst.entropy, 1e-9, where));
  }

  {
    const HilbertSpace space(4, 2);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist;
    double worst = 0.0;
    for (int trial = 0; trial < 5; ++trial) {
      ComplexVector psi(space.size());
      double nrm = 0.0;
      for (auto& c : psi) {
        c = {dist(rng), dist(rng)};
        nrm += std::norm(c);
      }
      for (auto& c : psi) c /= std::sqrt(nrm);
      worst = std::max(worst, spectrum_distance(spectrum_via_density(reduced_density_matrix(psi, space)),
                                                spectrum_via_svd(entanglement_matrix(psi, space))));
    }
    out.push_back(make("entanglement: density route vs SVD route on random states", worst, 1e-10));
  }

  {
    const ModelParams p = params_from_lambda(1.0, 1.0, 4, 4);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::uint64_t s = 1; s <= 5; ++s) {
      SolverOptions opts;
      opts.seed = seed + 1000 * s;
      const double e = run_point(p, opts).ground_energy;
      lo = std::min(lo, e);
      hi = std::max(hi, e);
    }
    out.push_back(make("eigensolve: ground energy across 5 seeds", hi - lo, 1e-10));
  }

  {
    double worst_increase = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    for (int m = 0; m <= 6; ++m) {
      const double e = run_point(params_from_lambda(2.0, 1.0, 4, m)).ground_energy;
      worst_increase = std::max(worst_increase, e - previous);
      previous = e;
    }
    out.push_back(make("eigensolve: E0 non-increasing in M", std::max(worst_increase, 0.0), 1e-12));
  }

  {
    const SweepRow row = run_point(params_from_lambda(3.0, 1.0, 4, 4));
    out.push_back(make("sweep: row-level invariants at N=4 M=4 lambda=3", row.diagnostics.ok() ? 0.0 : 1.0, 0.0,
                       row.diagnostics.ok() ? "" : row.diagnostics.failures.front()));
  }

  return out;
}

}  // namespace peierls
