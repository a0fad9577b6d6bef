#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "peierls/basis.hpp"

namespace peierls {

inline constexpr double kZeroWeight = 1e-14;     ///< p below this is flagged, xi = +inf
inline constexpr double kNegativeWeight = 1e-12;  ///< eigenvalues below -this signal corruption
inline constexpr double kXiClusterTol = 1e-9;
inline constexpr double kLabelSnapTol = 1e-6;
inline constexpr double kCommutatorTol = 1e-8;

/// Entanglement spectrum xi_1 <= ... <= xi_N (alpha = 1 is the largest
/// weight). Flagged entries carry xi = +inf and contribute nothing.
struct EntanglementSpectrum {
  std::vector<double> xis;
  std::vector<double> weights;        ///< p_alpha = exp(-xi_alpha), 0 for flagged entries
  std::vector<double> contributions;  ///< S_alpha = xi_alpha exp(-xi_alpha)
  double entropy = 0.0;

  // Filled by label_momenta only.
  std::vector<double> momentum_labels;  ///< K_e^alpha in units of pi (snapped when on the grid)
  std::vector<double> raw_labels;       ///< unsnapped K_e^alpha in units of pi
  std::vector<bool> label_on_grid;
  Eigen::MatrixXcd eigenvectors;  ///< column alpha is |xi_alpha>

  std::size_t size() const { return xis.size(); }
  bool flagged(std::size_t alpha) const;
};

/// (rho_e)_{nn'} = sum_m C_{n,m} C*_{n',m} / sum |C|^2. Throws on a zero vector.
Eigen::MatrixXcd reduced_density_matrix(std::span<const std::complex<double>> psi, const HilbertSpace& space);

/// Throws unless rho is Hermitian, unit-trace and positive semidefinite to 1e-12.
void check_density_matrix(const Eigen::MatrixXcd& rho);

/// N x D_ph matrix with element (n, rank(m)) = C_{n,m}.
Eigen::MatrixXcd entanglement_matrix(std::span<const std::complex<double>> psi, const HilbertSpace& space);

/// Builds xi, contributions and entropy from weights sorted in descending order.
EntanglementSpectrum spectrum_from_weights(std::vector<double> weights);

EntanglementSpectrum spectrum_via_density(const Eigen::MatrixXcd& rho);

/// Singular values (descending) by one-sided Jacobi rotations of the rows.
std::vector<double> singular_values(Eigen::MatrixXcd m);

/// xi = -2 ln sigma from the singular values of the entanglement matrix.
EntanglementSpectrum spectrum_via_svd(const Eigen::MatrixXcd& entanglement);

/// Max |xi_a - xi_b| over entries finite in both, +inf if the flag patterns differ.
double spectrum_distance(const EntanglementSpectrum& a, const EntanglementSpectrum& b);

double commutator_norm(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b);

/// Diagonalizes rho jointly with K_e inside each xi-degenerate cluster and
/// attaches K_e^alpha = <xi_alpha|K_e|xi_alpha>. Throws if ||[rho, K_e]||_F
/// exceeds kCommutatorTol.
EntanglementSpectrum label_momenta(const Eigen::MatrixXcd& rho, const Eigen::MatrixXcd& kmat,
                                   double degeneracy_tol = kXiClusterTol);

/// S = sum xi e^{-xi} over unflagged entries.
double entropy(const EntanglementSpectrum& spectrum);

/// P(m) = weight of total phonon number m, m = 0..M.
std::vector<double> phonon_distribution(std::span<const std::complex<double>> psi, const HilbertSpace& space);

}  // namespace peierls
