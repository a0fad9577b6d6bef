#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "peierls/basis.hpp"
#include "peierls/eigensolve.hpp"
#include "peierls/model.hpp"

namespace peierls {

using ComplexVector = std::vector<std::complex<double>>;

/// Simultaneous cyclic shift of the excitation and the phonon configuration:
/// |n, (m_0..m_{N-1})> -> |n+1, (m_{N-1}, m_0, .., m_{N-2})>.
///
/// A plane wave sum_n e^{ikn}|n> picks up e^{-ik} under this shift, so a
/// translation eigenvalue tau is read as the quasimomentum K = -arg(tau).
class Translation {
 public:
  explicit Translation(const HilbertSpace& space);

  std::size_t dimension() const { return target_.size(); }
  /// Image of a basis index. The sign is always +1 (bosonic phonons, one excitation).
  std::size_t operator()(std::size_t index) const { return target_[index]; }

  template <class T>
  void apply(std::span<const T> x, std::span<T> y) const {
    for (std::size_t i = 0; i < target_.size(); ++i) y[target_[i]] = x[i];
  }

 private:
  std::vector<std::size_t> target_;
};

std::size_t translate(std::size_t state_index, const HilbertSpace& space);

/// max over random unit vectors of ||(HT - TH) v||.
double verify_symmetry(const SparseHamiltonian& h, const HilbertSpace& space, int trials, std::uint64_t seed = 7);

struct MomentumResolvedState {
  ComplexVector coefficients;
  double total_k = 0.0;  ///< in (-pi, pi]
  std::complex<double> translation_eigenvalue{1.0, 0.0};
};

inline constexpr double kTranslationModulusTol = 1e-8;

/// Translation eigenstates spanning the ground level. A nondegenerate level
/// yields one state with K in {0, pi}; a twofold level yields the pair
/// K = +K_gs, -K_gs (in that order), complex conjugates of each other up to
/// rounding. Each state is projected onto its exact momentum sector before
/// returning.
std::vector<MomentumResolvedState> resolve_momentum(const GroundStateSolution& gs, const HilbertSpace& space);

/// Projector (1/N) sum_j e^{iKj} T^j onto total quasimomentum K.
ComplexVector project_momentum(std::span<const std::complex<double>> psi, double k, const Translation& t,
                               int n_sites);

/// ||T psi - tau psi||.
double translation_defect(std::span<const std::complex<double>> psi, std::complex<double> tau, const Translation& t);

/// (K_e)_{l,l'} = (1/N) sum_k k e^{ik(l-l')} over the allowed grid.
Eigen::MatrixXcd excitation_momentum_matrix(int n_sites);

/// Map an angle into (-pi, pi].
double wrap_momentum(double k);

}  // namespace peierls
