#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace peierls {

/// Phonon occupation numbers, one entry per lattice site.
using PhononConfig = std::vector<int>;

struct BasisState {
  int site = 0;
  PhononConfig phonons;

  bool operator==(const BasisState&) const = default;
};

/// N * (M+N)! / (M! N!). Throws std::overflow_error if it does not fit in size_t.
std::size_t dimension(int n_sites, int max_phonons);

/// (M+N)! / (M! N!), the number of phonon configurations with at most M quanta.
std::size_t phonon_dimension(int n_sites, int max_phonons);

/// Quasimomenta 2*pi*n/N for n = -N/2+1 .. N/2, ascending, all in (-pi, pi].
std::vector<double> allowed_momenta(int n_sites);

/// Truncated single-excitation x phonon Hilbert space of a periodic ring.
///
/// States are ordered site-major: index = site * D_ph + rank(phonons). Phonon
/// configurations are ordered as little-endian integer tuples, i.e. m_0 varies
/// fastest, and are ranked through the combinatorial number system so lookups
/// cost O(N) with no hashing.
class HilbertSpace {
 public:
  HilbertSpace(int n_sites, int max_phonons);

  int n_sites() const { return n_sites_; }
  int max_phonons() const { return max_phonons_; }
  std::size_t size() const { return n_sites_ * phonon_dim_; }
  std::size_t phonon_dim() const { return phonon_dim_; }

  std::size_t index_of(int site, std::span<const int> phonons) const {
    return static_cast<std::size_t>(site) * phonon_dim_ + rank(phonons);
  }
  std::size_t index_of(const BasisState& s) const { return index_of(s.site, s.phonons); }
  BasisState state_of(std::size_t index) const;

  int site_of(std::size_t index) const { return static_cast<int>(index / phonon_dim_); }
  std::size_t phonon_index_of(std::size_t index) const { return index % phonon_dim_; }

  /// Occupation vector of the r-th phonon configuration.
  std::span<const int> phonons(std::size_t r) const {
    return {configs_.data() + r * n_sites_, static_cast<std::size_t>(n_sites_)};
  }
  int total_phonons(std::size_t r) const { return totals_[r]; }

  /// Position of an occupation vector in the configuration order.
  std::size_t rank(std::span<const int> phonons) const;

 private:
  std::size_t binom(int n, int k) const;

  int n_sites_;
  int max_phonons_;
  std::size_t phonon_dim_;
  std::vector<int> configs_;  // phonon_dim_ x n_sites_, row-major
  std::vector<int> totals_;
  std::vector<std::size_t> binom_;  // (M+N+2) x (N+2) Pascal table
};

}  // namespace peierls
