#include "peierls/basis.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>

namespace peierls {

namespace {

void check_shape(int n_sites, int max_phonons) {
  if (n_sites < 2 || n_sites % 2 != 0)
    throw std::invalid_argument("n_sites must be even and >= 2, got " + std::to_string(n_sites));
  if (max_phonons < 0)
    throw std::invalid_argument("max_phonons must be >= 0, got " + std::to_string(max_phonons));
}

// C(n, k) with every intermediate checked; C(m+j, j) = C(m+j-1, j-1) * (m+j) / j is exact.
std::size_t checked_binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::size_t c = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    const std::size_t num = n - k + j;
    // c/g and j/g are coprime, so j/g divides num.
    const std::size_t g = std::gcd(c, j);
    std::size_t prod = 0;
    if (__builtin_mul_overflow(c / g, num / (j / g), &prod))
      throw std::overflow_error("Hilbert-space dimension overflows size_t");
    c = prod;
  }
  return c;
}

}  // namespace

std::size_t phonon_dimension(int n_sites, int max_phonons) {
  check_shape(n_sites, max_phonons);
  return checked_binomial(static_cast<std::size_t>(n_sites) + max_phonons, n_sites);
}

std::size_t dimension(int n_sites, int max_phonons) {
  const std::size_t dph = phonon_dimension(n_sites, max_phonons);
  std::size_t d = 0;
  if (__builtin_mul_overflow(dph, static_cast<std::size_t>(n_sites), &d))
    throw std::overflow_error("Hilbert-space dimension overflows size_t");
  return d;
}

std::vector<double> allowed_momenta(int n_sites) {
  check_shape(n_sites, 0);
  std::vector<double> k;
  k.reserve(n_sites);
  for (int n = -n_sites / 2 + 1; n <= n_sites / 2; ++n) {
    // Pin the zone edge so it is exactly pi rather than 2*pi*(N/2)/N.
    k.push_back(2 * n == n_sites ? std::numbers::pi : 2.0 * std::numbers::pi * n / n_sites);
  }
  return k;
}

HilbertSpace::HilbertSpace(int n_sites, int max_phonons)
    : n_sites_(n_sites), max_phonons_(max_phonons), phonon_dim_(phonon_dimension(n_sites, max_phonons)) {
  (void)dimension(n_sites, max_phonons);
  if (phonon_dim_ > configs_.max_size() / static_cast<std::size_t>(n_sites))
    throw std::overflow_error("phonon basis too large to store");

  const int rows = max_phonons + n_sites + 2;
  const int cols = n_sites + 2;
  binom_.assign(static_cast<std::size_t>(rows) * cols, 0);
  for (int n = 0; n < rows; ++n) {
    binom_[n * cols] = 1;
    for (int k = 1; k <= std::min(n, cols - 1); ++k)
      binom_[n * cols + k] = binom_[(n - 1) * cols + k - 1] + (k <= n - 1 ? binom_[(n - 1) * cols + k] : 0);
  }

  configs_.reserve(phonon_dim_ * n_sites);
  totals_.reserve(phonon_dim_);
  std::vector<int> m(n_sites, 0);
  int total = 0;
  for (std::size_t r = 0; r < phonon_dim_; ++r) {
    configs_.insert(configs_.end(), m.begin(), m.end());
    totals_.push_back(total);
    // Little-endian increment under the budget: clear the low digits and bump
    // the first position that still fits.
    int low = 0;
    for (int i = 0; i < n_sites; ++i) {
      if (total - low + 1 <= max_phonons) {
        for (int j = 0; j < i; ++j) m[j] = 0;
        ++m[i];
        total = total - low + 1;
        break;
      }
      low += m[i];
    }
  }
}

std::size_t HilbertSpace::binom(int n, int k) const {
  if (k < 0 || n < 0 || k > n) return 0;
  return binom_[static_cast<std::size_t>(n) * (n_sites_ + 2) + k];
}

std::size_t HilbertSpace::rank(std::span<const int> m) const {
  std::size_t r = 0;
  int budget = max_phonons_;
  for (int i = n_sites_ - 1; i >= 0; --i) {
    const int mi = m[i];
    if (mi > 0) {
      // sum_{v<mi} C(budget - v + i, i), collapsed by the hockey-stick identity
      r += binom(budget + i + 1, i + 1) - binom(budget - mi + i + 1, i + 1);
    }
    budget -= mi;
  }
  return r;
}

BasisState HilbertSpace::state_of(std::size_t index) const {
  const std::size_t r = phonon_index_of(index);
  auto m = phonons(r);
  return BasisState{site_of(index), PhononConfig(m.begin(), m.end())};
}

}  // namespace peierls
