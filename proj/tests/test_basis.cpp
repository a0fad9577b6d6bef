#include <numbers>
#include <set>
#include <stdexcept>

#include "doctest.h"
#include "peierls/basis.hpp"

using namespace peierls;

TEST_CASE("dimension closed form") {
  CHECK(dimension(6, 8) == 18018);
  CHECK(dimension(4, 4) == 280);
  CHECK(dimension(2, 1) == 6);
  CHECK(dimension(6, 0) == 6);
  CHECK(phonon_dimension(6, 8) == 3003);
  CHECK_THROWS_AS(dimension(200, 400), std::overflow_error);
}

TEST_CASE("invalid spaces are rejected") {
  CHECK_THROWS_AS(HilbertSpace(5, 2), std::invalid_argument);
  CHECK_THROWS_AS(HilbertSpace(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(HilbertSpace(4, -1), std::invalid_argument);
}

TEST_CASE("enumeration is a bijection and matches brute-force counting") {
  for (int n : {2, 4, 6}) {
    for (int m : {0, 1, 3, 5}) {
      const HilbertSpace space(n, m);
      // brute force: all occupation tuples with sum <= m
      std::size_t count = 0;
      std::vector<int> occ(n, 0);
      while (true) {
        int total = 0;
        for (int x : occ) total += x;
        if (total <= m) ++count;
        int i = 0;
        while (i < n && ++occ[i] > m) occ[i++] = 0;
        if (i == n) break;
      }
      REQUIRE(space.size() == static_cast<std::size_t>(n) * count);
      std::set<std::pair<int, std::vector<int>>> seen;
      for (std::size_t i = 0; i < space.size(); ++i) {
        const BasisState s = space.state_of(i);
        CHECK(space.index_of(s) == i);
        int total = 0;
        for (int x : s.phonons) {
          CHECK(x >= 0);
          total += x;
        }
        CHECK(total <= m);
        CHECK(total == space.total_phonons(space.phonon_index_of(i)));
        seen.insert({s.site, s.phonons});
      }
      CHECK(seen.size() == space.size());
    }
  }
}

TEST_CASE("site-major, little-endian ordering") {
  const HilbertSpace space(2, 1);
  CHECK(space.state_of(0) == BasisState{0, {0, 0}});
  CHECK(space.state_of(1) == BasisState{0, {1, 0}});
  CHECK(space.state_of(2) == BasisState{0, {0, 1}});
  CHECK(space.state_of(3) == BasisState{1, {0, 0}});
  const HilbertSpace big(6, 8);
  CHECK(big.index_of(BasisState{5, {0, 0, 0, 0, 0, 8}}) == big.size() - 1);
}

TEST_CASE("momentum grid") {
  const auto k = allowed_momenta(6);
  REQUIRE(k.size() == 6);
  const double pi = std::numbers::pi;
  const double expect[6] = {-2 * pi / 3, -pi / 3, 0, pi / 3, 2 * pi / 3, pi};
  for (int i = 0; i < 6; ++i) CHECK(k[i] == doctest::Approx(expect[i]).epsilon(1e-15));
  CHECK(k.back() == pi);
  CHECK(allowed_momenta(2) == std::vector<double>{0.0, pi});
}
