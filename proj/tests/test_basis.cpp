#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>
#include <vector>

#include "foel/basis.hpp"

using namespace foel;

TEST_CASE("sector enumeration counts") {
  CHECK(SectorBasis({4, 0, Geometry::ring}).size() == 1);
  CHECK(SectorBasis({4, 2, Geometry::ring}).size() == 6);
  CHECK(SectorBasis({6, 3, Geometry::ring}).size() == 20);
  CHECK(SectorBasis({16, 8, Geometry::ring}).size() == 12870);
  // Capacity bound: one 32-bit word.
  const SectorBasis wide({32, 1, Geometry::ring});
  CHECK(wide.size() == 32);
  CHECK(wide.index_of(1u << 31) == 31);
  CHECK(SectorBasis({32, 31, Geometry::ring}).size() == 32);
}

TEST_CASE("enumeration is sorted and duplicate-free with exact lookup") {
  for (int n : {3, 5, 8, 10})
    for (int k = 0; k <= n; ++k) {
      const SectorBasis b({n, k, Geometry::ring});
      CHECK(b.size() == binomial(n, k));
      for (std::size_t i = 0; i < b.size(); ++i) {
        if (i > 0) CHECK(b.bits(i - 1) < b.bits(i));
        CHECK(__builtin_popcount(b.bits(i)) == k);
        CHECK(b.index_of(b.bits(i)) == i);
      }
    }
}

TEST_CASE("capacity and geometry guards") {
  CHECK_THROWS(SectorBasis({33, 1, Geometry::ring}));
  CHECK_THROWS(SectorBasis({2, 1, Geometry::ring}));   // doubled edge
  CHECK_NOTHROW(SectorBasis({2, 1, Geometry::chain}));
}

TEST_CASE("translation action") {
  // All-up is fixed.
  CHECK(translate({0u, 4}).bits == 0u);
  // Down at site 0 moves to site 1.
  CHECK(translate({1u, 4}).bits == 2u);
  // Down at {0,2}: one step gives {1,3}, two steps return (period 2).
  const SpinConfiguration c{0b0101u, 4};
  const SpinConfiguration t = translate(c);
  CHECK(t.bits == 0b1010u);
  CHECK(translate(t).bits == c.bits);
  // Wrap-around.
  CHECK(translate({0b1000u, 4}).bits == 0b0001u);
}

TEST_CASE("translation is a sector bijection with period dividing N") {
  for (int n : {4, 6, 7})
    for (int k = 1; k < n; ++k) {
      const SectorBasis b({n, k, Geometry::ring});
      std::vector<bool> hit(b.size(), false);
      for (std::size_t i = 0; i < b.size(); ++i) {
        SpinConfiguration c = b.state(i);
        CHECK(translate(c).magnons() == k);
        hit[b.index_of(translate(c).bits)] = true;
        for (int t = 0; t < n; ++t) c = translate(c);
        CHECK(c.bits == b.bits(i));  // T^N = identity
      }
      CHECK(std::count(hit.begin(), hit.end(), false) == 0);
    }
}

TEST_CASE("orbit decomposition") {
  auto periods = [](int n, int k) {
    std::multiset<int> out;
    for (const auto& o : orbit_decompose(SectorBasis({n, k, Geometry::ring})))
      out.insert(o.period);
    return out;
  };
  CHECK(periods(4, 2) == std::multiset<int>{2, 4});
  CHECK(periods(4, 1) == std::multiset<int>{4});
  CHECK(periods(6, 3) == std::multiset<int>{2, 6, 6, 6});

  for (int n : {4, 6, 9})
    for (int k = 0; k <= n; ++k) {
      const SectorBasis b({n, k, Geometry::ring});
      const auto orbits = orbit_decompose(b);
      std::uint64_t total = 0;
      for (const auto& o : orbits) {
        CHECK(n % o.period == 0);
        total += o.period;
        // Representative is the orbit minimum and has the stated period.
        SpinConfiguration c = o.representative;
        for (int t = 0; t < o.period; ++t) {
          CHECK(c.bits >= o.representative.bits);
          c = translate(c);
        }
        CHECK(c.bits == o.representative.bits);
      }
      CHECK(total == b.size());
    }
}
