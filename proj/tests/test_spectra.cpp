#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "foel/spectra.hpp"

using namespace foel;

TEST_CASE("E0 tables for the square and the hexagon") {
  const EnergyTable t4 = e0_table(4, Geometry::ring);
  REQUIRE(t4.e0_h.size() == 3);
  CHECK(t4.e0_h[0] == 0.0);
  CHECK(std::abs(t4.e0_h[1] - 1.0) < 1e-10);
  CHECK(std::abs(t4.e0_h[2] - 1.0) < 1e-10);

  const EnergyTable t6 = e0_table(6, Geometry::ring);
  REQUIRE(t6.e0_h.size() == 4);
  CHECK(t6.e0_h[0] == 0.0);
  CHECK(std::abs(t6.e0_h[1] - 0.5) < 1e-10);
  CHECK(std::abs(t6.e0_h[2] - (7.0 - std::sqrt(17.0)) / 4.0) < 1e-10);
  CHECK(std::abs(t6.e0_h[3] - (5.0 - std::sqrt(13.0)) / 2.0) < 1e-10);
}

TEST_CASE("the hexagon reproduces the printed decimals") {
  const EnergyTable t6 = e0_table(6, Geometry::ring);
  CHECK(std::abs(t6.e0_h[3] - 0.697224362) < 1e-9);
  CHECK(std::abs(t6.e0_h[2] - 0.719223593) < 1e-9);
}

TEST_CASE("FOEL findings") {
  const auto f4 = foel_check(e0_table(4, Geometry::ring));
  CHECK(f4.violations.empty());
  REQUIRE(f4.equalities.size() == 1);
  CHECK(f4.equalities[0].k == 1);
  CHECK(f4.equalities[0].l == 2);

  const auto f6 = foel_check(e0_table(6, Geometry::ring));
  REQUIRE(f6.violations.size() == 1);
  CHECK(f6.violations[0].k == 2);
  CHECK(f6.violations[0].l == 3);

  const auto f8 = foel_check(e0_table(8, Geometry::ring));
  bool found43 = false;
  for (const auto& p : f8.violations)
    if (p.k == 3 && p.l == 4) found43 = true;
  CHECK(found43);

  for (int n : {5, 7}) {
    const auto f = foel_check(e0_table(n, Geometry::ring));
    CHECK(f.violations.empty());
  }
}

TEST_CASE("FOEL holds at level 1 everywhere computed") {
  for (int n = 3; n <= 10; ++n) {
    const EnergyTable t = e0_table(n, Geometry::ring);
    CHECK(t.e0_h[0] == 0.0);
    for (std::size_t l = 1; l < t.e0_h.size(); ++l) {
      CHECK(t.e0_h[l] >= 0.0);
      CHECK(t.e0_h[1] <= t.e0_h[l] + 1e-12);
    }
  }
}

TEST_CASE("open chains are FOEL-ordered") {
  for (int n : {4, 6, 8}) {
    const EnergyTable t = e0_table(n, Geometry::chain);
    for (std::size_t k = 0; k + 1 < t.e0_h.size(); ++k)
      CHECK(t.e0_h[k] <= t.e0_h[k + 1] + 1e-12);
  }
}

TEST_CASE("Sutherland surmise on small rings") {
  for (int n : {4, 5, 6, 8}) {
    const SutherlandReport r = sutherland_check(n);
    CHECK(r.entries.size() == static_cast<std::size_t>(n / 2 + 1));
    CHECK(r.all_equal);
  }
}

TEST_CASE("degeneracy scan") {
  const auto r6 = full_spectrum(SectorBasis({6, 3, Geometry::ring}));
  const auto d6 = degeneracy_scan(r6);
  bool hex = false;
  for (const auto& p : d6)
    if (std::abs(p.energy_2h - 4.0) < 1e-9 &&
        ((p.spin_a == 2.0 && p.spin_b == 0.0) ||
         (p.spin_a == 0.0 && p.spin_b == 2.0)))
      hex = true;
  CHECK(hex);

  const auto r4 = full_spectrum(SectorBasis({4, 2, Geometry::ring}));
  const auto d4 = degeneracy_scan(r4);
  bool square = false;
  for (const auto& p : d4)
    if (std::abs(p.energy_2h - 2.0) < 1e-9) square = true;
  CHECK(square);

  const auto r5 = full_spectrum(SectorBasis({5, 2, Geometry::ring}));
  CHECK(degeneracy_scan(r5).empty());
}
