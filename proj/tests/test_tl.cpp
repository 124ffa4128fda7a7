#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <vector>

#include "foel/eigensolve.hpp"
#include "foel/operators.hpp"
#include "foel/tl.hpp"

using namespace foel;

namespace {

RationalMatrix u_matrix(std::pair<int, int> edge,
                        const std::vector<ArcDiagram>& diags) {
  std::map<ArcDiagram, std::size_t> index;
  for (std::size_t i = 0; i < diags.size(); ++i) index[diags[i]] = i;
  RationalMatrix m(diags.size(), diags.size());
  for (std::size_t c = 0; c < diags.size(); ++c)
    for (const auto& [nd, coeff] : apply_generator(edge, diags[c]))
      m.at(index.at(nd), c) += coeff;
  return m;
}

bool equal(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows != b.rows || a.cols != b.cols) return false;
  for (std::size_t i = 0; i < a.a.size(); ++i)
    if (a.a[i] != b.a[i]) return false;
  return true;
}

RationalMatrix scale(RationalMatrix m, long f) {
  for (auto& v : m.a) v *= f;
  return m;
}

RationalMatrix rational_two_h(const SectorBasis& basis) {
  const SparseOperator h = build_sparse(basis, WhichOperator::two_h);
  RationalMatrix m(h.dim, h.dim);
  for (std::size_t r = 0; r < h.dim; ++r)
    for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p)
      m.at(r, h.col[p]) = mpq_class(static_cast<long>(h.val[p]));
  return m;
}

ArcDiagram diag(int n, Geometry g, std::vector<std::pair<int, int>> arcs) {
  return ArcDiagram{n, g, std::move(arcs)};
}

}  // namespace

TEST_CASE("diagram enumeration counts") {
  // Chain N=4, k=1: arcs {0,1}, {1,2}, {2,3}.
  const auto c41 = enumerate_diagrams(4, 1, Geometry::chain);
  REQUIRE(c41.size() == 3);
  CHECK(c41[0].arcs == std::vector<std::pair<int, int>>{{0, 1}});
  CHECK(c41[1].arcs == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(c41[2].arcs == std::vector<std::pair<int, int>>{{2, 3}});

  // Ring N=4, k=1 adds the closing arc.
  const auto r41 = enumerate_diagrams(4, 1, Geometry::ring);
  CHECK(r41.size() == 4);

  // Chain N=6, k=3: the five noncrossing perfect matchings.
  CHECK(enumerate_diagrams(6, 3, Geometry::chain).size() == 5);

  // Ring bases used by the closed-form sectors.
  CHECK(enumerate_diagrams(4, 2, Geometry::ring).size() == 2);
  CHECK(enumerate_diagrams(6, 2, Geometry::ring).size() == 15);
  CHECK(enumerate_diagrams(6, 3, Geometry::ring).size() == 5);

  // Every enumerated diagram passes its own validity predicate.
  for (const auto& d : enumerate_diagrams(8, 3, Geometry::ring))
    CHECK(d.valid());
}

TEST_CASE("chain dimension identity") {
  for (int n = 2; n <= 12; ++n)
    for (int k = 0; 2 * k <= n; ++k)
      CHECK(enumerate_diagrams(n, k, Geometry::chain).size() ==
            binomial(n, k) - binomial(n, k - 1));
}

TEST_CASE("generator action on the displayed examples") {
  // U_{1,2} (psi_{01} (x) up up) = + psi_{12} (x) up up
  const auto d1 = diag(4, Geometry::chain, {{0, 1}});
  const auto r1 = apply_generator({1, 2}, d1);
  REQUIRE(r1.size() == 1);
  CHECK(r1.begin()->first.arcs == std::vector<std::pair<int, int>>{{1, 2}});
  CHECK(r1.begin()->second == 1);

  // U_{1,2} (psi_{12} ...) = -2 psi_{12}
  const auto d2 = diag(4, Geometry::chain, {{1, 2}});
  const auto r2 = apply_generator({1, 2}, d2);
  REQUIRE(r2.size() == 1);
  CHECK(r2.begin()->first == d2);
  CHECK(r2.begin()->second == -2);

  // U_{1,2} (psi_{01} (x) psi_{23}) = psi_{03} (x) psi_{12}
  const auto d3 = diag(4, Geometry::chain, {{0, 1}, {2, 3}});
  const auto r3 = apply_generator({1, 2}, d3);
  REQUIRE(r3.size() == 1);
  CHECK(r3.begin()->first.arcs ==
        std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});
  CHECK(r3.begin()->second == 1);

  // U on an up-up pair annihilates.
  CHECK(apply_generator({2, 3}, d1).empty());
}

TEST_CASE("Temperley-Lieb relations as exact matrix identities") {
  for (int n : {4, 6})
    for (Geometry g : {Geometry::ring, Geometry::chain})
      for (int k = 1; 2 * k <= n; ++k) {
        const auto diags = enumerate_diagrams(n, k, g);
        const EdgeSet edges = make_edges(n, g);
        std::vector<RationalMatrix> us;
        for (const auto& e : edges) us.push_back(u_matrix(e, diags));
        for (std::size_t i = 0; i < edges.size(); ++i) {
          CHECK(equal(multiply(us[i], us[i]), scale(us[i], -2)));
          for (std::size_t j = 0; j < edges.size(); ++j) {
            if (i == j) continue;
            const bool adjacent =
                edges[i].first == edges[j].first ||
                edges[i].first == edges[j].second ||
                edges[i].second == edges[j].first ||
                edges[i].second == edges[j].second;
            if (adjacent)
              CHECK(equal(multiply(us[i], multiply(us[j], us[i])), us[i]));
            else
              CHECK(equal(multiply(us[i], us[j]), multiply(us[j], us[i])));
          }
        }
      }
}

TEST_CASE("intertwining identity L A = -2H L, exactly") {
  for (int n : {4, 6, 8})
    for (Geometry g : {Geometry::ring, Geometry::chain})
      for (int k = 1; 2 * k <= n; ++k) {
        const RationalMatrix a = build_a_operator(n, k, g);
        const RationalMatrix l = build_intertwiner(n, k, g);
        const RationalMatrix h = rational_two_h(SectorBasis({n, k, g}));
        CHECK(equal(multiply(l, a), scale(multiply(h, l), -1)));
      }
}

TEST_CASE("chain intertwiner is an isomorphism") {
  for (int n : {4, 6, 8})
    for (int k = 1; 2 * k <= n; ++k) {
      const RationalMatrix l = build_intertwiner(n, k, Geometry::chain);
      CHECK(exact_rank(l) == l.cols);
      CHECK(l.cols == binomial(n, k) - binomial(n, k - 1));
    }
}

TEST_CASE("momentum-resolved A spectrum on the C4 one-deviate space") {
  // A phi(z) = (-2 + z + z^3) phi(z) for z in {1, i, -1, -i}:
  // eigenvalues {0, -2, -2, -4}.
  const RationalMatrix a = build_a_operator(4, 1, Geometry::ring);
  const RationalMatrix t = build_translation_on_diagrams(4, 1);
  Eigen::MatrixXcd ad(4, 4), td(4, 4);
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      ad(r, c) = a.at(r, c).get_d();
      td(r, c) = t.at(r, c).get_d();
    }
  CHECK((ad * td - td * ad).cwiseAbs().maxCoeff() == 0.0);
  const std::complex<double> i(0, 1);
  for (auto [z, lam] : std::vector<std::pair<std::complex<double>, double>>{
           {{1, 0}, 0.0}, {i, -2.0}, {-i, -2.0}, {{-1, 0}, -4.0}}) {
    // Project a delta vector onto the z-momentum eigenspace of T.
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(4);
    e0[0] = 1.0;
    Eigen::MatrixXcd tp = Eigen::MatrixXcd::Identity(4, 4);
    for (int p = 0; p < 4; ++p) {
      v += std::pow(z, -p) * (tp * e0);
      tp = td * tp;
    }
    REQUIRE(v.norm() > 1e-12);
    CHECK((ad * v - lam * v).norm() < 1e-12);
  }
}

TEST_CASE("ring spectra via diagrams match the closed forms") {
  // C4, k=1: kernel is one-dimensional; spectrum {2, 4}.
  const auto r41 = ring_spectrum_via_diagrams(4, 1);
  CHECK(r41.kernel_dim == 1);
  CHECK_FALSE(r41.defective_fallback);
  REQUIRE(r41.energies_2h.size() == 3);
  CHECK(std::abs(r41.energies_2h[0] - 2) < 1e-9);
  CHECK(std::abs(r41.energies_2h[1] - 2) < 1e-9);
  CHECK(std::abs(r41.energies_2h[2] - 4) < 1e-9);
  REQUIRE(r41.removed_a.size() == 1);
  CHECK(std::abs(r41.removed_a[0]) < 1e-9);

  // C4, k=2: trivial kernel, spectrum {2, 6}.
  const auto r42 = ring_spectrum_via_diagrams(4, 2);
  CHECK(r42.kernel_dim == 0);
  REQUIRE(r42.energies_2h.size() == 2);
  CHECK(std::abs(r42.energies_2h[0] - 2) < 1e-9);
  CHECK(std::abs(r42.energies_2h[1] - 6) < 1e-9);

  // C6, k=1: kernel dim 1, spectrum {1, 3, 4}.
  const auto r61 = ring_spectrum_via_diagrams(6, 1);
  CHECK(r61.kernel_dim == 1);
  std::vector<double> want61{1, 1, 3, 3, 4};
  REQUIRE(r61.energies_2h.size() == want61.size());
  for (std::size_t q = 0; q < want61.size(); ++q)
    CHECK(std::abs(r61.energies_2h[q] - want61[q]) < 1e-9);

  // C6, k=2: removed A-eigenvalues {0, -1, -3, -4}.
  const auto r62 = ring_spectrum_via_diagrams(6, 2);
  CHECK(r62.kernel_dim == 6);
  REQUIRE(r62.removed_a.size() == 4);
  const double want_removed[] = {-4, -3, -1, 0};
  for (int q = 0; q < 4; ++q)
    CHECK(std::abs(r62.removed_a[q] - want_removed[q]) < 1e-9);
  const double s17 = std::sqrt(17.0), s5 = std::sqrt(5.0);
  const std::vector<double> want62{(7 - s17) / 2, (7 - s17) / 2, 2,
                                   5 - s5,        5,            5,
                                   5 + s5,        (7 + s17) / 2, (7 + s17) / 2};
  REQUIRE(r62.energies_2h.size() == want62.size());
  auto sorted62 = want62;
  std::sort(sorted62.begin(), sorted62.end());
  for (std::size_t q = 0; q < sorted62.size(); ++q)
    CHECK(std::abs(r62.energies_2h[q] - sorted62[q]) < 1e-9);

  // C6, k=3: A eigenvalues include -5 +- sqrt(13) at z = -1.
  const auto r63 = ring_spectrum_via_diagrams(6, 3);
  const double s13 = std::sqrt(13.0);
  const std::vector<double> want63{5 - s13, 4, 4, 6, 5 + s13};
  REQUIRE(r63.energies_2h.size() == want63.size());
  for (std::size_t q = 0; q < want63.size(); ++q)
    CHECK(std::abs(r63.energies_2h[q] - want63[q]) < 1e-9);
}

TEST_CASE("route equivalence against the sector eigensolver") {
  for (int n : {4, 6, 8})
    for (int k = 1; k <= n / 2; ++k) {
      const auto tl = ring_spectrum_via_diagrams(n, k);
      CHECK_FALSE(tl.defective_fallback);
      const auto ed = full_spectrum(SectorBasis({n, k, Geometry::ring}));
      std::vector<double> want;
      for (const auto& lvl : ed.levels)
        if (lvl.total_spin_s == n / 2.0 - k)
          want.insert(want.end(), lvl.multiplicity, lvl.energy_2h);
      std::sort(want.begin(), want.end());
      REQUIRE(tl.energies_2h.size() == want.size());
      for (std::size_t q = 0; q < want.size(); ++q)
        CHECK(std::abs(tl.energies_2h[q] - want[q]) < 1e-9);
    }
}
