#include "foel/tl.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "foel/eigensolve.hpp"
#include "foel/operators.hpp"

namespace foel {

namespace {

bool chords_cross(std::pair<int, int> p, std::pair<int, int> q) {
  const auto [a, b] = p;
  const auto [c, d] = q;
  return (a < c && c < b && b < d) || (c < a && a < d && d < b);
}

ArcDiagram canonical_sorted(ArcDiagram d) {
  std::sort(d.arcs.begin(), d.arcs.end());
  return d;
}

}  // namespace

std::vector<int> ArcDiagram::unpaired() const {
  std::vector<bool> used(n_sites, false);
  for (const auto& [a, b] : arcs) used[a] = used[b] = true;
  std::vector<int> out;
  for (int i = 0; i < n_sites; ++i)
    if (!used[i]) out.push_back(i);
  return out;
}

bool ArcDiagram::valid() const {
  std::vector<bool> used(n_sites, false);
  for (const auto& [a, b] : arcs) {
    if (a < 0 || b >= n_sites || a >= b) return false;
    if (used[a] || used[b]) return false;
    used[a] = used[b] = true;
  }
  for (std::size_t i = 0; i < arcs.size(); ++i)
    for (std::size_t j = i + 1; j < arcs.size(); ++j)
      if (chords_cross(arcs[i], arcs[j])) return false;
  const std::vector<int> unp = unpaired();
  if (geometry == Geometry::chain) {
    // No unpaired site under an arc.
    for (const auto& [a, b] : arcs)
      for (int u : unp)
        if (a < u && u < b) return false;
    return true;
  }
  // Ring: for every chord all unpaired sites must lie on one side, so that
  // they share a face with the symmetrized-up blob.
  for (const auto& [a, b] : arcs) {
    int inside = 0;
    for (int u : unp)
      if (a < u && u < b) ++inside;
    if (inside != 0 && inside != static_cast<int>(unp.size())) return false;
  }
  return true;
}

std::vector<ArcDiagram> enumerate_diagrams(int n_sites, int k,
                                           Geometry geometry) {
  if (2 * k > n_sites) throw std::invalid_argument("need 2k <= N");
  std::vector<ArcDiagram> chain;
  std::vector<int> stack;
  std::vector<std::pair<int, int>> arcs;
  auto rec = [&](auto&& self, int pos) -> void {
    if (pos == n_sites) {
      if (stack.empty() && static_cast<int>(arcs.size()) == k) {
        ArcDiagram d{n_sites, Geometry::chain, arcs};
        chain.push_back(canonical_sorted(std::move(d)));
      }
      return;
    }
    if (static_cast<int>(arcs.size() + stack.size()) < k) {
      stack.push_back(pos);  // open an arc
      self(self, pos + 1);
      stack.pop_back();
    }
    if (!stack.empty()) {
      const int a = stack.back();
      stack.pop_back();
      arcs.emplace_back(a, pos);  // close the innermost open arc
      self(self, pos + 1);
      arcs.pop_back();
      stack.push_back(a);
    }
    if (stack.empty()) self(self, pos + 1);  // unpaired site at depth zero
  };
  rec(rec, 0);
  if (geometry == Geometry::chain) {
    std::sort(chain.begin(), chain.end());
    return chain;
  }
  std::set<ArcDiagram> ring;
  for (const auto& d : chain)
    for (int r = 0; r < n_sites; ++r) {
      ArcDiagram t{n_sites, Geometry::ring, {}};
      for (const auto& [a, b] : d.arcs) {
        int aa = (a + r) % n_sites, bb = (b + r) % n_sites;
        t.arcs.emplace_back(std::min(aa, bb), std::max(aa, bb));
      }
      ring.insert(canonical_sorted(std::move(t)));
    }
  return {ring.begin(), ring.end()};
}

DiagramVector apply_generator(std::pair<int, int> edge, const ArcDiagram& d) {
  const auto [u, v] = edge;
  int arc_u = -1, arc_v = -1;
  for (std::size_t i = 0; i < d.arcs.size(); ++i) {
    if (d.arcs[i].first == u || d.arcs[i].second == u)
      arc_u = static_cast<int>(i);
    if (d.arcs[i].first == v || d.arcs[i].second == v)
      arc_v = static_cast<int>(i);
  }
  DiagramVector out;
  if (arc_u < 0 && arc_v < 0) return out;  // up-up pair is annihilated

  // Orient an arc so the given site is its head; the canonical orientation
  // is tail->head = (small, large), so putting the head at `site` costs a
  // sign when `site` is the smaller endpoint.
  auto head_at = [&](int idx, int site) {
    const auto [a, b] = d.arcs[static_cast<std::size_t>(idx)];
    return (b == site) ? std::pair<int, int>{a, 1}
                       : std::pair<int, int>{b, -1};
  };
  const int s_uv = (u < v) ? 1 : -1;  // sign of storing psi_{u,v} canonically

  std::vector<std::pair<int, int>> rest;
  for (std::size_t i = 0; i < d.arcs.size(); ++i)
    if (static_cast<int>(i) != arc_u && static_cast<int>(i) != arc_v)
      rest.push_back(d.arcs[i]);

  ArcDiagram nd{d.n_sites, d.geometry, {}};
  long sign = 1;
  if (arc_u >= 0 && arc_u == arc_v) {
    // Loop closure: psi~_{u,v} psi_{u,v} = -2.
    nd.arcs = rest;
    nd.arcs.emplace_back(std::min(u, v), std::max(u, v));
    out[canonical_sorted(std::move(nd))] = mpq_class(-2);
    return out;
  }
  if (arc_v < 0) {
    sign = head_at(arc_u, u).second * s_uv;
    nd.arcs = rest;
    nd.arcs.emplace_back(std::min(u, v), std::max(u, v));
    out[canonical_sorted(std::move(nd))] = mpq_class(sign);
    return out;
  }
  if (arc_u < 0) {
    sign = -head_at(arc_v, v).second * s_uv;
    nd.arcs = rest;
    nd.arcs.emplace_back(std::min(u, v), std::max(u, v));
    out[canonical_sorted(std::move(nd))] = mpq_class(sign);
    return out;
  }
  // Re-wiring: psi~_{u,v}(psi_{x,u} (x) psi_{y,v}) = -psi_{x,y}.
  const auto [x, sa] = head_at(arc_u, u);
  const auto [y, sb] = head_at(arc_v, v);
  const int s_xy = (x < y) ? 1 : -1;
  nd.arcs = rest;
  nd.arcs.emplace_back(std::min(u, v), std::max(u, v));
  nd.arcs.emplace_back(std::min(x, y), std::max(x, y));
  sign = -sa * sb * s_uv * s_xy;
  out[canonical_sorted(std::move(nd))] = mpq_class(sign);
  return out;
}

RationalMatrix build_a_operator(int n_sites, int k, Geometry geometry) {
  const auto diags = enumerate_diagrams(n_sites, k, geometry);
  std::map<ArcDiagram, std::size_t> index;
  for (std::size_t i = 0; i < diags.size(); ++i) index[diags[i]] = i;
  const EdgeSet edges = make_edges(n_sites, geometry);
  RationalMatrix a(diags.size(), diags.size());
  for (std::size_t c = 0; c < diags.size(); ++c)
    for (const auto& e : edges)
      for (const auto& [nd, coeff] : apply_generator(e, diags[c])) {
        auto it = index.find(nd);
        if (it == index.end())
          throw std::logic_error("generator left the diagram space");
        a.at(it->second, c) += coeff;
      }
  return a;
}

RationalMatrix build_translation_on_diagrams(int n_sites, int k) {
  const auto diags = enumerate_diagrams(n_sites, k, Geometry::ring);
  std::map<ArcDiagram, std::size_t> index;
  for (std::size_t i = 0; i < diags.size(); ++i) index[diags[i]] = i;
  RationalMatrix t(diags.size(), diags.size());
  for (std::size_t c = 0; c < diags.size(); ++c) {
    ArcDiagram nd{n_sites, Geometry::ring, {}};
    int sign = 1;
    for (const auto& [a, b] : diags[c].arcs) {
      const int aa = (a + 1) % n_sites, bb = (b + 1) % n_sites;
      if (aa > bb) sign = -sign;  // orientation flip across the seam
      nd.arcs.emplace_back(std::min(aa, bb), std::max(aa, bb));
    }
    t.at(index.at(canonical_sorted(std::move(nd))), c) = sign;
  }
  return t;
}

RationalMatrix build_intertwiner(int n_sites, int k, Geometry geometry) {
  const auto diags = enumerate_diagrams(n_sites, k, geometry);
  const SectorBasis basis({n_sites, k, geometry});
  RationalMatrix l(basis.size(), diags.size());
  for (std::size_t c = 0; c < diags.size(); ++c) {
    const auto& arcs = diags[c].arcs;
    for (std::uint32_t mask = 0; mask < (1u << arcs.size()); ++mask) {
      std::uint32_t bits = 0;
      int sign = 1;
      for (std::size_t j = 0; j < arcs.size(); ++j) {
        if ((mask >> j) & 1u) {
          bits |= 1u << arcs[j].second;  // down at the head
          sign = -sign;
        } else {
          bits |= 1u << arcs[j].first;  // down at the tail
        }
      }
      l.at(basis.index_of(bits), c) += sign;
    }
  }
  return l;
}

RationalMatrix multiply(const RationalMatrix& x, const RationalMatrix& y) {
  if (x.cols != y.rows) throw std::invalid_argument("shape mismatch");
  RationalMatrix z(x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t l = 0; l < x.cols; ++l) {
      const mpq_class& xv = x.at(i, l);
      if (xv == 0) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const mpq_class& yv = y.at(l, j);
        if (yv != 0) z.at(i, j) += xv * yv;
      }
    }
  return z;
}

std::size_t exact_rank(RationalMatrix m) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j)
      std::swap(m.at(pivot, j), m.at(rank, j));
    const mpq_class inv = 1 / m.at(rank, c);
    for (std::size_t j = c; j < m.cols; ++j) m.at(rank, j) *= inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      const mpq_class f = m.at(r, c);
      for (std::size_t j = c; j < m.cols; ++j)
        m.at(r, j) -= f * m.at(rank, j);
    }
    ++rank;
  }
  return rank;
}

RationalMatrix exact_nullspace(const RationalMatrix& in) {
  RationalMatrix m = in;
  std::vector<std::ptrdiff_t> pivot_of_col(m.cols, -1);
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols && rank < m.rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < m.rows && m.at(pivot, c) == 0) ++pivot;
    if (pivot == m.rows) continue;
    for (std::size_t j = 0; j < m.cols; ++j)
      std::swap(m.at(pivot, j), m.at(rank, j));
    const mpq_class inv = 1 / m.at(rank, c);
    for (std::size_t j = c; j < m.cols; ++j) m.at(rank, j) *= inv;
    for (std::size_t r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      const mpq_class f = m.at(r, c);
      for (std::size_t j = c; j < m.cols; ++j)
        m.at(r, j) -= f * m.at(rank, j);
    }
    pivot_of_col[c] = static_cast<std::ptrdiff_t>(rank);
    ++rank;
  }
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols; ++c)
    if (pivot_of_col[c] < 0) free_cols.push_back(c);
  RationalMatrix ns(m.cols, free_cols.size());
  for (std::size_t f = 0; f < free_cols.size(); ++f) {
    const std::size_t fc = free_cols[f];
    ns.at(fc, f) = 1;
    for (std::size_t c = 0; c < m.cols; ++c)
      if (pivot_of_col[c] >= 0)
        ns.at(c, f) = -m.at(static_cast<std::size_t>(pivot_of_col[c]), fc);
  }
  return ns;
}

namespace {

Eigen::MatrixXd to_dense(const RationalMatrix& m) {
  Eigen::MatrixXd d(m.rows, m.cols);
  for (std::size_t r = 0; r < m.rows; ++r)
    for (std::size_t c = 0; c < m.cols; ++c) d(r, c) = m.at(r, c).get_d();
  return d;
}

// Absolute threshold: L has integer entries of order one and the eigenspace
// basis is orthonormal, so surviving directions produce singular values of
// order one while kernel directions sit at roundoff level.
std::size_t numeric_rank(const Eigen::MatrixXd& m, double tol = 1e-6) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
  const auto& sv = svd.singularValues();
  std::size_t r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv[i] > tol) ++r;
  return r;
}

// Multiset of 2H eigenvalues on the spin-(N/2 - k) levels via the ED route.
std::vector<double> ed_route_multiset(int n_sites, int k) {
  const SectorBasis basis({n_sites, k, Geometry::ring});
  SolveOptions opts;
  opts.dense_threshold = std::max<std::size_t>(basis.size(), 4096);
  const SpectrumReport report = full_spectrum(basis, opts);
  const double s_target = n_sites / 2.0 - k;
  std::vector<double> out;
  for (const auto& lvl : report.levels)
    if (lvl.total_spin_s == s_target)
      out.insert(out.end(), lvl.multiplicity, lvl.energy_2h);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TlSpectrumResult ring_spectrum_via_diagrams(int n_sites, int k) {
  if (n_sites % 2 != 0)
    throw std::invalid_argument("diagram route expects an even ring");
  TlSpectrumResult result;
  result.n_sites = n_sites;
  result.k = k;

  const RationalMatrix a = build_a_operator(n_sites, k, Geometry::ring);
  const RationalMatrix l = build_intertwiner(n_sites, k, Geometry::ring);
  result.diagram_count = a.rows;
  result.kernel_dim = a.rows - exact_rank(l);

  const Eigen::MatrixXd ad = to_dense(a);
  const Eigen::MatrixXd ld = to_dense(l);
  Eigen::EigenSolver<Eigen::MatrixXd> es(ad);
  if (es.info() != Eigen::Success)
    throw SolverError("eigensolver failed on the diagram operator");

  const Eigen::MatrixXcd evecs = es.eigenvectors();
  bool fallback = false;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
    if (std::abs(es.eigenvalues()[i].imag()) > 1e-7) fallback = true;

  std::vector<std::pair<double, Eigen::Index>> order;
  if (!fallback) {
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      order.emplace_back(es.eigenvalues()[i].real(), i);
    std::sort(order.begin(), order.end());
  }

  std::vector<double> kept;
  if (!fallback) {
    std::size_t i = 0;
    while (i < order.size()) {
      std::size_t j = i + 1;
      while (j < order.size() && order[j].first - order[j - 1].first < 1e-7)
        ++j;
      const std::size_t mult = j - i;
      const double lambda = (order[i].first + order[j - 1].first) / 2.0;

      // Real basis of the cluster eigenspace from the complex eigenvectors.
      Eigen::MatrixXd b(ad.rows(), 2 * mult);
      for (std::size_t q = i; q < j; ++q) {
        b.col(2 * (q - i)) = evecs.col(order[q].second).real();
        b.col(2 * (q - i) + 1) = evecs.col(order[q].second).imag();
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> bsvd(
          b, Eigen::ComputeThinU | Eigen::ComputeThinV);
      std::size_t brank = 0;
      for (Eigen::Index q = 0; q < bsvd.singularValues().size(); ++q)
        if (bsvd.singularValues()[q] > 1e-8 * bsvd.singularValues()[0])
          ++brank;
      if (brank != mult) {
        fallback = true;  // defective cluster
        break;
      }
      const Eigen::MatrixXd eigenspace = bsvd.matrixU().leftCols(brank);

      std::size_t surviving = numeric_rank(ld * eigenspace);
      double lambda_out = lambda;

      // Integer eigenvalues are re-verified with exact arithmetic.
      const double rounded = std::round(lambda);
      if (std::abs(lambda - rounded) < 1e-8) {
        RationalMatrix shifted = a;
        const mpq_class lam(static_cast<long>(rounded));
        for (std::size_t r = 0; r < shifted.rows; ++r)
          shifted.at(r, r) -= lam;
        const RationalMatrix kernel = exact_nullspace(shifted);
        if (kernel.cols != mult) {
          fallback = true;  // numeric clustering disagrees with exact rank
          break;
        }
        surviving = exact_rank(multiply(l, kernel));
        lambda_out = rounded;
      }

      for (std::size_t q = 0; q < surviving; ++q) kept.push_back(-lambda_out);
      if (surviving < mult) result.removed_a.push_back(lambda_out);
      i = j;
    }
  }

  if (fallback) {
    result.defective_fallback = true;
    result.energies_2h = ed_route_multiset(n_sites, k);
    result.removed_a.clear();
    return result;
  }
  std::sort(kept.begin(), kept.end());
  result.energies_2h = std::move(kept);
  std::sort(result.removed_a.begin(), result.removed_a.end());
  return result;
}

}  // namespace foel
