#include "foel/operators.hpp"

#include <map>
#include <stdexcept>

namespace foel {

EdgeSet make_edges(int n_sites, Geometry geometry) {
  if (geometry == Geometry::ring && n_sites < 3)
    throw std::invalid_argument("ring needs N >= 3");
  if (n_sites < 2) throw std::invalid_argument("need at least two sites");
  EdgeSet edges;
  for (int i = 0; i + 1 < n_sites; ++i) edges.emplace_back(i, i + 1);
  if (geometry == Geometry::ring) edges.emplace_back(n_sites - 1, 0);
  return edges;
}

namespace {

void check_dims(const SectorBasis& basis, std::span<const double> x,
                std::span<double> y) {
  if (x.size() != basis.size() || y.size() != basis.size())
    throw std::invalid_argument("vector length does not match sector dimension");
}

}  // namespace

void apply_two_h(const SectorBasis& basis, const EdgeSet& edges,
                 std::span<const double> x, std::span<double> y) {
  check_dims(basis, x, y);
  std::fill(y.begin(), y.end(), 0.0);
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const std::uint32_t c = basis.bits(a);
    const double xa = x[a];
    for (const auto& [u, v] : edges) {
      const bool du = (c >> u) & 1u, dv = (c >> v) & 1u;
      if (du == dv) continue;
      y[a] += xa;
      const std::uint32_t swapped = c ^ (1u << u) ^ (1u << v);
      y[basis.index_of(swapped)] -= xa;
    }
  }
}

void apply_translation_op(const SectorBasis& basis, std::span<const double> x,
                          std::span<double> y) {
  if (basis.sector().geometry != Geometry::ring)
    throw std::invalid_argument("translation needs ring geometry");
  check_dims(basis, x, y);
  for (std::size_t a = 0; a < basis.size(); ++a)
    y[basis.index_of(translate(basis.state(a)).bits)] = x[a];
}

void apply_total_spin(const SectorBasis& basis, std::span<const double> x,
                      std::span<double> y) {
  check_dims(basis, x, y);
  const int n = basis.sector().n_sites;
  const double c0 = n * (n + 2) / 4.0;
  for (std::size_t a = 0; a < basis.size(); ++a) y[a] = c0 * x[a];
  for (std::size_t a = 0; a < basis.size(); ++a) {
    const std::uint32_t c = basis.bits(a);
    const double xa = x[a];
    int anti = 0;
    for (int u = 0; u < n; ++u) {
      const bool du = (c >> u) & 1u;
      for (int v = u + 1; v < n; ++v) {
        if (du == ((c >> v) & 1u)) continue;
        ++anti;
        y[basis.index_of(c ^ (1u << u) ^ (1u << v))] += xa;
      }
    }
    y[a] -= anti * xa;
  }
}

void SparseOperator::apply(std::span<const double> x,
                           std::span<double> y) const {
  if (x.size() != dim || y.size() != dim)
    throw std::invalid_argument("vector length does not match operator");
  for (std::size_t r = 0; r < dim; ++r) {
    double s = 0.0;
    for (std::size_t p = row_ptr[r]; p < row_ptr[r + 1]; ++p)
      s += val[p] * x[col[p]];
    y[r] = s;
  }
}

SparseOperator build_sparse(const SectorBasis& basis, WhichOperator which,
                            std::size_t max_dim) {
  const std::size_t d = basis.size();
  if (d > max_dim)
    throw std::invalid_argument("sector dimension exceeds materialization cap");
  // Row-wise accumulation; maps keep columns sorted and merge duplicates.
  std::vector<std::map<std::size_t, double>> rows(d);
  const int n = basis.sector().n_sites;
  auto add = [&](std::size_t r, std::size_t c, double v) {
    auto [it, inserted] = rows[r].try_emplace(c, v);
    if (!inserted) it->second += v;
  };
  switch (which) {
    case WhichOperator::two_h: {
      const EdgeSet edges = make_edges(n, basis.sector().geometry);
      for (std::size_t a = 0; a < d; ++a) {
        const std::uint32_t c = basis.bits(a);
        for (const auto& [u, v] : edges) {
          if (((c >> u) & 1u) == ((c >> v) & 1u)) continue;
          add(a, a, 1.0);
          add(basis.index_of(c ^ (1u << u) ^ (1u << v)), a, -1.0);
        }
      }
      break;
    }
    case WhichOperator::translation: {
      if (basis.sector().geometry != Geometry::ring)
        throw std::invalid_argument("translation needs ring geometry");
      for (std::size_t a = 0; a < d; ++a)
        add(basis.index_of(translate(basis.state(a)).bits), a, 1.0);
      break;
    }
    case WhichOperator::total_spin: {
      const double c0 = n * (n + 2) / 4.0;
      for (std::size_t a = 0; a < d; ++a) {
        const std::uint32_t c = basis.bits(a);
        int anti = 0;
        for (int u = 0; u < n; ++u)
          for (int v = u + 1; v < n; ++v) {
            if (((c >> u) & 1u) == ((c >> v) & 1u)) continue;
            ++anti;
            add(basis.index_of(c ^ (1u << u) ^ (1u << v)), a, 1.0);
          }
        add(a, a, c0 - anti);
      }
      break;
    }
  }
  SparseOperator op;
  op.dim = d;
  op.symmetric = which != WhichOperator::translation;
  op.row_ptr.resize(d + 1, 0);
  for (std::size_t r = 0; r < d; ++r) {
    for (auto& [c, v] : rows[r]) {
      if (v == 0.0) continue;  // drop explicit zeros
      op.col.push_back(c);
      op.val.push_back(v);
    }
    op.row_ptr[r + 1] = op.col.size();
  }
  return op;
}

}  // namespace foel
