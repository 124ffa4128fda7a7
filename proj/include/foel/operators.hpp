#pragma once

#include <span>
#include <utility>
#include <vector>

#include "foel/basis.hpp"

// Action of 2H, the translation T, and total spin S^2 on a sector basis.
// 2H is realized through the swap picture: an edge with anti-aligned spins
// contributes x[c] - x[c_swapped]; aligned edges contribute nothing.  This
// is 2h_e = 1 - SWAP_e per edge, the integer-matrix form of the Heisenberg
// interaction shifted to ground-state energy zero.

namespace foel {

using EdgeSet = std::vector<std::pair<int, int>>;

// Ring: {0,1},...,{N-2,N-1},{N-1,0}.  Chain: without the closing edge.
EdgeSet make_edges(int n_sites, Geometry geometry);

void apply_two_h(const SectorBasis& basis, const EdgeSet& edges,
                 std::span<const double> x, std::span<double> y);

void apply_translation_op(const SectorBasis& basis, std::span<const double> x,
                          std::span<double> y);

// S^2 = N(N+2)/4 + sum_{i<j} (P_ij - 1) restricted to the sector, where
// P_ij transposes the spins at sites i and j.  Eigenvalue s(s+1) on
// total-spin-s eigenvectors.
void apply_total_spin(const SectorBasis& basis, std::span<const double> x,
                      std::span<double> y);

enum class WhichOperator { two_h, translation, total_spin };

// Compressed sparse rows; column indices ascending within each row.
struct SparseOperator {
  std::size_t dim = 0;
  std::vector<std::size_t> row_ptr;
  std::vector<std::size_t> col;
  std::vector<double> val;
  bool symmetric = false;

  void apply(std::span<const double> x, std::span<double> y) const;
};

// Materialize one of the operators.  `max_dim` guards against accidentally
// materializing a sector that should stay matrix-free.
SparseOperator build_sparse(const SectorBasis& basis, WhichOperator which,
                            std::size_t max_dim = 1u << 20);

}  // namespace foel
