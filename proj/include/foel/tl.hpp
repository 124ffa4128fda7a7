#pragma once

#include <gmpxx.h>

#include <map>
#include <utility>
#include <vector>

#include "foel/basis.hpp"

// Graphical route to the sector spectra: oriented noncrossing arc diagrams,
// the generator sum A acting on the formal diagram space V, and the
// intertwiner L from V onto the highest-weight spin basis.  A and L are
// exact integer matrices; eigenvalues of A whose eigenspaces survive L give
// the 2H spectrum through 2H = -A on the image.
//
// Each arc is stored tail-to-head as (a, b) with a < b; reversing an
// orientation flips the sign of the coefficient, so every diagram produced
// by a generator is canonicalized back into this form.

namespace foel {

struct ArcDiagram {
  int n_sites = 0;
  Geometry geometry = Geometry::ring;
  std::vector<std::pair<int, int>> arcs;  // canonical: a < b, sorted by a

  std::vector<int> unpaired() const;
  bool valid() const;

  friend auto operator<=>(const ArcDiagram&, const ArcDiagram&) = default;
};

using DiagramVector = std::map<ArcDiagram, mpq_class>;

struct RationalMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<mpq_class> a;

  RationalMatrix() = default;
  RationalMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c) {}
  mpq_class& at(std::size_t r, std::size_t c) { return a[r * cols + c]; }
  const mpq_class& at(std::size_t r, std::size_t c) const {
    return a[r * cols + c];
  }
};

RationalMatrix multiply(const RationalMatrix& x, const RationalMatrix& y);
std::size_t exact_rank(RationalMatrix m);  // by value: eliminates in place
// Columns span the right null space of m.
RationalMatrix exact_nullspace(const RationalMatrix& m);

// All valid diagrams with k arcs.  Chains: a < b per arc, noncrossing, no
// arc over an unpaired site.  Rings: every translate of every chain
// diagram, de-duplicated after canonicalization.
std::vector<ArcDiagram> enumerate_diagrams(int n_sites, int k,
                                           Geometry geometry);

// TL generator U_{u,v} on a canonical diagram: closes loops with -2,
// re-wires arcs, annihilates parallel up-pairs.
DiagramVector apply_generator(std::pair<int, int> edge, const ArcDiagram& d);

// Matrix of A = sum of edge generators in the enumerate_diagrams order.
RationalMatrix build_a_operator(int n_sites, int k, Geometry geometry);

// Signed permutation matrix of the translation on the canonical diagram
// basis (ring only).
RationalMatrix build_translation_on_diagrams(int n_sites, int k);

// L: V -> k-magnon sector coordinates, expanding every arc (a,b) into
// down-at-a minus down-at-b.  Shape: sector dimension x |V|.
RationalMatrix build_intertwiner(int n_sites, int k, Geometry geometry);

struct TlSpectrumResult {
  int n_sites = 0, k = 0;
  std::size_t diagram_count = 0;
  std::size_t kernel_dim = 0;
  std::vector<double> energies_2h;     // kept multiset, ascending
  std::vector<double> removed_a;       // removed A-eigenvalues, distinct
  bool defective_fallback = false;     // spectra taken from the ED route
};

// Spectrum of 2H on the spin-(N/2 - k) levels obtained by filtering the
// kernel of L out of spec(A).  Integer A-eigenvalues are re-verified with
// an exact rational null-space computation.
TlSpectrumResult ring_spectrum_via_diagrams(int n_sites, int k);

}  // namespace foel
