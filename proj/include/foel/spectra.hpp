#pragma once

#include <optional>
#include <vector>

#include "foel/eigensolve.hpp"

// Minimum-energy tables over spin-deviate levels, ordering checks, the
// Sutherland momentum/spin surmise, and the cross-spin degeneracy scan.
// Tables are assembled from the floor(N/2)-magnon sector, which carries a
// representative of every level of the full Hilbert space.

namespace foel {

struct EnergyTable {
  int n_sites = 0;
  Geometry geometry = Geometry::ring;
  // e0_h[k] = min energy among total-spin (N/2 - k) levels, H convention.
  std::vector<double> e0_h;
};

struct FoelPair {
  int k = 0, l = 0;        // k < l
  double e0_k = 0.0, e0_l = 0.0;  // H convention
};

struct FoelFinding {
  std::vector<FoelPair> violations;  // e0[l] < e0[k] - tol
  std::vector<FoelPair> equalities;  // |e0[l] - e0[k]| <= tol
  double tolerance = 1e-9;
};

struct SutherlandEntry {
  int k = 0;
  double momentum_min_2h = 0.0;  // min over momentum indices {k, N-k}
  double spin_min_2h = 0.0;      // min over total spin (N/2 - k)
  bool equal = false;
};

struct SutherlandReport {
  int n_sites = 0;
  double tolerance = 1e-8;
  std::vector<SutherlandEntry> entries;
  bool all_equal = false;
};

struct DegeneracyPair {
  double energy_2h = 0.0;
  double spin_a = 0.0, spin_b = 0.0;
};

// e0_h[k] for k = 0..floor(N/2); spin-labeled minima, never raw sector
// minima.  Requires the half-filled sector to fit the dense threshold.
EnergyTable e0_table(int n_sites, Geometry geometry,
                     const SolveOptions& opts = {});

// Same table assembled from an already-labeled report of the
// floor(N/2)-magnon sector.
EnergyTable e0_table_from_report(const SpectrumReport& report);

FoelFinding foel_check(const EnergyTable& table, double tolerance = 1e-9);

SutherlandReport sutherland_check(int n_sites, const SolveOptions& opts = {},
                                  double tolerance = 1e-8);
SutherlandReport sutherland_check_from_report(const SpectrumReport& report,
                                              double tolerance = 1e-8);

// Cross-spin coincidences: level pairs with |dE| < tolerance and different
// total spin.
std::vector<DegeneracyPair> degeneracy_scan(const SpectrumReport& report,
                                            double tolerance = 1e-9);

}  // namespace foel
