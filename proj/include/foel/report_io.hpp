#pragma once

#include <string>
#include <vector>

#include "foel/bethe.hpp"
#include "foel/eigensolve.hpp"
#include "foel/spectra.hpp"
#include "foel/tl.hpp"

// Machine-readable emission of the report structures.  JSON is the
// canonical format; CSV is a flattening for plotting.  Every float is
// serialized with 17 significant digits so repeated runs with the same
// configuration are byte-identical.

namespace foel {

// "%.17g" rendering of a double.
std::string format_double(double v);

std::string spectrum_to_json(const SpectrumReport& report);
std::string spectrum_to_csv(const SpectrumReport& report);

struct FoelReportEntry {
  EnergyTable table;
  FoelFinding finding;
};

std::string foel_to_json(const std::vector<FoelReportEntry>& entries);
std::string foel_to_csv(const std::vector<FoelReportEntry>& entries);

std::string sutherland_to_json(const SutherlandReport& report);
std::string sutherland_to_csv(const SutherlandReport& report);

// Figure-style projection: one row per (cos theta, energy) pair.
std::string momentum_projection_csv(const SpectrumReport& report);

struct TlVerifyReport {
  int n_sites = 0, k = 0;
  bool relations_ok = false;
  bool intertwining_ok = false;
  bool dimension_ok = false;
  bool route_match = false;
  TlSpectrumResult spectrum;
};

std::string tl_verify_to_json(const TlVerifyReport& report);

struct BetheChainReport {
  int k = 0;
  double n_start = 0.0, n_target = 0.0;
  ContinuationResult result;
  // Optional ED cross-check at integer N: smallest |E - E_ed| per state,
  // aligned with result.chain (NaN where not checked).
  std::vector<double> ed_mismatch;
};

std::string bethe_chain_to_json(const BetheChainReport& report);
std::string bethe_chain_to_csv(const BetheChainReport& report);

std::string curve_to_csv(const std::vector<CurvePoint>& points);
std::string curve_to_json(const std::vector<CurvePoint>& points);

}  // namespace foel
