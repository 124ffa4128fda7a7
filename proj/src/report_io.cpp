#include "foel/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace foel {

namespace {

// Keys are plain identifiers and values are numbers, booleans or arrays
// thereof, so emission stays a few helpers deep; no escaping is needed.
struct Json {
  std::ostringstream os;
  bool first_in_scope = true;

  void comma() {
    if (!first_in_scope) os << ",";
    first_in_scope = false;
  }
  void open(const char* key = nullptr, char brace = '{') {
    comma();
    if (key) os << '"' << key << "\":";
    os << brace;
    first_in_scope = true;
  }
  void close(char brace = '}') {
    os << brace;
    first_in_scope = false;
  }
  template <typename T>
  void field(const char* key, const T& value) {
    comma();
    os << '"' << key << "\":" << value;
  }
  void item_int(long v) {
    comma();
    os << v;
  }
  void field(const char* key, double value) {
    comma();
    os << '"' << key << "\":" << format_double(value);
  }
  void field(const char* key, bool value) {
    comma();
    os << '"' << key << "\":" << (value ? "true" : "false");
  }
  void field(const char* key, const char* value) {
    comma();
    os << '"' << key << "\":\"" << value << '"';
  }
  void field(const char* key, const std::string& value) {
    field(key, value.c_str());
  }
};

}  // namespace

std::string format_double(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string spectrum_to_json(const SpectrumReport& report) {
  Json j;
  j.open();
  j.field("N", report.sector.n_sites);
  j.field("k", report.sector.n_magnons);
  j.field("geometry", to_string(report.sector.geometry));
  j.field("convention", "2H");
  j.field("method", report.method == SolveMethod::dense ? "dense" : "lanczos");
  j.field("tolerance", report.tolerance);
  j.open("levels", '[');
  for (const auto& lvl : report.levels) {
    j.open();
    j.field("energy", lvl.energy_2h);
    j.field("s", lvl.total_spin_s);
    j.open("momenta", '[');
    for (int m : lvl.momentum_indices) j.item_int(m);
    j.close(']');
    j.field("multiplicity", lvl.multiplicity);
    j.close();
  }
  j.close(']');
  j.close();
  return j.os.str();
}

std::string spectrum_to_csv(const SpectrumReport& report) {
  std::ostringstream os;
  os << "energy_2h,s,j,multiplicity\n";
  for (const auto& lvl : report.levels) {
    if (lvl.momentum_indices.empty()) {
      os << format_double(lvl.energy_2h) << ","
         << format_double(lvl.total_spin_s) << ",," << lvl.multiplicity
         << "\n";
      continue;
    }
    for (int m : lvl.momentum_indices)
      os << format_double(lvl.energy_2h) << ","
         << format_double(lvl.total_spin_s) << "," << m << ","
         << lvl.multiplicity << "\n";
  }
  return os.str();
}

std::string foel_to_json(const std::vector<FoelReportEntry>& entries) {
  Json j;
  j.open();
  j.field("convention", "H");
  j.open("results", '[');
  for (const auto& e : entries) {
    j.open();
    j.field("N", e.table.n_sites);
    j.field("geometry", to_string(e.table.geometry));
    j.open("e0_h", '[');
    for (double v : e.table.e0_h) {
      j.comma();
      j.os << format_double(v);
    }
    j.close(']');
    j.field("tolerance_2h", e.finding.tolerance);
    j.open("violations", '[');
    for (const auto& p : e.finding.violations) {
      j.open();
      j.field("k", p.k);
      j.field("l", p.l);
      j.field("e0_k", p.e0_k);
      j.field("e0_l", p.e0_l);
      j.close();
    }
    j.close(']');
    j.open("equalities", '[');
    for (const auto& p : e.finding.equalities) {
      j.open();
      j.field("k", p.k);
      j.field("l", p.l);
      j.field("e0_k", p.e0_k);
      j.field("e0_l", p.e0_l);
      j.close();
    }
    j.close(']');
    j.close();
  }
  j.close(']');
  j.close();
  return j.os.str();
}

std::string foel_to_csv(const std::vector<FoelReportEntry>& entries) {
  std::ostringstream os;
  os << "N,k,e0_h,violates_next\n";
  for (const auto& e : entries)
    for (std::size_t k = 0; k < e.table.e0_h.size(); ++k) {
      bool viol = false;
      for (const auto& p : e.finding.violations)
        if (p.l == static_cast<int>(k)) viol = true;
      os << e.table.n_sites << "," << k << ","
         << format_double(e.table.e0_h[k]) << "," << (viol ? 1 : 0) << "\n";
    }
  return os.str();
}

std::string sutherland_to_json(const SutherlandReport& report) {
  Json j;
  j.open();
  j.field("N", report.n_sites);
  j.field("convention", "2H");
  j.field("tolerance", report.tolerance);
  j.field("all_equal", report.all_equal);
  j.open("entries", '[');
  for (const auto& e : report.entries) {
    j.open();
    j.field("k", e.k);
    j.field("momentum_min", e.momentum_min_2h);
    j.field("spin_min", e.spin_min_2h);
    j.field("equal", e.equal);
    j.close();
  }
  j.close(']');
  j.close();
  return j.os.str();
}

std::string sutherland_to_csv(const SutherlandReport& report) {
  std::ostringstream os;
  os << "k,momentum_min_2h,spin_min_2h,equal\n";
  for (const auto& e : report.entries)
    os << e.k << "," << format_double(e.momentum_min_2h) << ","
       << format_double(e.spin_min_2h) << "," << (e.equal ? 1 : 0) << "\n";
  return os.str();
}

std::string momentum_projection_csv(const SpectrumReport& report) {
  const int n = report.sector.n_sites;
  std::ostringstream os;
  os << "cos_theta,energy_2h\n";
  std::vector<std::pair<double, double>> rows;
  for (const auto& lvl : report.levels)
    for (int m : lvl.momentum_indices)
      rows.emplace_back(std::cos(2.0 * M_PI * m / n), lvl.energy_2h);
  std::sort(rows.begin(), rows.end());
  for (const auto& [c, e] : rows)
    os << format_double(c) << "," << format_double(e) << "\n";
  return os.str();
}

std::string tl_verify_to_json(const TlVerifyReport& report) {
  Json j;
  j.open();
  j.field("N", report.n_sites);
  j.field("k", report.k);
  j.field("tl_relations", report.relations_ok);
  j.field("intertwining", report.intertwining_ok);
  j.field("dimension_identity", report.dimension_ok);
  j.field("route_equivalence", report.route_match);
  j.field("diagram_count", report.spectrum.diagram_count);
  j.field("kernel_dim", report.spectrum.kernel_dim);
  j.field("defective_fallback", report.spectrum.defective_fallback);
  j.open("removed_a_eigenvalues", '[');
  for (double v : report.spectrum.removed_a) {
    j.comma();
    j.os << format_double(v);
  }
  j.close(']');
  j.open("energies_2h", '[');
  for (double v : report.spectrum.energies_2h) {
    j.comma();
    j.os << format_double(v);
  }
  j.close(']');
  j.close();
  return j.os.str();
}

std::string bethe_chain_to_json(const BetheChainReport& report) {
  Json j;
  j.open();
  j.field("k", report.k);
  j.field("n_start", report.n_start);
  j.field("n_target", report.n_target);
  j.field("convention", "2H");
  j.field("completed", report.result.reached_target);
  j.field("stopped_at", report.result.stopped_at);
  if (!report.result.diagnostics.empty())
    j.field("diagnostics", report.result.diagnostics);
  j.open("steps", '[');
  for (std::size_t i = 0; i < report.result.chain.size(); ++i) {
    const BetheState& s = report.result.chain[i];
    const bool integer_n =
        std::abs(s.n_param - std::llround(s.n_param)) < 1e-9;
    j.open();
    j.field("n", s.n_param);
    j.field("residual", s.residual_norm);
    j.open("modes", '[');
    for (int q : s.quantum_numbers) j.item_int(q);
    j.close(']');
    j.open("roots", '[');
    for (const auto& r : s.roots) {
      j.open();
      j.field("re", r.real());
      j.field("im", r.imag());
      j.close();
    }
    j.close(']');
    if (integer_n) {
      j.field("energy", energy_from_roots(s));
      if (i < report.ed_mismatch.size() && !std::isnan(report.ed_mismatch[i]))
        j.field("ed_mismatch", report.ed_mismatch[i]);
    }
    j.close();
  }
  j.close(']');
  j.close();
  return j.os.str();
}

std::string bethe_chain_to_csv(const BetheChainReport& report) {
  std::ostringstream os;
  os << "n,residual,energy_2h,ed_mismatch\n";
  for (std::size_t i = 0; i < report.result.chain.size(); ++i) {
    const BetheState& s = report.result.chain[i];
    const bool integer_n =
        std::abs(s.n_param - std::llround(s.n_param)) < 1e-9;
    os << format_double(s.n_param) << "," << format_double(s.residual_norm)
       << ",";
    if (integer_n) os << format_double(energy_from_roots(s));
    os << ",";
    if (i < report.ed_mismatch.size() && !std::isnan(report.ed_mismatch[i]))
      os << format_double(report.ed_mismatch[i]);
    os << "\n";
  }
  return os.str();
}

std::string curve_to_csv(const std::vector<CurvePoint>& points) {
  std::ostringstream os;
  os << "a,d,eps_sutherland,eps_dhar_shastry\n";
  for (const auto& p : points)
    os << format_double(p.a) << "," << format_double(p.d) << ","
       << format_double(p.eps) << "," << format_double(dhar_shastry_eps(p.d))
       << "\n";
  return os.str();
}

std::string curve_to_json(const std::vector<CurvePoint>& points) {
  Json j;
  j.open();
  j.open("points", '[');
  for (const auto& p : points) {
    j.open();
    j.field("a", p.a);
    j.field("d", p.d);
    j.field("eps", p.eps);
    j.field("eps_dhar_shastry", dhar_shastry_eps(p.d));
    j.close();
  }
  j.close(']');
  j.close();
  return j.os.str();
}

}  // namespace foel
