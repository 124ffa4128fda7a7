// Command-line front end: sector spectra, FOEL tables, Sutherland checks,
// diagram-route verification, Bethe continuation chains and energy-density
// curves, emitted as JSON or CSV.

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "foel/bethe.hpp"
#include "foel/eigensolve.hpp"
#include "foel/report_io.hpp"
#include "foel/spectra.hpp"
#include "foel/tl.hpp"

namespace {

constexpr int kExitSolver = 2;
constexpr int kExitVerification = 3;

struct CommonOpts {
  int n = 0;
  std::pair<int, int> n_range{0, 0};
  std::string geometry = "ring";
  int k = -1;
  std::size_t dense_threshold = 4096;
  double tol_degeneracy = 1e-9;
  double tol_label = 1e-6;
  std::uint64_t seed = 20240915;
  std::string format = "json";
  std::string out;
};

foel::Geometry parse_geometry(const std::string& g) {
  return g == "chain" ? foel::Geometry::chain : foel::Geometry::ring;
}

foel::SolveOptions solve_options(const CommonOpts& c) {
  foel::SolveOptions o;
  o.dense_threshold = c.dense_threshold;
  o.tol_degeneracy = c.tol_degeneracy;
  o.tol_label = c.tol_label;
  o.seed = c.seed;
  return o;
}

void write_output(const std::string& path, const std::string& payload) {
  if (path.empty() || path == "-") {
    std::cout << payload << "\n";
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  f << payload;
  if (payload.empty() || payload.back() != '\n') f << "\n";
}

void add_common(CLI::App* cmd, CommonOpts& c, bool with_range = false) {
  cmd->add_option("--n", c.n, "ring/chain length N");
  if (with_range)
    cmd->add_option("--n-range", c.n_range, "inclusive N range (min max)");
  cmd->add_option("--geometry", c.geometry, "ring or chain")
      ->check(CLI::IsMember({"ring", "chain"}));
  cmd->add_option("--k", c.k, "magnon count");
  cmd->add_option("--dense-threshold", c.dense_threshold,
                  "largest sector dimension solved densely");
  cmd->add_option("--tol-degeneracy", c.tol_degeneracy,
                  "relative energy clustering tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--tol-label", c.tol_label, "spin label tolerance")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "rng seed for iterative solves");
  cmd->add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", c.out, "output path ('-' for stdout)");
}

int run_spectrum(const CommonOpts& c) {
  const int n = c.n;
  const int k = c.k >= 0 ? c.k : n / 2;
  const foel::SectorBasis basis({n, k, parse_geometry(c.geometry)});
  const auto report = foel::full_spectrum(basis, solve_options(c));
  write_output(c.out, c.format == "csv" ? foel::spectrum_to_csv(report)
                                        : foel::spectrum_to_json(report));
  return 0;
}

int run_foel(const CommonOpts& c) {
  std::vector<int> ns;
  if (c.n_range.first > 0)
    for (int n = c.n_range.first; n <= c.n_range.second; ++n) ns.push_back(n);
  else
    ns.push_back(c.n);
  std::vector<foel::FoelReportEntry> entries;
  for (int n : ns) {
    foel::FoelReportEntry e;
    e.table = foel::e0_table(n, parse_geometry(c.geometry), solve_options(c));
    e.finding = foel::foel_check(e.table);
    std::cerr << "N=" << n << ": " << e.finding.violations.size()
              << " violation(s), " << e.finding.equalities.size()
              << " equality pair(s)\n";
    entries.push_back(std::move(e));
  }
  write_output(c.out, c.format == "csv" ? foel::foel_to_csv(entries)
                                        : foel::foel_to_json(entries));
  return 0;
}

int run_sutherland(const CommonOpts& c, const std::string& projection_out) {
  const foel::SectorBasis basis({c.n, c.n / 2, foel::Geometry::ring});
  const auto report = foel::full_spectrum(basis, solve_options(c));
  const auto sutherland = foel::sutherland_check_from_report(report);
  if (!projection_out.empty())
    write_output(projection_out, foel::momentum_projection_csv(report));
  write_output(c.out, c.format == "csv"
                          ? foel::sutherland_to_csv(sutherland)
                          : foel::sutherland_to_json(sutherland));
  return sutherland.all_equal ? 0 : kExitVerification;
}

int run_tl_verify(const CommonOpts& c) {
  const int n = c.n, k = c.k >= 0 ? c.k : n / 2;
  foel::TlVerifyReport rep;
  rep.n_sites = n;
  rep.k = k;

  // TL relations as exact identities on the ring diagram space.
  const auto diags = foel::enumerate_diagrams(n, k, foel::Geometry::ring);
  const auto edges = foel::make_edges(n, foel::Geometry::ring);
  std::map<foel::ArcDiagram, std::size_t> index;
  for (std::size_t i = 0; i < diags.size(); ++i) index[diags[i]] = i;
  auto umat = [&](std::pair<int, int> e) {
    foel::RationalMatrix m(diags.size(), diags.size());
    for (std::size_t col = 0; col < diags.size(); ++col)
      for (const auto& [nd, coeff] : foel::apply_generator(e, diags[col]))
        m.at(index.at(nd), col) += coeff;
    return m;
  };
  auto eq = [](const foel::RationalMatrix& a, const foel::RationalMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.a == b.a;
  };
  rep.relations_ok = true;
  std::vector<foel::RationalMatrix> us;
  for (const auto& e : edges) us.push_back(umat(e));
  for (std::size_t i = 0; i < edges.size(); ++i) {
    auto m2 = foel::multiply(us[i], us[i]);
    auto mm = us[i];
    for (auto& v : mm.a) v *= -2;
    rep.relations_ok = rep.relations_ok && eq(m2, mm);
    for (std::size_t j = 0; j < edges.size(); ++j) {
      if (i == j) continue;
      const bool adjacent = edges[i].first == edges[j].first ||
                            edges[i].first == edges[j].second ||
                            edges[i].second == edges[j].first ||
                            edges[i].second == edges[j].second;
      if (adjacent)
        rep.relations_ok =
            rep.relations_ok &&
            eq(foel::multiply(us[i], foel::multiply(us[j], us[i])), us[i]);
      else
        rep.relations_ok = rep.relations_ok && eq(foel::multiply(us[i], us[j]),
                                                  foel::multiply(us[j], us[i]));
    }
  }

  // Intertwining identity L A = -2H L.
  const auto a = foel::build_a_operator(n, k, foel::Geometry::ring);
  const auto l = foel::build_intertwiner(n, k, foel::Geometry::ring);
  const foel::SectorBasis basis({n, k, foel::Geometry::ring});
  const auto h = foel::build_sparse(basis, foel::WhichOperator::two_h);
  foel::RationalMatrix hr(h.dim, h.dim);
  for (std::size_t r = 0; r < h.dim; ++r)
    for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p)
      hr.at(r, h.col[p]) = mpq_class(static_cast<long>(h.val[p]));
  auto lhs = foel::multiply(l, a);
  auto rhs = foel::multiply(hr, l);
  for (auto& v : rhs.a) v *= -1;
  rep.intertwining_ok = eq(lhs, rhs);

  // Chain dimension identity.
  rep.dimension_ok =
      foel::enumerate_diagrams(n, k, foel::Geometry::chain).size() ==
      foel::binomial(n, k) - foel::binomial(n, k - 1);

  // Route equivalence of the spectra.
  rep.spectrum = foel::ring_spectrum_via_diagrams(n, k);
  const auto ed = foel::full_spectrum(basis, solve_options(c));
  std::vector<double> want;
  for (const auto& lvl : ed.levels)
    if (lvl.total_spin_s == n / 2.0 - k)
      want.insert(want.end(), lvl.multiplicity, lvl.energy_2h);
  std::sort(want.begin(), want.end());
  rep.route_match = want.size() == rep.spectrum.energies_2h.size();
  if (rep.route_match)
    for (std::size_t i = 0; i < want.size(); ++i)
      rep.route_match = rep.route_match &&
                        std::abs(want[i] - rep.spectrum.energies_2h[i]) < 1e-9;

  write_output(c.out, foel::tl_verify_to_json(rep));
  const bool all = rep.relations_ok && rep.intertwining_ok &&
                   rep.dimension_ok && rep.route_match;
  std::cerr << "tl-verify N=" << n << " k=" << k << ": "
            << (all ? "pass" : "FAIL") << "\n";
  return all ? 0 : kExitVerification;
}

int run_bethe(const CommonOpts& c, double n_start, double n_target,
              double hermite_scale, bool ed_check,
              std::size_t ed_check_max_dim) {
  const int k = c.k >= 0 ? c.k : 2;
  const auto init =
      foel::newton_refine(foel::hermite_init(k, n_start, hermite_scale));
  if (!init.converged) {
    std::cerr << "initialization failed to converge at N = " << n_start
              << "\n";
    return kExitSolver;
  }
  foel::BetheChainReport rep;
  rep.k = k;
  rep.n_start = n_start;
  rep.n_target = n_target;
  rep.result = foel::continue_in_n(init.state, n_target);
  rep.ed_mismatch.assign(rep.result.chain.size(),
                         std::numeric_limits<double>::quiet_NaN());
  if (ed_check) {
    std::map<long, std::vector<double>> ed_cache;
    for (std::size_t i = 0; i < rep.result.chain.size(); ++i) {
      const auto& s = rep.result.chain[i];
      if (std::abs(s.n_param - std::llround(s.n_param)) > 1e-9) continue;
      const long n = std::llround(s.n_param);
      if (foel::binomial(static_cast<int>(n), k) > ed_check_max_dim) continue;
      if (!ed_cache.count(n)) {
        const auto r = foel::full_spectrum(
            foel::SectorBasis({static_cast<int>(n), k, foel::Geometry::ring}),
            solve_options(c));
        auto& v = ed_cache[n];
        for (const auto& lvl : r.levels) v.push_back(lvl.energy_2h);
      }
      double best = 1e300;
      const double e = foel::energy_from_roots(s);
      for (double w : ed_cache[n]) best = std::min(best, std::abs(w - e));
      rep.ed_mismatch[i] = best;
    }
  }
  write_output(c.out, c.format == "csv" ? foel::bethe_chain_to_csv(rep)
                                        : foel::bethe_chain_to_json(rep));
  if (!rep.result.reached_target) {
    std::cerr << rep.result.diagnostics << "\n";
    return kExitSolver;
  }
  return 0;
}

int run_curve(const CommonOpts& c, double a_min, double a_max, int samples) {
  std::vector<foel::CurvePoint> pts;
  for (int i = 0; i < samples; ++i) {
    const double t =
        samples == 1 ? 0.0 : static_cast<double>(i) / (samples - 1);
    pts.push_back(foel::sutherland_curve(a_min * std::pow(a_max / a_min, t)));
  }
  write_output(c.out, c.format == "json" ? foel::curve_to_json(pts)
                                         : foel::curve_to_csv(pts));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Symmetry-resolved spectra of the spin-1/2 Heisenberg ferromagnet on "
      "rings and chains: energy-level ordering tables, diagram-algebra "
      "verification and Bethe-root continuation"};
  app.require_subcommand(1);

  CommonOpts spectrum_opts, foel_opts, suther_opts, tl_opts, bethe_opts,
      curve_opts;
  std::string projection_out;
  double n_start = 60.0, n_target = 12.0, hermite_scale = 0.225;
  bool ed_check = false;
  std::size_t ed_check_max_dim = 2000;
  double a_min = 1.1, a_max = 1e6;
  int samples = 65;

  auto* spectrum =
      app.add_subcommand("spectrum", "labeled 2H spectrum of one sector");
  add_common(spectrum, spectrum_opts);
  spectrum->get_option("--n")->required();

  auto* foelcmd =
      app.add_subcommand("foel", "E0 tables and ordering violations");
  add_common(foelcmd, foel_opts, true);

  auto* suther = app.add_subcommand(
      "sutherland", "momentum-band minima against spin-band minima");
  add_common(suther, suther_opts);
  suther->get_option("--n")->required();
  suther->add_option("--projection-out", projection_out,
                     "also write the (cos theta, energy) projection CSV");

  auto* tl = app.add_subcommand(
      "tl-verify", "diagram-algebra identities and route equivalence");
  add_common(tl, tl_opts);
  tl->get_option("--n")->required();

  auto* bethe = app.add_subcommand(
      "bethe", "lowest-band Bethe roots continued in ring length");
  add_common(bethe, bethe_opts);
  bethe->add_option("--n-start", n_start, "starting ring length");
  bethe->add_option("--n-target", n_target, "target ring length");
  bethe->add_option("--hermite-scale", hermite_scale,
                    "initialization spread factor");
  bethe->add_flag("--ed-check", ed_check,
                  "cross-check integer-N energies against dense spectra");
  bethe->add_option("--ed-check-max-dim", ed_check_max_dim,
                    "largest sector dimension the cross-check will solve");

  auto* curve = app.add_subcommand(
      "curve", "energy-density curves (parametric and quadratic)");
  add_common(curve, curve_opts);
  curve->add_option("--a-min", a_min, "smallest curve parameter (> 1)");
  curve->add_option("--a-max", a_max, "largest curve parameter");
  curve->add_option("--samples", samples, "number of log-spaced samples");

  CLI11_PARSE(app, argc, argv);

  try {
    if (spectrum->parsed()) return run_spectrum(spectrum_opts);
    if (foelcmd->parsed()) return run_foel(foel_opts);
    if (suther->parsed()) return run_sutherland(suther_opts, projection_out);
    if (tl->parsed()) return run_tl_verify(tl_opts);
    if (bethe->parsed())
      return run_bethe(bethe_opts, n_start, n_target, hermite_scale, ed_check,
                       ed_check_max_dim);
    if (curve->parsed()) return run_curve(curve_opts, a_min, a_max, samples);
  } catch (const foel::SolverError& e) {
    std::cerr << "solver error: " << e.what() << "\n";
    return kExitSolver;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
