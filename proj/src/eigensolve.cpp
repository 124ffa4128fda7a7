#include "foel/eigensolve.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <random>

#include "foel/kernels.hpp"

namespace foel {

namespace {

double spin_from_casimir(double c) {
  // s(s+1) = c  =>  s = (-1 + sqrt(1+4c))/2, snapped to half-integers
  const double s = 0.5 * (std::sqrt(std::max(0.0, 1.0 + 4.0 * c)) - 1.0);
  return std::round(2.0 * s) / 2.0;
}

struct ClusterRange {
  Eigen::Index begin, end;
};

std::vector<ClusterRange> cluster_energies(const Eigen::VectorXd& w,
                                           double tol) {
  std::vector<ClusterRange> out;
  Eigen::Index i = 0;
  while (i < w.size()) {
    Eigen::Index j = i + 1;
    while (j < w.size() &&
           w[j] - w[j - 1] <= tol * std::max(1.0, std::abs(w[j]))) {
      ++j;
    }
    out.push_back({i, j});
    i = j;
  }
  return out;
}

}  // namespace

void label_levels(const SectorBasis& basis, SpectrumReport& report,
                  const SolveOptions& opts) {
  const Eigen::Index d = report.values.size();
  const int n = basis.sector().n_sites;
  report.levels.clear();
  report.label_warnings.clear();
  if (d == 0) return;

  const bool ring = basis.sector().geometry == Geometry::ring;
  std::vector<double> tmp_in(basis.size()), tmp_out(basis.size());
  auto apply_s2_cols = [&](const Eigen::MatrixXd& b) {
    Eigen::MatrixXd sb(b.rows(), b.cols());
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      std::copy(b.col(c).data(), b.col(c).data() + b.rows(), tmp_in.begin());
      apply_total_spin(basis, tmp_in, tmp_out);
      std::copy(tmp_out.begin(), tmp_out.end(), sb.col(c).data());
    }
    return sb;
  };
  auto apply_t_cols = [&](const Eigen::MatrixXd& b) {
    Eigen::MatrixXd tb(b.rows(), b.cols());
    for (Eigen::Index c = 0; c < b.cols(); ++c) {
      std::copy(b.col(c).data(), b.col(c).data() + b.rows(), tmp_in.begin());
      apply_translation_op(basis, tmp_in, tmp_out);
      std::copy(tmp_out.begin(), tmp_out.end(), tb.col(c).data());
    }
    return tb;
  };

  for (const auto& [cb, ce] : cluster_energies(report.values,
                                               opts.tol_degeneracy)) {
    const Eigen::Index m = ce - cb;
    const double energy = report.values.segment(cb, m).mean();
    Eigen::MatrixXd b = report.vectors.middleCols(cb, m);
    // Split the cluster eigenspace by total spin.
    Eigen::MatrixXd s2 = b.transpose() * apply_s2_cols(b);
    s2 = 0.5 * (s2 + s2.transpose().eval());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(s2);
    const Eigen::VectorXd cas = es.eigenvalues();
    Eigen::MatrixXd rot = b * es.eigenvectors();

    Eigen::Index i = 0;
    while (i < m) {
      Eigen::Index j = i + 1;
      while (j < m && cas[j] - cas[i] < 0.5) ++j;
      const double s = spin_from_casimir(cas.segment(i, j - i).mean());
      for (Eigen::Index q = i; q < j; ++q) {
        if (std::abs(cas[q] - s * (s + 1.0)) > opts.tol_label) {
          report.label_warnings.push_back(
              "spin label ambiguous at energy " + std::to_string(energy) +
              ": casimir " + std::to_string(cas[q]) +
              " not within tolerance of s(s+1) for s = " + std::to_string(s));
        }
      }
      LabeledLevel lvl;
      lvl.energy_2h = energy;
      lvl.total_spin_s = s;
      lvl.multiplicity = static_cast<int>(j - i);
      if (ring) {
        // Momenta from T compressed to the (energy, s) subspace.
        Eigen::MatrixXd sub = rot.middleCols(i, j - i);
        Eigen::HouseholderQR<Eigen::MatrixXd> qr(sub);
        Eigen::MatrixXd q =
            qr.householderQ() * Eigen::MatrixXd::Identity(sub.rows(), j - i);
        Eigen::MatrixXd w = q.transpose() * apply_t_cols(q);
        Eigen::EigenSolver<Eigen::MatrixXd> tes(w);
        std::vector<int> moms;
        for (Eigen::Index q2 = 0; q2 < tes.eigenvalues().size(); ++q2) {
          const std::complex<double> z = tes.eigenvalues()[q2];
          if (std::abs(std::abs(z) - 1.0) > 1e-6)
            report.label_warnings.push_back(
                "momentum eigenvalue off the unit circle at energy " +
                std::to_string(energy));
          int mj = static_cast<int>(
              std::llround(std::arg(z) / (2.0 * M_PI / n)));
          moms.push_back(((mj % n) + n) % n);
        }
        std::sort(moms.begin(), moms.end());
        moms.erase(std::unique(moms.begin(), moms.end()), moms.end());
        lvl.momentum_indices = std::move(moms);
      }
      report.levels.push_back(std::move(lvl));
      i = j;
    }
  }
  std::sort(report.levels.begin(), report.levels.end(),
            [](const LabeledLevel& a, const LabeledLevel& b) {
              if (a.energy_2h != b.energy_2h) return a.energy_2h < b.energy_2h;
              return a.total_spin_s < b.total_spin_s;
            });
}

SpectrumReport full_spectrum(const SectorBasis& basis,
                             const SolveOptions& opts) {
  const std::size_t d = basis.size();
  if (d > opts.dense_threshold)
    throw SolverError("sector dimension " + std::to_string(d) +
                      " exceeds dense threshold " +
                      std::to_string(opts.dense_threshold));
  const SparseOperator h = build_sparse(basis, WhichOperator::two_h);
  Eigen::MatrixXd hd = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t p = h.row_ptr[r]; p < h.row_ptr[r + 1]; ++p)
      hd(r, h.col[p]) = h.val[p];

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hd);
  if (es.info() != Eigen::Success)
    throw SolverError("dense eigensolver failed");

  SpectrumReport report;
  report.sector = basis.sector();
  report.method = SolveMethod::dense;
  report.tolerance = 1e-10;
  report.values = es.eigenvalues();
  report.vectors = es.eigenvectors();

  // Residual check, column by column through the sparse operator.
  std::vector<double> xin(d), xout(d);
  double maxres = 0.0;
  for (std::size_t c = 0; c < d; ++c) {
    std::copy(report.vectors.col(c).data(), report.vectors.col(c).data() + d,
              xin.begin());
    h.apply(xin, xout);
    double acc = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double rr = xout[r] - report.values[c] * xin[r];
      acc += rr * rr;
    }
    maxres = std::max(maxres, std::sqrt(acc));
  }
  report.max_residual = maxres;
  if (maxres > report.tolerance)
    throw SolverError("dense residual " + std::to_string(maxres) +
                      " above tolerance");
  label_levels(basis, report, opts);
  return report;
}

SpectrumReport lowest_band(const SectorBasis& basis, int count,
                           const SolveOptions& opts) {
  using kernels::axpy;
  using kernels::dot;
  using kernels::nrm2;
  using kernels::scal;

  const std::size_t d = basis.size();
  if (count < 1) throw std::invalid_argument("count must be >= 1");
  if (static_cast<std::size_t>(count) > d)
    throw std::invalid_argument("count exceeds sector dimension");
  const EdgeSet edges = make_edges(basis.sector().n_sites,
                                   basis.sector().geometry);

  const int max_iter =
      opts.lanczos_max_iter > 0
          ? opts.lanczos_max_iter
          : static_cast<int>(std::min<std::size_t>(d, 4 * count + 320));

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;

  std::vector<std::vector<double>> v;  // Lanczos vectors
  std::vector<double> alpha, beta;
  std::vector<double> w(d);

  v.emplace_back(d);
  for (auto& x : v[0]) x = gauss(rng);
  {
    const double nn = nrm2(v[0].data(), d);
    scal(1.0 / nn, v[0].data(), d);
  }

  auto reorthogonalize = [&](std::vector<double>& x) {
    for (int pass = 0; pass < 2; ++pass)
      for (const auto& q : v) {
        const double c = dot(x.data(), q.data(), d);
        axpy(-c, q.data(), x.data(), d);
      }
  };

  Eigen::VectorXd ritz;
  Eigen::MatrixXd tvec;
  int converged = 0;
  int m = 0;  // number of completed Lanczos steps (= alphas)
  while (m < max_iter && static_cast<std::size_t>(m) < d) {
    apply_two_h(basis, edges, v[m], w);
    if (m > 0) axpy(-beta[m - 1], v[m - 1].data(), w.data(), d);
    const double a = dot(w.data(), v[m].data(), d);
    alpha.push_back(a);
    axpy(-a, v[m].data(), w.data(), d);
    reorthogonalize(w);
    double b = nrm2(w.data(), d);
    ++m;

    const bool space_full = static_cast<std::size_t>(m) == d;
    const bool last = space_full || m == max_iter;
    if (m >= count && (m % 8 == 0 || last)) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tes;
      Eigen::VectorXd ad = Eigen::Map<Eigen::VectorXd>(alpha.data(), m);
      Eigen::VectorXd bd =
          Eigen::Map<Eigen::VectorXd>(beta.data(), std::max(0, m - 1));
      tes.computeFromTridiagonal(ad, bd);
      ritz = tes.eigenvalues();
      tvec = tes.eigenvectors();
      converged = 0;
      // |beta_m s_mi| bounds the residual of the i-th Ritz pair.  A
      // breakdown (b ~ 0) before the space is exhausted does not count as
      // convergence: degenerate copies may still be missing, so a fresh
      // direction is injected below instead.
      const double eff_b = (b < 1e-12 && !space_full) ? 1.0 : b;
      for (int i = 0; i < count; ++i) {
        const double est = std::abs(eff_b * tvec(m - 1, i));
        if (est <= 0.1 * opts.lanczos_tol) ++converged;
      }
      if (converged >= count || last) break;
    }
    if (space_full) break;
    if (b < 1e-12) {
      // Krylov space became invariant; couple in a fresh random direction
      // with a zero off-diagonal.
      for (auto& x : w) x = gauss(rng);
      reorthogonalize(w);
      b = nrm2(w.data(), d);
      if (b < 1e-12) break;
      beta.push_back(0.0);
    } else {
      beta.push_back(b);
    }
    v.emplace_back(w);
    scal(1.0 / b, v.back().data(), d);
  }

  if (converged < count)
    throw SolverError("Lanczos did not converge " + std::to_string(count) +
                      " eigenpairs in " + std::to_string(m) +
                      " iterations (converged " + std::to_string(converged) +
                      ")");

  SpectrumReport report;
  report.sector = basis.sector();
  report.method = SolveMethod::lanczos;
  report.tolerance = opts.lanczos_tol;
  report.values.resize(count);
  report.vectors.resize(d, count);
  for (int i = 0; i < count; ++i) {
    report.values[i] = ritz[i];
    std::vector<double> x(d, 0.0);
    for (int j = 0; j < m; ++j) axpy(tvec(j, i), v[j].data(), x.data(), d);
    const double nn = nrm2(x.data(), d);
    scal(1.0 / nn, x.data(), d);
    std::copy(x.begin(), x.end(), report.vectors.col(i).data());
  }

  // True residuals of the returned Ritz pairs.
  std::vector<double> xin(d), xout(d);
  double maxres = 0.0;
  for (int i = 0; i < count; ++i) {
    std::copy(report.vectors.col(i).data(), report.vectors.col(i).data() + d,
              xin.begin());
    apply_two_h(basis, edges, xin, xout);
    double acc = 0.0;
    for (std::size_t r = 0; r < d; ++r) {
      const double rr = xout[r] - report.values[i] * xin[r];
      acc += rr * rr;
    }
    maxres = std::max(maxres, std::sqrt(acc));
  }
  report.max_residual = maxres;
  if (maxres > opts.lanczos_tol)
    throw SolverError("Lanczos residual " + std::to_string(maxres) +
                      " above tolerance " + std::to_string(opts.lanczos_tol));
  label_levels(basis, report, opts);
  return report;
}

}  // namespace foel
