#include "foel/bethe.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace foel {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Complex kI{0.0, 1.0};

Complex log_u(Complex lam) {
  return std::log(lam + 0.5 * kI) - std::log(lam - 0.5 * kI);
}

Complex log_v(Complex d) { return std::log(d + kI) - std::log(d - kI); }

double min_separation(const std::vector<Complex>& roots) {
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < roots.size(); ++i)
    for (std::size_t j = i + 1; j < roots.size(); ++j)
      m = std::min(m, std::abs(roots[i] - roots[j]));
  return m;
}

}  // namespace

std::vector<Complex> bethe_residual(const BetheState& state) {
  const int k = state.k;
  if (static_cast<int>(state.roots.size()) != k ||
      static_cast<int>(state.quantum_numbers.size()) != k)
    throw std::invalid_argument("state has inconsistent root/mode counts");
  if (k > 1 && min_separation(state.roots) < 1e-12)
    throw std::invalid_argument("coinciding rapidities");
  std::vector<Complex> f(k);
  for (int j = 0; j < k; ++j) {
    f[j] = state.n_param * log_u(state.roots[j]) -
           2.0 * kPi * kI * static_cast<double>(state.quantum_numbers[j]);
    for (int l = 0; l < k; ++l)
      if (l != j) f[j] -= log_v(state.roots[j] - state.roots[l]);
  }
  return f;
}

NewtonReport newton_refine(const BetheState& state, int max_iter, double tol) {
  NewtonReport report;
  report.state = state;
  const int k = state.k;
  if (k == 0) {
    report.state.converged = true;
    report.state.residual_norm = 0.0;
    report.converged = true;
    return report;
  }
  std::vector<Complex> lam = state.roots;
  Eigen::MatrixXcd jf(k, k);
  Eigen::VectorXcd g(k);

  auto snap_modes = [&](BetheState& s) {
    const auto f = bethe_residual(s);
    double norm = 0.0;
    for (int j = 0; j < k; ++j) {
      const int shift =
          static_cast<int>(std::llround(f[j].imag() / (2.0 * kPi)));
      s.quantum_numbers[j] += shift;
    }
    const auto f2 = bethe_residual(s);
    for (const auto& r : f2) norm = std::max(norm, std::abs(r));
    return norm;
  };

  for (int it = 0; it <= max_iter; ++it) {
    if (min_separation(lam) < 1e-9) {
      report.roots_collided = true;
      report.iterations = it;
      report.iterate_history.push_back(lam);
      return report;
    }
    BetheState cur = state;
    cur.roots = lam;
    const auto f = bethe_residual(cur);
    double gnorm = 0.0;
    for (int j = 0; j < k; ++j) {
      g[j] = std::exp(f[j]) - 1.0;  // branch-insensitive residual
      gnorm = std::max(gnorm, std::abs(g[j]));
    }
    if (gnorm < tol) {
      report.state.roots = lam;
      report.state.residual_norm = snap_modes(report.state);
      report.state.converged = report.state.residual_norm <= 1e-6;
      report.converged = report.state.converged;
      report.iterations = it;
      return report;
    }
    if (it == max_iter) break;

    for (int j = 0; j < k; ++j) {
      Complex diag = state.n_param * (1.0 / (lam[j] + 0.5 * kI) -
                                      1.0 / (lam[j] - 0.5 * kI));
      for (int l = 0; l < k; ++l) {
        if (l == j) continue;
        const Complex d = lam[j] - lam[l];
        const Complex grad = 1.0 / (d + kI) - 1.0 / (d - kI);
        diag -= grad;
        jf(j, l) = std::exp(f[j]) * grad;
      }
      jf(j, j) = std::exp(f[j]) * diag;
    }
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(jf);
    if (!lu.isInvertible()) {
      report.jacobian_singular = true;
      report.iterations = it;
      report.iterate_history.push_back(lam);
      return report;
    }
    const Eigen::VectorXcd dl = lu.solve(-g);
    double mx = 0.0;
    for (int j = 0; j < k; ++j) mx = std::max(mx, std::abs(dl[j]));
    const double damp = mx > 0.7 ? 0.7 / mx : 1.0;  // trust-region style cap
    for (int j = 0; j < k; ++j) lam[j] += damp * dl[j];
    report.iterate_history.push_back(lam);
    if (mx > 1e5) break;  // diverged
  }
  report.iterations = max_iter;
  report.converged = false;
  report.state.roots = lam;
  report.state.converged = false;
  {
    BetheState cur = state;
    cur.roots = lam;
    double norm = 0.0;
    for (const auto& r : bethe_residual(cur))
      norm = std::max(norm, std::abs(std::exp(r) - 1.0));
    report.state.residual_norm = norm;
  }
  return report;
}

std::vector<double> hermite_zeros(int k) {
  if (k == 0) return {};
  // Zeros of H_k from the symmetric Jacobi matrix of the Hermite recursion.
  Eigen::MatrixXd j = Eigen::MatrixXd::Zero(k, k);
  for (int i = 0; i + 1 < k; ++i) {
    j(i, i + 1) = std::sqrt((i + 1) / 2.0);
    j(i + 1, i) = j(i, i + 1);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(j);
  std::vector<double> z(es.eigenvalues().data(), es.eigenvalues().data() + k);
  return z;
}

BetheState hermite_init(int k, double n_param, double scale) {
  if (k < 0) throw std::invalid_argument("negative magnon count");
  BetheState s;
  s.k = k;
  s.n_param = n_param;
  s.quantum_numbers.assign(k, 1);
  const double center = n_param / (2.0 * kPi);
  for (double x : hermite_zeros(k))
    s.roots.push_back(center + kI * scale * std::sqrt(n_param) * x);
  return s;
}

ContinuationResult continue_in_n(const BetheState& start, double n_target,
                                 const ContinuationOptions& opts) {
  ContinuationResult out;
  if (!start.converged)
    throw std::invalid_argument("continuation requires a converged start");
  if (n_target > start.n_param)
    throw std::invalid_argument("continuation decreases N");

  BetheState cur = start;
  out.chain.push_back(cur);
  double n = start.n_param;
  int floor_failures = 0;

  // Largest waypoint strictly below n: the next integer, or the target.
  auto next_waypoint = [&](double x) {
    const double r = std::llround(x);
    const double below = (std::abs(x - r) < 1e-9) ? r - 1.0 : std::floor(x);
    return std::max(below, n_target);
  };

  while (n > n_target + 1e-12) {
    const double waypoint = next_waypoint(n);
    double step = std::min(opts.initial_step, n - waypoint);
    bool advanced = false;
    while (true) {
      const double trial = n - step;
      BetheState attempt = cur;
      attempt.n_param = trial;
      const NewtonReport rep =
          newton_refine(attempt, opts.newton_max_iter, opts.newton_tol);
      const bool separated =
          rep.state.roots.size() < 2 ||
          min_separation(rep.state.roots) > opts.root_separation_guard;
      if (rep.converged && separated) {
        cur = rep.state;
        n = trial;
        out.chain.push_back(cur);
        advanced = true;
        break;
      }
      if (step <= opts.floor_step + 1e-15) {
        ++floor_failures;
        break;
      }
      step /= 2.0;
    }
    if (advanced) {
      floor_failures = 0;
      continue;
    }
    if (floor_failures >= opts.max_floor_failures) {
      out.reached_target = false;
      out.stopped_at = n;
      out.diagnostics =
          "continuation abandoned at N = " + std::to_string(n) + " after " +
          std::to_string(floor_failures) +
          " consecutive floor-step Newton failures (chaotic regime sets in "
          "as N approaches 2k = " +
          std::to_string(2 * cur.k) + ")";
      return out;
    }
  }
  out.reached_target = true;
  out.stopped_at = n;
  return out;
}

double energy_from_roots(const BetheState& state) {
  if (std::abs(state.n_param - std::llround(state.n_param)) > 1e-9)
    throw std::invalid_argument("energy is defined at integer N only");
  double e = 0.0;
  for (const auto& lam : state.roots)
    e += (1.0 / (lam * lam + 0.25)).real();
  return e;
}

double momentum_index(const BetheState& state) {
  Complex p{0.0, 0.0};
  for (const auto& lam : state.roots) p += log_u(lam);
  double idx = (p / kI).real() / (2.0 * kPi / state.n_param);
  const double n = state.n_param;
  while (idx < -0.5) idx += n;
  while (idx >= n - 0.5) idx -= n;
  return idx;
}

EllipticPair elliptic_pair(double m) {
  if (m < 0.0 || m >= 1.0)
    throw std::invalid_argument("elliptic modulus must be in [0, 1)");
  double a = 1.0, b = std::sqrt(1.0 - m * m), c = m;
  double csum = 0.5 * c * c;  // 2^{n-1} c_n^2 accumulated from n = 0
  double pow2 = 1.0;
  for (int it = 0; it < 64 && std::abs(c) > 1e-17; ++it) {
    const double an = 0.5 * (a + b);
    const double bn = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = an;
    b = bn;
    csum += pow2 * c * c;
    pow2 *= 2.0;
  }
  EllipticPair out;
  out.modulus = m;
  out.K = kPi / (2.0 * a);
  out.E = out.K * (1.0 - csum);
  return out;
}

CurvePoint sutherland_curve(double a) {
  if (!(a > 1.0)) throw std::invalid_argument("curve parameter needs a > 1");
  const EllipticPair ek = elliptic_pair(1.0 / a);
  CurvePoint p;
  p.a = a;
  p.d = 0.5 + a * (ek.E / ek.K - 1.0) / 2.0;
  p.eps = 4.0 * ek.K * (2.0 * ek.E - (1.0 - 1.0 / (a * a)) * ek.K);
  return p;
}

double dhar_shastry_eps(double d) {
  if (d < 0.0 || d > 1.0)
    throw std::invalid_argument("density must be in [0, 1]");
  return 4.0 * kPi * kPi * d * (1.0 - d);
}

}  // namespace foel
