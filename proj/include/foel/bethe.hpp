#pragma once

#include <complex>
#include <string>
#include <vector>

// Rapidity-form Bethe machinery for the XXX ring: residuals of the adopted
// logarithmic equations, Newton refinement, Hermite-point initialization of
// the lowest band, continuation in the ring length N treated as a real
// parameter, and the closed-form energy-density curves.
//
// Adopted equations, for rapidities lambda_1..lambda_k and integer mode
// numbers I_j:
//
//   F_j = N*[Log(l_j + i/2) - Log(l_j - i/2)] - 2 pi i I_j
//         - sum_{l != j} [Log(l_j - l_l + i) - Log(l_j - l_l - i)] = 0
//
// with principal logarithms.  For a single magnon this reduces to
// lambda = (1/2) cot(pi I/N) with momentum 2 pi I/N; the lowest band at
// momentum 2 pi k/N has I_j = 1 for every root.  Energy per root in the 2H
// convention is 1/(lambda^2 + 1/4), which reproduces the dispersion
// 2(1 - cos p) under lambda = (1/2) cot(p/2).  Newton iterates on
// exp(F_j) - 1, which is insensitive to the logarithm branches, so a root
// family can drift across a cut without breaking the iteration; the mode
// numbers are re-snapped from the converged residual.

namespace foel {

using Complex = std::complex<double>;

struct BetheState {
  double n_param = 0.0;  // ring length; real-valued during continuation
  int k = 0;
  std::vector<Complex> roots;
  std::vector<int> quantum_numbers;  // branch choice (mode numbers)
  double residual_norm = 0.0;
  bool converged = false;
};

struct NewtonReport {
  BetheState state;
  int iterations = 0;
  bool converged = false;
  bool jacobian_singular = false;
  bool roots_collided = false;
  std::vector<std::vector<Complex>> iterate_history;  // kept on failure
};

struct ContinuationOptions {
  double initial_step = 1.0;
  double floor_step = 1.0 / 16.0;
  int max_floor_failures = 3;
  int newton_max_iter = 60;
  double newton_tol = 1e-12;
  double root_separation_guard = 1e-9;
};

struct ContinuationResult {
  std::vector<BetheState> chain;  // converged states, decreasing n_param
  bool reached_target = false;
  double stopped_at = 0.0;
  std::string diagnostics;
};

// Residuals F_j at the state's roots and quantum numbers.
std::vector<Complex> bethe_residual(const BetheState& state);

NewtonReport newton_refine(const BetheState& state, int max_iter = 60,
                           double tol = 1e-12);

// Lowest-band starting point: lambda_j = N/(2 pi) + i c sqrt(N) x_j with
// x_j the zeros of the degree-k Hermite polynomial.  The scale c is a
// tunable; the default converges for k <= 6 at N = 60 in under 20 Newton
// iterations.
BetheState hermite_init(int k, double n_param, double scale = 0.225);

std::vector<double> hermite_zeros(int k);

ContinuationResult continue_in_n(const BetheState& start, double n_target,
                                 const ContinuationOptions& opts = {});

// Sum of 1/(lambda^2 + 1/4); 2H convention.  Requires integer n_param.
double energy_from_roots(const BetheState& state);

// Total momentum in units of 2 pi / N.
double momentum_index(const BetheState& state);

struct EllipticPair {
  double modulus = 0.0;  // m = 1/a
  double K = 0.0;
  double E = 0.0;
};

// Complete elliptic integrals K(m), E(m) by arithmetic-geometric mean.
EllipticPair elliptic_pair(double m);

struct CurvePoint {
  double a = 0.0;
  double d = 0.0;    // spin-deviate density
  double eps = 0.0;  // energy density
};

// d = 1/2 + a[(E(1/a)/K(1/a)) - 1]/2,
// eps = 4 K(1/a) [2 E(1/a) - (1 - 1/a^2) K(1/a)],  for a > 1.
CurvePoint sutherland_curve(double a);

// eps = 4 pi^2 d (1 - d)
double dhar_shastry_eps(double d);

}  // namespace foel
