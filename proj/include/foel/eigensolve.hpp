#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "foel/basis.hpp"
#include "foel/operators.hpp"

// Sector spectra of 2H with total-spin and translation-momentum labels.
// Dense path for small sectors, Lanczos with full reorthogonalization for
// large ones.  Energies are kept in the 2H convention throughout; callers
// divide by two at the reporting boundary.

namespace foel {

struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LabeledLevel {
  double energy_2h = 0.0;
  double total_spin_s = 0.0;            // half-integer
  std::vector<int> momentum_indices;    // j with T-eigenvalue e^{2 pi i j/N}
  int multiplicity = 1;
};

enum class SolveMethod { dense, lanczos };

struct SolveOptions {
  std::size_t dense_threshold = 4096;
  double tol_degeneracy = 1e-9;  // relative clustering tolerance on energy_2h
  double tol_label = 1e-6;       // |rayleigh - s(s+1)| acceptance window
  double lanczos_tol = 1e-8;     // residual norm per converged pair
  int lanczos_max_iter = 0;      // 0: min(dim, 4*count + 320)
  std::uint64_t seed = 20240915;
};

struct SpectrumReport {
  Sector sector;
  SolveMethod method = SolveMethod::dense;
  double tolerance = 0.0;
  std::vector<LabeledLevel> levels;  // ascending by (energy, s)
  std::vector<std::string> label_warnings;
  double max_residual = 0.0;

  // Raw eigenpairs, retained so labels can be recomputed downstream.
  Eigen::VectorXd values;
  Eigen::MatrixXd vectors;
};

// All eigenvalues of 2H on the sector; residual per pair <= 1e-10.
SpectrumReport full_spectrum(const SectorBasis& basis,
                             const SolveOptions& opts = {});

// The `count` smallest eigenvalues (as captured by the Krylov space) with
// residuals <= opts.lanczos_tol.  Throws SolverError on non-convergence.
SpectrumReport lowest_band(const SectorBasis& basis, int count,
                           const SolveOptions& opts = {});

// Fill report.levels from report.values/vectors: cluster degenerate
// energies, split each cluster by S^2, then extract translation momenta.
void label_levels(const SectorBasis& basis, SpectrumReport& report,
                  const SolveOptions& opts = {});

}  // namespace foel
