#pragma once

#include <cstddef>
#include <string_view>

// Double-precision vector kernels used in the eigensolver inner loops
// (Lanczos reorthogonalization is dominated by dot/axpy chains).
//
// Each kernel has a portable scalar reference implementation and an AVX2
// variant.  The active set is chosen once at startup from CPUID; the scalar
// path is always available and is the correctness reference the SIMD
// variants are tested against.

namespace foel::kernels {

double dot(const double* x, const double* y, std::size_t n);

// y += a * x
void axpy(double a, const double* x, double* y, std::size_t n);

// x *= a
void scal(double a, double* x, std::size_t n);

double nrm2(const double* x, std::size_t n);

// Name of the dispatched implementation ("avx2" or "scalar").
std::string_view active_implementation();

// Force a specific implementation (used by the equivalence tests).
// Returns false if the requested one is unavailable on this machine.
bool force_implementation(std::string_view name);

namespace scalar {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
double nrm2(const double* x, std::size_t n);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define FOEL_HAVE_AVX2_KERNELS 1
namespace avx2 {
double dot(const double* x, const double* y, std::size_t n);
void axpy(double a, const double* x, double* y, std::size_t n);
void scal(double a, double* x, std::size_t n);
double nrm2(const double* x, std::size_t n);
}  // namespace avx2
#endif

}  // namespace foel::kernels
