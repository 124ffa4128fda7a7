#include "foel/kernels.hpp"

#include <cmath>

namespace foel::kernels {

namespace scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scal(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

double nrm2(const double* x, std::size_t n) { return std::sqrt(dot(x, x, n)); }

}  // namespace scalar

namespace {

struct Dispatch {
  double (*dot)(const double*, const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*scal)(double, double*, std::size_t);
  double (*nrm2)(const double*, std::size_t);
  std::string_view name;
};

constexpr Dispatch kScalar{scalar::dot, scalar::axpy, scalar::scal,
                           scalar::nrm2, "scalar"};

#ifdef FOEL_HAVE_AVX2_KERNELS
constexpr Dispatch kAvx2{avx2::dot, avx2::axpy, avx2::scal, avx2::nrm2,
                         "avx2"};

bool cpu_has_avx2() { return __builtin_cpu_supports("avx2") != 0; }
#endif

Dispatch select() {
#ifdef FOEL_HAVE_AVX2_KERNELS
  if (cpu_has_avx2()) return kAvx2;
#endif
  return kScalar;
}

Dispatch g_active = select();

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  return g_active.dot(x, y, n);
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  g_active.axpy(a, x, y, n);
}

void scal(double a, double* x, std::size_t n) { g_active.scal(a, x, n); }

double nrm2(const double* x, std::size_t n) { return g_active.nrm2(x, n); }

std::string_view active_implementation() { return g_active.name; }

bool force_implementation(std::string_view name) {
  if (name == "scalar") {
    g_active = kScalar;
    return true;
  }
#ifdef FOEL_HAVE_AVX2_KERNELS
  if (name == "avx2" && cpu_has_avx2()) {
    g_active = kAvx2;
    return true;
  }
#endif
  return false;
}

}  // namespace foel::kernels
