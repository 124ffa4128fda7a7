#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "foel/kernels.hpp"

using namespace foel;

namespace {

std::vector<double> random_vec(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_CASE("scalar kernels on known values") {
  const double x[] = {1.0, 2.0, 3.0};
  const double y[] = {4.0, -5.0, 6.0};
  CHECK(kernels::scalar::dot(x, y, 3) == doctest::Approx(12.0));
  CHECK(kernels::scalar::nrm2(x, 3) == doctest::Approx(std::sqrt(14.0)));
  double z[] = {1.0, 1.0, 1.0};
  kernels::scalar::axpy(2.0, x, z, 3);
  CHECK(z[0] == 3.0);
  CHECK(z[2] == 7.0);
  kernels::scalar::scal(0.5, z, 3);
  CHECK(z[0] == 1.5);
}

TEST_CASE("dispatched kernels match the scalar reference") {
  INFO("active implementation: ", kernels::active_implementation());
  for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 31u, 64u, 1000u, 1001u}) {
    auto x = random_vec(n, 11 + n);
    auto y = random_vec(n, 23 + n);
    const double want_dot = kernels::scalar::dot(x.data(), y.data(), n);
    const double got_dot = kernels::dot(x.data(), y.data(), n);
    CHECK(std::abs(got_dot - want_dot) <=
          1e-13 * std::max(1.0, std::abs(want_dot)));
    CHECK(kernels::nrm2(x.data(), n) ==
          doctest::Approx(kernels::scalar::nrm2(x.data(), n)).epsilon(1e-13));

    auto y1 = y, y2 = y;
    kernels::scalar::axpy(0.37, x.data(), y1.data(), n);
    kernels::axpy(0.37, x.data(), y2.data(), n);
    for (std::size_t i = 0; i < n; ++i)
      CHECK(std::abs(y1[i] - y2[i]) <= 1e-15);

    auto x1 = x, x2 = x;
    kernels::scalar::scal(-1.75, x1.data(), n);
    kernels::scal(-1.75, x2.data(), n);
    for (std::size_t i = 0; i < n; ++i) CHECK(x1[i] == x2[i]);
  }
}

TEST_CASE("forcing implementations") {
  REQUIRE(kernels::force_implementation("scalar"));
  CHECK(kernels::active_implementation() == "scalar");
  const bool has_avx2 = kernels::force_implementation("avx2");
  if (has_avx2) {
    CHECK(kernels::active_implementation() == "avx2");
    auto x = random_vec(257, 5);
    const double a = kernels::dot(x.data(), x.data(), 257);
    kernels::force_implementation("scalar");
    const double b = kernels::dot(x.data(), x.data(), 257);
    CHECK(std::abs(a - b) <= 1e-13 * b);
    kernels::force_implementation("avx2");
  }
  CHECK_FALSE(kernels::force_implementation("neon"));
}
