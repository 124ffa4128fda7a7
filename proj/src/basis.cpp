#include "foel/basis.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace foel {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 0; i < std::min(k, n - k); ++i) r = r * (n - i) / (i + 1);
  return r;
}

SpinConfiguration translate(const SpinConfiguration& c) {
  const int n = c.n_sites;
  const std::uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1u);
  std::uint32_t b = ((c.bits << 1) | (c.bits >> (n - 1))) & mask;
  return {b, n};
}

std::uint64_t Sector::dimension() const { return binomial(n_sites, n_magnons); }

SectorBasis::SectorBasis(const Sector& sector) : sector_(sector) {
  const int n = sector.n_sites;
  const int k = sector.n_magnons;
  if (n < 2 || n > kMaxSites)
    throw std::invalid_argument("sector capacity exceeded: N = " +
                                std::to_string(n) + " (supported: 2..32)");
  if (k < 0 || k > n)
    throw std::invalid_argument("magnon count out of range");
  if (sector.geometry == Geometry::ring && n < 3)
    throw std::invalid_argument(
        "ring needs N >= 3 (N = 2 would double the edge; use a chain)");

  states_.reserve(sector.dimension());
  if (k == 0) {
    states_.push_back(0);
    return;
  }
  // Gosper's hack walks the k-subsets in increasing bit-pattern order.
  std::uint32_t v = (1u << k) - 1u;
  const std::uint32_t limit = (n == 32) ? ~0u : (1u << n);
  while (n == 32 ? true : v < limit) {
    states_.push_back(v);
    std::uint32_t t = v | (v - 1);
    std::uint32_t next = (t + 1) | (((~t & (t + 1)) - 1) >> (__builtin_ctz(v) + 1));
    if (next <= v) break;  // wrapped (only possible at full width)
    v = next;
    if (n == 32 && states_.size() == sector.dimension()) break;
  }
}

std::size_t SectorBasis::index_of(std::uint32_t bits) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), bits);
  if (it == states_.end() || *it != bits)
    throw std::out_of_range("configuration not in sector basis");
  return static_cast<std::size_t>(it - states_.begin());
}

std::vector<TranslationOrbit> orbit_decompose(const SectorBasis& basis) {
  if (basis.sector().geometry != Geometry::ring)
    throw std::invalid_argument("orbit decomposition needs ring geometry");
  const int n = basis.sector().n_sites;
  std::vector<bool> seen(basis.size(), false);
  std::vector<TranslationOrbit> orbits;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (seen[i]) continue;
    SpinConfiguration rep = basis.state(i);
    SpinConfiguration c = rep;
    int period = 0;
    do {
      seen[basis.index_of(c.bits)] = true;
      c = translate(c);
      ++period;
    } while (c.bits != rep.bits && period <= n);
    orbits.push_back({rep, period});
  }
  return orbits;
}

}  // namespace foel
