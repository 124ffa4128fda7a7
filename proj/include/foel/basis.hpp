#pragma once

#include <cstdint>
#include <vector>

// Ising configurations of a spin-1/2 chain or ring, enumerated per
// fixed-magnon sector.  Site j carries a down spin iff bit j is set.
// Capacity is one 32-bit word (the largest case of interest is N = 16).

namespace foel {

enum class Geometry { ring, chain };

inline const char* to_string(Geometry g) {
  return g == Geometry::ring ? "ring" : "chain";
}

struct SpinConfiguration {
  std::uint32_t bits = 0;
  int n_sites = 0;

  bool down_at(int site) const { return (bits >> site) & 1u; }
  int magnons() const { return __builtin_popcount(bits); }

  friend bool operator==(const SpinConfiguration&,
                         const SpinConfiguration&) = default;
};

// Cyclic shift by one site: the down spin at site j moves to site j+1 mod N.
SpinConfiguration translate(const SpinConfiguration& c);

struct Sector {
  int n_sites = 0;
  int n_magnons = 0;
  Geometry geometry = Geometry::ring;

  std::uint64_t dimension() const;
};

constexpr int kMaxSites = 32;

class SectorBasis {
 public:
  explicit SectorBasis(const Sector& sector);

  const Sector& sector() const { return sector_; }
  std::size_t size() const { return states_.size(); }
  SpinConfiguration state(std::size_t i) const {
    return {states_[i], sector_.n_sites};
  }
  std::uint32_t bits(std::size_t i) const { return states_[i]; }
  const std::vector<std::uint32_t>& states() const { return states_; }

  // Position of a configuration in the (strictly increasing) state list.
  std::size_t index_of(std::uint32_t bits) const;

 private:
  Sector sector_;
  std::vector<std::uint32_t> states_;
};

inline SectorBasis enumerate_sector(const Sector& sector) {
  return SectorBasis(sector);
}

struct TranslationOrbit {
  SpinConfiguration representative;  // minimum bit pattern in the orbit
  int period = 0;
};

// Partition of a ring-sector basis into translation orbits.
std::vector<TranslationOrbit> orbit_decompose(const SectorBasis& basis);

std::uint64_t binomial(int n, int k);

}  // namespace foel
