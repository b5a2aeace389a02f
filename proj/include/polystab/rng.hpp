#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace polystab {

// SplitMix64 step.  Serves both as the core generator and as the mixer that
// derives independent child-stream seeds, so every consumer of randomness is
// a pure function of (seed, stream index).
inline std::uint64_t splitmix64_next(std::uint64_t& state) {
  state += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t state = seed ^ (0xd1b54a32d192ed03ULL * (stream + 1));
  std::uint64_t a = splitmix64_next(state);
  std::uint64_t b = splitmix64_next(state);
  return a ^ (b >> 1);
}

// Deterministic uniform generator.  Doubles are produced by direct bit
// mapping, never through distribution objects, so identical seeds give
// identical streams on every platform and toolchain.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : seed_(seed), state_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next_u64() { return splitmix64_next(state_); }

  // Uniform draw in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Child generator for an independent stream; pure in (seed, stream).
  SeededRng child(std::uint64_t stream) const { return SeededRng(mix_seed(seed_, stream)); }

 private:
  std::uint64_t seed_;
  std::uint64_t state_;
};

// Additive Kronecker sequence in Dim dimensions using the generalized
// golden-ratio increments: alpha_k = frac(1/phi^k) with phi the positive root
// of x^(Dim+1) = x + 1.  Evenly spread, deterministic, random-access, and
// seeded through the starting offset.
template <std::size_t Dim>
class KroneckerSequence {
 public:
  explicit KroneckerSequence(std::uint64_t seed) {
    double phi = 2.0;
    for (int it = 0; it < 64; ++it) phi = std::pow(1.0 + phi, 1.0 / (Dim + 1.0));
    SeededRng rng(seed);
    double inc = 1.0;
    for (std::size_t k = 0; k < Dim; ++k) {
      inc /= phi;
      alpha_[k] = inc;
      offset_[k] = rng.uniform();
    }
  }

  // Keeps full precision for indices up to ~2^40.
  std::array<double, Dim> point(std::uint64_t index) const {
    std::array<double, Dim> u;
    for (std::size_t k = 0; k < Dim; ++k) {
      double v = std::fma(static_cast<double>(index), alpha_[k], offset_[k]);
      u[k] = v - std::floor(v);
    }
    return u;
  }

 private:
  std::array<double, Dim> alpha_{};
  std::array<double, Dim> offset_{};
};

}  // namespace polystab
