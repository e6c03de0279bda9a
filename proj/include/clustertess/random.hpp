#pragma once

// Seeded, platform-stable random numbers.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distributions are implemented here rather than taken from
// <random>, whose algorithms are implementation-defined:
//   - uniform doubles take the top 53 bits of one engine draw;
//   - Poisson variates use sequential-search inversion for mean <= 30 and
//     Hörmann's PTRS transformed rejection otherwise.

#include <cstdint>
#include <random>

namespace ctess {

struct Seed {
  std::uint64_t value = 0;

  friend bool operator==(const Seed&, const Seed&) = default;
};

/// SplitMix64 finalizer: a bijective 64-bit avalanche mix.
std::uint64_t splitmix64(std::uint64_t x);

/// Seed for replication `index` of a run seeded with `base`:
/// splitmix64(base + (index + 1) * 0x9E3779B97F4A7C15).
Seed derive_seed(Seed base, std::uint64_t index);

class Rng {
 public:
  explicit Rng(Seed seed) : engine_(splitmix64(seed.value)) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, 1).
  double uniform();
  /// Uniform in [lo, hi).
  double uniform(double lo, double hi);
  std::uint64_t poisson(double mean);

 private:
  std::mt19937_64 engine_;
};

}  // namespace ctess
