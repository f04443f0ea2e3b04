#pragma once

// Deterministic random number generation. The standard <random> distributions
// are implementation-defined, so everything here is hand-specified:
// xoshiro256++ streams seeded through splitmix64, with inverse-cdf /
// rejection samplers that behave identically on every platform.
//
// Monte Carlo code derives one independent substream per replication from
// (seed, replication index); results are then invariant to how replications
// are scheduled across worker threads.

#include <cstdint>

#include "relbel/specfun.hpp"

namespace relbel {

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Stream {
 public:
  // Substream `index` of the family identified by `seed`.
  Stream(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t sm = seed;
    (void)splitmix64(sm);
    sm ^= 0xD1B54A32D192ED03ULL * (index + 1);
    for (auto& word : state_) word = splitmix64(sm);
    if ((state_[0] | state_[1] | state_[2] | state_[3]) == 0) state_[0] = 1;
  }

  std::uint64_t next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Uniform on (0,1): 53-bit mantissa, zero excluded.
  double uniform() {
    for (;;) {
      const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;
    }
  }

  // Standard normal via Marsaglia's polar method (cached spare deviate).
  double normal();

  // Gamma(shape, rate) via Marsaglia-Tsang squeeze; shape < 1 handled by boosting.
  double gamma(double shape, double rate);

  double chi_square(double dof) { return gamma(0.5 * dof, 0.5); }

 private:
  static std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  std::uint64_t state_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace relbel
