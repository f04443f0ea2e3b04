#pragma once

// Shared Monte Carlo driver. Replications are grouped into fixed-size blocks;
// worker threads claim whole blocks and the per-block partial sums are folded
// in block order at the end. Combined with one RNG substream per replication,
// every estimate is bit-identical for any worker count.

#include <cstdint>
#include <functional>
#include <vector>

#include "relbel/rng.hpp"

namespace relbel {

struct Estimate {
  double mean = 0.0;
  double se = 0.0;
  std::uint64_t draws = 0;
};

inline constexpr std::uint64_t kBlockSize = 4096;

// Runs `draws` replications of `body`; body(rep, stream) returns one scalar.
// `workers` <= 1 runs inline. The mean/SE are computed from block-ordered
// accumulation and do not depend on the worker count.
Estimate run_mean(std::uint64_t seed, std::uint64_t draws, int workers,
                  const std::function<double(std::uint64_t, Stream&)>& body);

// Vector-valued variant: body fills `out` (size m) for one replication; the
// result holds per-component means and SEs in the same block-deterministic way.
struct VectorEstimate {
  std::vector<double> mean;
  std::vector<double> se;
  std::uint64_t draws = 0;
};

VectorEstimate run_mean_vector(
    std::uint64_t seed, std::uint64_t draws, int workers, std::size_t m,
    const std::function<void(std::uint64_t, Stream&, std::vector<double>&)>& body);

}  // namespace relbel
