#include "relbel/mc.hpp"

#include <atomic>
#include <cmath>
#include <thread>

#include "relbel/errors.hpp"

namespace relbel {

namespace {

struct BlockSums {
  double sum = 0.0;
  double sumsq = 0.0;
};

std::uint64_t block_count(std::uint64_t draws) {
  return (draws + kBlockSize - 1) / kBlockSize;
}

template <typename PerBlock>
void drive(std::uint64_t draws, int workers, PerBlock&& per_block) {
  const std::uint64_t blocks = block_count(draws);
  if (workers <= 1 || blocks <= 1) {
    for (std::uint64_t b = 0; b < blocks; ++b) per_block(b);
    return;
  }
  std::atomic<std::uint64_t> next{0};
  auto worker = [&]() {
    for (;;) {
      const std::uint64_t b = next.fetch_add(1);
      if (b >= blocks) return;
      per_block(b);
    }
  };
  const std::uint64_t nthreads =
      std::min<std::uint64_t>(static_cast<std::uint64_t>(workers), blocks);
  std::vector<std::thread> pool;
  pool.reserve(nthreads);
  for (std::uint64_t t = 0; t < nthreads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

}  // namespace

Estimate run_mean(std::uint64_t seed, std::uint64_t draws, int workers,
                  const std::function<double(std::uint64_t, Stream&)>& body) {
  if (draws == 0) throw invalid_input("Monte Carlo draw count must be positive");
  const std::uint64_t blocks = block_count(draws);
  std::vector<BlockSums> partial(blocks);

  drive(draws, workers, [&](std::uint64_t b) {
    const std::uint64_t lo = b * kBlockSize;
    const std::uint64_t hi = std::min(draws, lo + kBlockSize);
    BlockSums acc;
    for (std::uint64_t rep = lo; rep < hi; ++rep) {
      Stream stream(seed, rep);
      const double v = body(rep, stream);
      acc.sum += v;
      acc.sumsq += v * v;
    }
    partial[b] = acc;
  });

  double sum = 0.0, sumsq = 0.0;
  for (const auto& p : partial) {
    sum += p.sum;
    sumsq += p.sumsq;
  }
  Estimate est;
  est.draws = draws;
  const double n = static_cast<double>(draws);
  est.mean = sum / n;
  const double var = draws > 1 ? std::max(0.0, (sumsq - n * est.mean * est.mean) / (n - 1.0)) : 0.0;
  est.se = std::sqrt(var / n);
  return est;
}

VectorEstimate run_mean_vector(
    std::uint64_t seed, std::uint64_t draws, int workers, std::size_t m,
    const std::function<void(std::uint64_t, Stream&, std::vector<double>&)>& body) {
  if (draws == 0) throw invalid_input("Monte Carlo draw count must be positive");
  if (m == 0) throw invalid_input("vector Monte Carlo needs at least one component");
  const std::uint64_t blocks = block_count(draws);
  std::vector<std::vector<double>> partial_sum(blocks), partial_sumsq(blocks);

  drive(draws, workers, [&](std::uint64_t b) {
    const std::uint64_t lo = b * kBlockSize;
    const std::uint64_t hi = std::min(draws, lo + kBlockSize);
    std::vector<double> sum(m, 0.0), sumsq(m, 0.0), value(m, 0.0);
    for (std::uint64_t rep = lo; rep < hi; ++rep) {
      Stream stream(seed, rep);
      body(rep, stream, value);
      for (std::size_t j = 0; j < m; ++j) {
        sum[j] += value[j];
        sumsq[j] += value[j] * value[j];
      }
    }
    partial_sum[b] = std::move(sum);
    partial_sumsq[b] = std::move(sumsq);
  });

  VectorEstimate est;
  est.draws = draws;
  est.mean.assign(m, 0.0);
  est.se.assign(m, 0.0);
  std::vector<double> sumsq(m, 0.0);
  for (std::uint64_t b = 0; b < blocks; ++b) {
    for (std::size_t j = 0; j < m; ++j) {
      est.mean[j] += partial_sum[b][j];
      sumsq[j] += partial_sumsq[b][j];
    }
  }
  const double n = static_cast<double>(draws);
  for (std::size_t j = 0; j < m; ++j) {
    est.mean[j] /= n;
    const double var =
        draws > 1 ? std::max(0.0, (sumsq[j] - n * est.mean[j] * est.mean[j]) / (n - 1.0)) : 0.0;
    est.se[j] = std::sqrt(var / n);
  }
  return est;
}

}  // namespace relbel
