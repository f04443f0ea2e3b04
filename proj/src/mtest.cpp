#include "relbel/mtest.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "relbel/errors.hpp"

namespace relbel {

namespace {

int verdict_row(Verdict v) {
  switch (v) {
    case Verdict::Accepted:
      return 0;
    case Verdict::Rejected:
      return 1;
    case Verdict::Unclassified:
      return 2;
  }
  throw numeric_error("unreachable verdict value");
}

// Ranked index selection shared by the acceptance and rejection paths.
// `better` orders candidate indices best-first.
std::vector<std::size_t> select_capped(
    const std::vector<EvidenceRecord>& records, double proportion,
    const std::function<bool(std::size_t)>& eligible,
    const std::function<bool(std::size_t, std::size_t)>& better) {
  detail::require(std::isfinite(proportion) && proportion >= 0.0 &&
                      proportion <= 1.0,
                  "selection proportion must lie in [0, 1]");
  const auto k = records.size();
  const auto cap = static_cast<std::size_t>(
      std::floor(static_cast<double>(k) * proportion + 1e-9));
  std::vector<std::size_t> candidates;
  candidates.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    if (eligible(i)) candidates.push_back(i);
  }
  std::sort(candidates.begin(), candidates.end(), better);
  if (candidates.size() > cap) candidates.resize(cap);
  std::sort(candidates.begin(), candidates.end());
  return candidates;
}

}  // namespace

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Accepted:
      return "accepted";
    case Verdict::Rejected:
      return "rejected";
    case Verdict::Unclassified:
      return "unclassified";
  }
  throw numeric_error("unreachable verdict value");
}

CutoffPair::CutoffPair(double q_reject_in, double q_accept_in)
    : q_reject(q_reject_in), q_accept(q_accept_in) {
  detail::require(std::isfinite(q_reject) && q_reject > 0.0 && q_reject <= 1.0,
                  "rejection cutoff must lie in (0, 1]");
  detail::require(std::isfinite(q_accept) && q_accept >= 1.0,
                  "acceptance cutoff must be at least 1");
}

std::int64_t& ConfusionMatrix::at(Verdict v, bool hypothesis_true) {
  return counts[static_cast<std::size_t>(verdict_row(v))]
               [hypothesis_true ? 0 : 1];
}

std::int64_t ConfusionMatrix::at(Verdict v, bool hypothesis_true) const {
  return counts[static_cast<std::size_t>(verdict_row(v))]
               [hypothesis_true ? 0 : 1];
}

std::int64_t ConfusionMatrix::total() const {
  std::int64_t sum = 0;
  for (const auto& row : counts) sum += row[0] + row[1];
  return sum;
}

Verdict classify_one(double rb, const CutoffPair& cutoffs) {
  detail::require(std::isfinite(rb) && rb >= 0.0,
                  "relative belief ratio must be finite and nonnegative");
  if (rb > cutoffs.q_accept) return Verdict::Accepted;
  if (rb < cutoffs.q_reject) return Verdict::Rejected;
  return Verdict::Unclassified;
}

std::vector<Verdict> classify(const std::vector<EvidenceRecord>& records,
                              const CutoffPair& cutoffs) {
  std::vector<Verdict> verdicts;
  verdicts.reserve(records.size());
  for (const auto& record : records) {
    verdicts.push_back(classify_one(record.rb, cutoffs));
  }
  return verdicts;
}

std::vector<std::size_t> mt_select(const std::vector<EvidenceRecord>& records,
                                   double xi_estimate) {
  return select_capped(
      records, xi_estimate,
      [&](std::size_t i) { return records[i].rb > 1.0; },
      [&](std::size_t a, std::size_t b) {
        if (records[a].strength != records[b].strength)
          return records[a].strength > records[b].strength;
        if (records[a].rb != records[b].rb) return records[a].rb > records[b].rb;
        return a < b;
      });
}

std::vector<std::size_t> mt_reject(const std::vector<EvidenceRecord>& records,
                                   double upsilon_estimate) {
  return select_capped(
      records, upsilon_estimate,
      [&](std::size_t i) { return records[i].rb < 1.0; },
      [&](std::size_t a, std::size_t b) {
        if (records[a].strength != records[b].strength)
          return records[a].strength < records[b].strength;
        if (records[a].rb != records[b].rb) return records[a].rb < records[b].rb;
        return a < b;
      });
}

FunctionRbSampler::FunctionRbSampler(
    std::size_t count, std::function<void(Stream&, std::vector<double>&)> fill)
    : count_(count), fill_(std::move(fill)) {
  detail::require(count_ > 0, "sampler must cover at least one hypothesis");
  detail::require(static_cast<bool>(fill_), "sampler body must be callable");
}

std::size_t FunctionRbSampler::count() const { return count_; }

void FunctionRbSampler::fill(Stream& stream,
                             std::vector<double>& rb_out) const {
  rb_out.resize(count_);
  fill_(stream, rb_out);
}

namespace {

Estimate rate_mc(const JointRbSampler& sampler,
                 const std::function<bool(double)>& event,
                 std::uint64_t draws, std::uint64_t seed, unsigned workers) {
  const auto k = sampler.count();
  return run_mean(seed, draws, workers,
                  [&](std::uint64_t /*rep*/, Stream& stream) {
                    thread_local std::vector<double> rb;
                    sampler.fill(stream, rb);
                    std::size_t hits = 0;
                    for (double value : rb) {
                      if (event(value)) ++hits;
                    }
                    return static_cast<double>(hits) /
                           static_cast<double>(k);
                  });
}

}  // namespace

Estimate fp_rate_mc(const JointRbSampler& null_sampler, double q_reject,
                    std::uint64_t draws, std::uint64_t seed,
                    unsigned workers) {
  detail::require(std::isfinite(q_reject) && q_reject > 0.0 && q_reject <= 1.0,
                  "rejection cutoff must lie in (0, 1]");
  return rate_mc(null_sampler, [=](double rb) { return rb < q_reject; }, draws,
                 seed, workers);
}

Estimate fn_rate_mc(const JointRbSampler& alt_sampler, double q_accept,
                    std::uint64_t draws, std::uint64_t seed,
                    unsigned workers) {
  detail::require(std::isfinite(q_accept) && q_accept >= 1.0,
                  "acceptance cutoff must be at least 1");
  return rate_mc(alt_sampler, [=](double rb) { return rb > q_accept; }, draws,
                 seed, workers);
}

Estimate at_least_one_fp(const JointRbSampler& null_sampler, std::size_t l,
                         double q_reject, std::uint64_t draws,
                         std::uint64_t seed, unsigned workers) {
  const auto k = null_sampler.count();
  detail::require(l >= 1 && l <= k,
                  "subset size must lie between 1 and the hypothesis count");
  detail::require(std::isfinite(q_reject) && q_reject > 0.0 && q_reject <= 1.0,
                  "rejection cutoff must lie in (0, 1]");
  return run_mean(
      seed, draws, workers, [&, l, q_reject](std::uint64_t, Stream& stream) {
        thread_local std::vector<double> rb;
        null_sampler.fill(stream, rb);
        std::size_t false_positives = 0;
        for (double value : rb) {
          if (value < q_reject) ++false_positives;
        }
        const std::size_t clear = k - false_positives;
        if (clear < l) return 1.0;
        // 1 - C(clear, l)/C(k, l) computed as a stable running product.
        double miss = 1.0;
        for (std::size_t t = 0; t < l; ++t) {
          miss *= static_cast<double>(clear - t) / static_cast<double>(k - t);
        }
        return 1.0 - miss;
      });
}

double binomial_coefficient(std::size_t n, std::size_t r) {
  detail::require(n <= 62, "binomial coefficient argument too large");
  if (r > n) return 0.0;
  r = std::min(r, n - r);
  double result = 1.0;
  for (std::size_t t = 1; t <= r; ++t) {
    result *= static_cast<double>(n - r + t);
    result /= static_cast<double>(t);
  }
  return std::round(result);
}

double lemma1_exact(const std::vector<std::vector<bool>>& events,
                    std::size_t l) {
  detail::require(!events.empty(), "event table must contain draws");
  const std::size_t k = events.front().size();
  detail::require(k >= 1 && k <= 12,
                  "exact enumeration supports at most 12 events");
  detail::require(l >= 1 && l <= k,
                  "subset size must lie between 1 and the event count");
  std::vector<std::uint32_t> rows;
  rows.reserve(events.size());
  for (const auto& row : events) {
    detail::require(row.size() == k, "ragged event table");
    std::uint32_t bits = 0;
    for (std::size_t i = 0; i < k; ++i) {
      if (row[i]) bits |= (1u << i);
    }
    rows.push_back(bits);
  }
  const auto draws = static_cast<double>(rows.size());
  double subset_sum = 0.0;
  std::size_t subset_count = 0;
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != l) continue;
    ++subset_count;
    std::size_t hits = 0;
    for (std::uint32_t bits : rows) {
      if (bits & mask) ++hits;
    }
    subset_sum += static_cast<double>(hits) / draws;
  }
  return subset_sum / static_cast<double>(subset_count);
}

}  // namespace relbel
