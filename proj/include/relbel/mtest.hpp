#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <vector>

#include "relbel/grid.hpp"
#include "relbel/mc.hpp"
#include "relbel/rng.hpp"

namespace relbel {

// Three-way verdict for a single hypothesis.
enum class Verdict { Accepted, Rejected, Unclassified };

const char* verdict_name(Verdict v);

// Cutoff pair (q_reject, q_accept) with 0 < q_reject <= 1 <= q_accept.
struct CutoffPair {
  double q_reject;
  double q_accept;

  CutoffPair(double q_reject_in, double q_accept_in);
};

// verdict-by-truth counts: rows Accepted/Rejected/Unclassified,
// columns {hypothesis true, hypothesis false}.
struct ConfusionMatrix {
  std::array<std::array<std::int64_t, 2>, 3> counts{};

  std::int64_t& at(Verdict v, bool hypothesis_true);
  std::int64_t at(Verdict v, bool hypothesis_true) const;
  std::int64_t total() const;
};

// Accepted iff rb > q_accept, Rejected iff rb < q_reject, otherwise
// Unclassified (in particular rb == 1 under unit cutoffs).
Verdict classify_one(double rb, const CutoffPair& cutoffs);

std::vector<Verdict> classify(const std::vector<EvidenceRecord>& records,
                              const CutoffPair& cutoffs);

// Acceptance-side selection: among records with rb > 1, rank by strength
// descending (ties: larger rb, then lower index) and keep at most
// floor(k * xi_estimate). Returns indices in ascending order.
std::vector<std::size_t> mt_select(const std::vector<EvidenceRecord>& records,
                                   double xi_estimate);

// Rejection-side counterpart: among records with rb < 1, rank by strength
// ascending (strongest evidence against first; ties: smaller rb, then lower
// index) and keep at most floor(k * upsilon_estimate). Ascending indices.
std::vector<std::size_t> mt_reject(const std::vector<EvidenceRecord>& records,
                                   double upsilon_estimate);

// One joint replication of per-hypothesis relative belief ratios.  A sampler
// encapsulates a model backend conditioned on either the null or a named
// alternative for every coordinate.
class JointRbSampler {
 public:
  virtual ~JointRbSampler() = default;
  virtual std::size_t count() const = 0;
  // Fills rb_out (resized to count()) with one replication's rb values.
  virtual void fill(Stream& stream, std::vector<double>& rb_out) const = 0;
};

// Adapter for building samplers from a lambda.
class FunctionRbSampler final : public JointRbSampler {
 public:
  FunctionRbSampler(std::size_t count,
                    std::function<void(Stream&, std::vector<double>&)> fill);
  std::size_t count() const override;
  void fill(Stream& stream, std::vector<double>& rb_out) const override;

 private:
  std::size_t count_;
  std::function<void(Stream&, std::vector<double>&)> fill_;
};

// Proportion of hypotheses with rb < q_reject, averaged over replications
// where every coordinate is conditioned on its null.
Estimate fp_rate_mc(const JointRbSampler& null_sampler, double q_reject,
                    std::uint64_t draws, std::uint64_t seed,
                    unsigned workers = 1);

// Proportion of hypotheses with rb > q_accept, averaged over replications
// where every coordinate is conditioned on the supplied alternative.
Estimate fn_rate_mc(const JointRbSampler& alt_sampler, double q_accept,
                    std::uint64_t draws, std::uint64_t seed,
                    unsigned workers = 1);

// Probability that a uniformly random subset of l hypotheses contains at
// least one false positive (rb < q_reject under the null), estimated by
// Monte Carlo with the per-replication closed form
//   1 - C(k - J, l) / C(k, l),   J = #{i : rb_i < q_reject}.
Estimate at_least_one_fp(const JointRbSampler& null_sampler, std::size_t l,
                         double q_reject, std::uint64_t draws,
                         std::uint64_t seed, unsigned workers = 1);

// Exact subset-averaged union probability over an empirical event table:
// events[r][i] marks event i occurring in draw r.  Averages the empirical
// union probability over all (k choose l) subsets by direct enumeration,
// so k is capped at 12.
double lemma1_exact(const std::vector<std::vector<bool>>& events,
                    std::size_t l);

// Exact binomial coefficient for small arguments (n <= 62).
double binomial_coefficient(std::size_t n, std::size_t r);

}  // namespace relbel
