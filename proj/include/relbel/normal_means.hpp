#pragma once

// Evidence analysis for k independent location parameters observed through
// normal samples with known sampling standard deviation: conjugate normal
// location priors, per-hypothesis cell evidence, a-priori error-rate design
// curves (exact and discretized), and the prior/posterior distribution of the
// proportion of hypotheses sitting in the null cell.

#include <cstdint>
#include <vector>

#include "relbel/grid.hpp"
#include "relbel/mc.hpp"
#include "relbel/rng.hpp"

namespace relbel {

// mu_i ~ N(mu0, (lambda0*sigma)^2), independently across i.
struct NormalPrior {
  double mu0 = 0.0;
  double lambda0 = 1.0;
};

// Chooses lambda0 so that the central interval (m_lo, m_hi) carries prior
// probability `coverage`; mu0 is the interval midpoint.
NormalPrior elicit_normal_prior(double m_lo, double m_hi, double sigma, double coverage);

struct PosteriorParams {
  double mean = 0.0;
  double sd = 0.0;
};

// Conjugate update for one coordinate from a sample mean of size n.
PosteriorParams posterior_params(double xbar, int n, double sigma, const NormalPrior& prior);

// Prior and posterior cell masses for one coordinate over `grid`.
DiscreteBelief rb_cells(double xbar, int n, double sigma, const NormalPrior& prior,
                        const Grid& grid);

// Belief ratio of the width-delta cell centered at mu0 (fast path: exactly the
// center-cell ratio of rb_cells on a grid centered at mu0).
double rb_at_null(double xbar, int n, double sigma, const NormalPrior& prior, double delta);

// Grid covering the elicitation interval: centered at mu0 with
// T = ceil((m_hi - mu0)/delta - 1/2).
Grid default_grid(const NormalPrior& prior, double delta, double m_lo, double m_hi);

// Threshold a_n(q): the |z|-cutoff at which the large-sample belief ratio for
// the null crosses q. Zero when q^2 > n*lambda0^2 + 1 (ratio never that small).
double a_n(double q, int n, double lambda0);

// Prior probability of evidence against a true null smaller than q_R
// (limiting continuous version): 2(1 - Phi(a_n(q_R))).
double bias_against(int n, double lambda0, double q_R);

// Prior probability of evidence for the null of at least q_A when the true
// value sits delta/2 away (limiting continuous version).
double bias_favor(int n, double lambda0, double delta, double sigma, double q_A);

// Discretized counterparts, by simulation: the sampling distribution of the
// center-cell belief ratio under mu = mu0 (against) or mu = mu0 + delta/2
// (favor). Events use the same conventions as the error-rate definitions:
// rb < q_R for "against", rb > q_A for "favor".
Estimate disc_bias_against_mc(int n, double lambda0, double delta, double sigma,
                                  double q_R, std::uint64_t draws, std::uint64_t seed,
                                  int workers);
Estimate disc_bias_favor_mc(int n, double lambda0, double delta, double sigma,
                                double q_A, std::uint64_t draws, std::uint64_t seed,
                                int workers);

// Largest value the center-cell belief ratio can attain: the reciprocal of
// the prior mass of the null cell.
double max_rb_at_null(const NormalPrior& prior, double sigma, double delta);

// Prior probability one coordinate lands in the null cell.
double null_cell_prior_prob(const NormalPrior& prior, double sigma, double delta);

// Distribution of the proportion of coordinates in the null cell, over the
// support {0, 1/k, ..., 1}.
struct ProportionBelief {
  std::vector<double> prior;      // exact binomial pmf, size k+1
  std::vector<double> posterior;  // Monte Carlo estimate, size k+1
  std::vector<double> rb;         // posterior/prior per support point
  int k = 0;
  int estimate_count = 0;         // count j maximizing rb
  double estimate() const { return static_cast<double>(estimate_count) / k; }
};

// Posterior over the null-cell proportion by simulation: each coordinate is
// an independent Bernoulli with its posterior null-cell probability.
ProportionBelief proportion_belief(const std::vector<double>& xbar, int n, double sigma,
                                   const NormalPrior& prior, double delta,
                                   std::uint64_t draws, std::uint64_t seed, int workers);

// Draws one dataset of per-coordinate sample means given the true means.
std::vector<double> simulate_xbar(const std::vector<double>& true_means, int n,
                                  double sigma, Stream& stream);

}  // namespace relbel
