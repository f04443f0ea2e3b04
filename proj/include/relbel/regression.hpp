#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <memory>

#include "relbel/grid.hpp"
#include "relbel/mc.hpp"
#include "relbel/mtest.hpp"

namespace relbel {

// Design matrix with an explicit all-ones intercept as the first column.
struct DesignMatrix {
  Eigen::MatrixXd X;           // n x (k+1)
  bool standardized = false;

  Eigen::Index n() const { return X.rows(); }
  Eigen::Index predictors() const { return X.cols() - 1; }
};

// Centers every non-intercept column and scales it to unit Euclidean norm.
// The first column must already be the intercept.  A column that is constant
// after centering is rejected.
DesignMatrix standardize(const Eigen::MatrixXd& X_raw);

// Normal-gamma prior: beta | sigma^2 ~ N(0, sigma^2 lambda0^2 I) and
// 1/sigma^2 ~ gamma(alpha1, rate alpha2).
struct RegressionPrior {
  double lambda0;
  double alpha1;
  double alpha2;
};

struct GammaHyper {
  double alpha1;
  double alpha2;
};

// Largest row norm of the design matrix (intercept included); used to bound
// |x_i' beta| when translating a response-scale bound into a prior scale.
double elicit_tau0(const Eigen::MatrixXd& X);

// lambda0 = m0 / (s2 tau0): m0 bounds the mean response deviation, s2 the
// upper end of the plausible error sd.
double elicit_lambda0(double m0, double s2, double tau0);

// Chooses (alpha1, alpha2) so the induced prior on the error sd places
// probability gamma_vc on (s1, s2) after scaling by the two-sided normal
// quantile z = Phi^{-1}((1+gamma_vc)/2):
//   P(1/sigma^2 <= z^2/s1^2) = (1+gamma_vc)/2   (enforced exactly)
//   P(1/sigma^2 <= z^2/s2^2) = (1-gamma_vc)/2   (matched by the scan)
// alpha1 is scanned upward on a 0.01 lattice until the second equation's
// residual falls within 1e-3 in probability units.
GammaHyper solve_gamma_hyperparams(double s1, double s2, double gamma_vc);

// Conjugate posterior: beta | sigma^2, y ~ N(beta_mean, sigma^2 scale) and
// 1/sigma^2 | y ~ gamma(shape, rate).
struct RegressionPosterior {
  Eigen::VectorXd beta_mean;   // scale * X' y
  Eigen::MatrixXd scale;       // (X'X + Sigma0^{-1})^{-1}
  double shape;                // (n + 2 alpha1) / 2
  double rate;                 // (y'y - y'X scale X'y + 2 alpha2) / 2

  double dof() const { return 2.0 * shape; }
  double rate_full() const { return 2.0 * rate; }
};

// Full-rank posterior with Sigma0 = lambda0^2 I.  Throws rank_deficient when
// the design loses full column rank (tolerance 1e-10), directing the caller
// to the reduced-basis path.
RegressionPosterior posterior(const DesignMatrix& design,
                              const Eigen::VectorXd& y,
                              const RegressionPrior& prior);

// Location-scale Student-t description of a one-dimensional marginal.
struct ScaledT {
  double dof;
  double loc;
  double scale;
};

double scaled_t_pdf(const ScaledT& t, double x);
double scaled_t_cdf(const ScaledT& t, double x);

// Exact coordinate marginal of the prior: scale lambda0 sqrt(sigma0_ii
// alpha2 / alpha1), dof 2 alpha1.  sigma0_ii is the unit-variance factor of
// the coordinate's conditional prior (1 for Sigma0 = lambda0^2 I).
ScaledT prior_coordinate_marginal(const RegressionPrior& prior,
                                  double sigma0_ii = 1.0);

// Reference prior density used in the evidence ratio at zero:
// scale lambda0 alpha2 sqrt(sigma0_ii / (alpha1 (alpha1 + 1))), dof 2 alpha1.
ScaledT evidence_reference_marginal(const RegressionPrior& prior,
                                    double sigma0_ii = 1.0);

// Reference prior density used by the bias Monte Carlo:
// scale lambda0 alpha2 sqrt(sigma0_ii / (2 alpha1)), dof 2 alpha1.
ScaledT bias_reference_marginal(const RegressionPrior& prior,
                                double sigma0_ii = 1.0);

// Coordinate marginal of the posterior: loc beta_mean(i), scale
// sqrt(rate_full * scale(i,i) / dof), dof n + 2 alpha1.
ScaledT posterior_coordinate_marginal(const RegressionPosterior& post,
                                      std::size_t i);

// Evidence ratio for beta_i = 0: posterior coordinate density at zero over
// the evidence reference density at zero, in closed form (gamma-function
// ratio times t-kernel times scale ratio).
double rb_beta_zero(const RegressionPosterior& post,
                    const RegressionPrior& prior, std::size_t i);

// Discretized belief for one coordinate over a grid centered at zero: cell
// masses from the evidence reference marginal (prior) and the posterior
// coordinate marginal, tails taking the leftover mass.
DiscreteBelief rb_beta_discretized(const RegressionPosterior& post,
                                   const RegressionPrior& prior,
                                   std::size_t i, const Grid& grid);

// Grid wide enough to cover every coordinate's posterior mass: half-width
// max_i(|beta_i| + 8 posterior_scale_i), at least one cell per side.
Grid regression_default_grid(const RegressionPosterior& post, double delta);

// Prior-data compatibility checks, run hierarchically: first the error
// variance, then (given a compatible variance) the coefficients.
//   tail_sigma: prior-predictive probability that the residual sum of
//     squares' predictive density falls at or below its observed value.
//   tail_beta: reference probability that a chi-square-type statistic
//     exceeds the observed scaled quadratic form of the least-squares
//     coefficients.
// Small tails (default threshold 0.05) flag conflict.
struct ConflictReport {
  double tail_sigma;
  double tail_beta;
  double threshold;

  bool sigma_conflict() const { return tail_sigma < threshold; }
  bool beta_conflict() const {
    return tail_sigma >= threshold && tail_beta < threshold;
  }
  bool flagged() const { return sigma_conflict() || beta_conflict(); }
};

ConflictReport conflict_check(const DesignMatrix& design,
                              const Eigen::VectorXd& y,
                              const RegressionPrior& prior,
                              std::uint64_t draws, std::uint64_t seed,
                              double threshold = 0.05);

// Scales lambda0 by factor > 1, leaving the gamma hyperparameters unchanged.
RegressionPrior inflate_prior(const RegressionPrior& prior, double factor);

// Design-stage error rates, averaged over the non-intercept coordinates:
//   fp: probability a coordinate with its coefficient forced to zero yields
//       an evidence ratio below q_reject;
//   fn: the same with the coefficient forced to grid_delta/2 and the ratio
//       above q_accept.
// Coefficient/noise draws follow the prior; the evidence ratio at zero uses
// the bias reference marginal.
struct BiasRates {
  Estimate fp;
  Estimate fn;
};

BiasRates regression_bias_mc(const DesignMatrix& design,
                             const RegressionPrior& prior, double grid_delta,
                             double q_reject, double q_accept,
                             std::uint64_t draws, std::uint64_t seed,
                             unsigned workers = 1);

// Joint per-coordinate evidence-ratio samplers for the generic testing
// engine; one fill = one simulated dataset from the prior with the named
// coordinate value forced per hypothesis.
std::unique_ptr<JointRbSampler> regression_null_rb_sampler(
    const DesignMatrix& design, const RegressionPrior& prior);
std::unique_ptr<JointRbSampler> regression_alt_rb_sampler(
    const DesignMatrix& design, const RegressionPrior& prior,
    double grid_delta);

namespace detail {

// Posterior under a general coordinate prior precision Sigma0^{-1} (the
// full-rank path passes lambda0^{-2} I).  X must have full column rank.
RegressionPosterior posterior_with_prior_precision(
    const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
    const Eigen::MatrixXd& prior_precision, double alpha1, double alpha2);

}  // namespace detail

}  // namespace relbel
