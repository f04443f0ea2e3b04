#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "relbel/grid.hpp"
#include "relbel/mtest.hpp"
#include "relbel/regression.hpp"

namespace relbel {

// Partition of a (possibly rank-deficient) predictor block into l linearly
// independent basis columns X1 and the remaining columns X2 = X1 B.  Column
// indices refer to the original predictor order.
struct BasisSplit {
  Eigen::MatrixXd X1;                        // n x l
  Eigen::MatrixXd X2;                        // n x (k - l)
  Eigen::MatrixXd B;                         // l x (k - l)
  std::vector<Eigen::Index> basis_cols;      // ascending original indices
  std::vector<Eigen::Index> dependent_cols;  // ascending original indices

  Eigen::Index l() const { return X1.cols(); }
  Eigen::Index k() const { return X1.cols() + X2.cols(); }
};

// Selects a basis by pivoted QR (singular directions below 1e-10 of the
// largest treated as zero) and solves B from the normal equations of X1.
// The predictor block must not include the intercept column.
BasisSplit split_basis(const Eigen::MatrixXd& predictors);

// Minimum-norm representative of the solution coset {beta : X beta = X
// beta_full}: omega = (I + BB')^{-1}(beta_1 + B beta_2) mapped through
// (I B)'.  Input and output are in original predictor order.
Eigen::VectorXd mp_solution(const Eigen::VectorXd& beta_full,
                            const BasisSplit& split);

// Posterior of the minimum-norm coordinates under the usual prior
// beta | sigma^2 ~ N(0, sigma^2 lambda0^2 I) pushed to omega-space, for
// centered predictor columns.  beta_mp_mean and scale_mp are in original
// predictor order; D and E are in split (basis-first) order.
struct MPPosterior {
  Eigen::VectorXd beta_mp_mean;  // k-vector
  Eigen::MatrixXd scale_mp;      // k x k, rank l
  Eigen::MatrixXd D;             // (I + BB' + lambda0^{-2}(X1'X1)^{-1})^{-1}
  Eigen::MatrixXd E;             // ((I+BB')X1'X1(I+BB') + lambda0^{-2}(I+BB'))^{-1}
  double shape;                  // (n + 2 alpha1) / 2
  double rate;                   // alpha2(X*, y) / 2, X* = (1, X1(I + BB'))

  double dof() const { return 2.0 * shape; }
  double rate_full() const { return 2.0 * rate; }
};

MPPosterior mp_posterior(const BasisSplit& split, const Eigen::VectorXd& y,
                         const RegressionPrior& prior);

// Per-coordinate unit-variance factors of the minimum-norm coordinates'
// conditional prior: diag((I B)' (I+BB')^{-1} (I B)), original order.
Eigen::VectorXd mp_prior_diag(const BasisSplit& split);

// Exact prior marginal of coordinate i of the minimum-norm coordinates:
// scale lambda0 sqrt(d_i alpha2 / alpha1), dof 2 alpha1.
ScaledT mp_prior_coordinate_marginal(const RegressionPrior& prior,
                                     const BasisSplit& split, std::size_t i);

// Posterior marginal of coordinate i: loc beta_mp_mean(i), scale
// sqrt(rate_full * scale_mp(i,i) / dof), dof n + 2 alpha1.
ScaledT mp_posterior_coordinate_marginal(const MPPosterior& post,
                                         std::size_t i);

// Discretized belief for coordinate i over a grid centered at zero, prior
// masses from the exact prior marginal and posterior masses from the
// posterior marginal.
DiscreteBelief mp_belief(const MPPosterior& post, const RegressionPrior& prior,
                         const BasisSplit& split, std::size_t i,
                         const Grid& grid);

// Orthonormal design of l contrast columns on n = m(l+1) rows: the
// (l+1)-dimensional Helmert columns with every row repeated m times and the
// result rescaled to unit column norm.  Columns are orthogonal to the
// all-ones vector.
Eigen::MatrixXd helmert_design(int l, int m);

// Block-diagonal dependence matrix: B1 (l1 x l2, top-left) and B2
// ((l - l1) x (k - l - l2), bottom-right) carry independent unit-norm
// standard-normal columns; all other entries are zero.
Eigen::MatrixXd generate_block_B(int l, int l1, int l2, int k,
                                 std::uint64_t seed);

// One simulated classification run on the block design: data generated with
// `effect` on the first l1 basis and first min(l2, k-l) dependent
// coordinates, per-coordinate discretized evidence ratios at zero, verdicts
// against the cutoffs, tabulated against the true minimum-norm coordinates.
struct BlockSimConfig {
  int l = 10;
  int l1 = 5;
  int l2 = 2;
  int m = 2;
  int k = 20;
  double effect = 4.0;
  double sigma = 1.0;
  RegressionPrior prior{2.0, 11.0, 12.0};
  double delta = 0.5;
  double q_reject = 1.0;
  double q_accept = 1.0;
};

ConfusionMatrix run_block_sim(const BlockSimConfig& config,
                              std::uint64_t seed);

}  // namespace relbel
