#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "relbel/grid.hpp"
#include "relbel/mtest.hpp"

namespace relbel {

// Laplace (double-exponential) prior with mean mu0 and per-coordinate
// variance lambda0^2 sigma^2 (distribution scale lambda0 sigma / sqrt(2)).
struct LaplacePrior {
  double mu0;
  double lambda0;
};

// Chooses mu0 as the interval midpoint and lambda0 so the prior assigns
// probability gamma_vc to (m_l, m_u):
//   lambda0 = (m_u - m_l) / (2 sigma G^{-1}((1 + gamma_vc) / 2))
// with G the unit-variance Laplace cdf.
LaplacePrior elicit_laplace_prior(double m_l, double m_u, double sigma,
                                  double gamma_vc);

// Dead-zone half-width of the posterior mode: sqrt(2) sigma / (lambda0 n).
double map_half_width(int n, double sigma, double lambda0);

// Posterior mode under the Laplace prior: soft-thresholding of xbar toward
// mu0 with half-width sqrt(2) sigma / (lambda0 n).
double laplace_map(double xbar, int n, double sigma,
                   const LaplacePrior& prior);

// Probability that the posterior mode equals mu0 exactly when the true mean
// is mu0: 2 Phi(sqrt(2) / (lambda0 sqrt(n))) - 1.  The sampling sd cancels.
double map_exact_zero_prob(int n, double lambda0);

// Simulates one dataset of k group means (n observations each, sd sigma,
// centered at true_means) and cross-tabulates the sparsity verdict of the
// posterior mode (accepted iff it lands exactly on mu0) against the truth
// (true_means[i] == mu0).
ConfusionMatrix lasso_confusion_sim(std::size_t k, int n, double sigma,
                                    const LaplacePrior& prior,
                                    const std::vector<double>& true_means,
                                    std::uint64_t seed);

// Prior cell masses of one coordinate over the grid (closed-form Laplace
// cdf differences; tails get the leftover mass).
std::vector<double> laplace_prior_cell_masses(const Grid& grid,
                                              const LaplacePrior& prior,
                                              double sigma);

// Posterior cell masses given a group mean of n observations.  Interior
// cells are integrated by adaptive Simpson quadrature (1e-10 tolerance) of
// the posterior kernel; the unbounded tails use the kernel's exact
// two-piece Gaussian decomposition.  The result is normalized to sum to 1.
std::vector<double> laplace_posterior_cell_masses(const Grid& grid,
                                                  double xbar, int n,
                                                  double sigma,
                                                  const LaplacePrior& prior);

// Combines the prior and posterior cell masses into a validated belief.
DiscreteBelief laplace_belief(const Grid& grid, double xbar, int n,
                              double sigma, const LaplacePrior& prior);

namespace detail {

// Adaptive Simpson integration of f over [a, b] to absolute tolerance tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol);

}  // namespace detail

}  // namespace relbel
