#include "relbel/normal_means.hpp"

#include <algorithm>
#include <cmath>

#include "relbel/errors.hpp"
#include "relbel/specfun.hpp"

namespace relbel {


namespace {

void require_model(int n, double sigma) {
  detail::require(n >= 1, "sample size must be at least 1");
  detail::require(std::isfinite(sigma) && sigma > 0.0,
                  "sampling standard deviation must be positive");
}

void require_prior(const NormalPrior& prior) {
  detail::require(std::isfinite(prior.mu0), "prior location must be finite");
  detail::require(std::isfinite(prior.lambda0) && prior.lambda0 > 0.0,
                  "prior scale multiplier must be positive");
}

// Masses of N(mean, sd^2) over the grid cells, tails by complement.
std::vector<double> normal_cell_masses(const Grid& grid, double mean, double sd) {
  const std::size_t m = grid.size();
  std::vector<double> cdf_at_upper(m - 1);
  for (std::size_t j = 0; j + 1 < m; ++j) {
    cdf_at_upper[j] = std_normal_cdf((grid.upper_edge(j) - mean) / sd);
  }
  std::vector<double> mass(m);
  mass[0] = cdf_at_upper[0];
  for (std::size_t j = 1; j + 1 < m; ++j) mass[j] = cdf_at_upper[j] - cdf_at_upper[j - 1];
  mass[m - 1] = 1.0 - cdf_at_upper[m - 2];
  for (auto& v : mass) v = std::max(v, 0.0);
  return mass;
}

// Center-cell belief ratio as a function of the posterior location, with all
// the data-independent pieces precomputed. Shared by the design simulations.
struct NullCellRatio {
  double post_sd;
  double half = 0.0;
  double prior_mass;

  NullCellRatio(int n, double lambda0, double delta, double sigma) {
    const double prior_sd = lambda0 * sigma;
    post_sd = prior_sd / std::sqrt(n * lambda0 * lambda0 + 1.0);
    half = 0.5 * delta;
    prior_mass = 2.0 * std_normal_cdf(half / prior_sd) - 1.0;
  }

  // `center_dev` is the posterior mean minus mu0.
  double operator()(double center_dev) const {
    const double post_mass = std_normal_cdf((half - center_dev) / post_sd) -
                             std_normal_cdf((-half - center_dev) / post_sd);
    return post_mass / prior_mass;
  }
};

}  // namespace

NormalPrior elicit_normal_prior(double m_lo, double m_hi, double sigma, double coverage) {
  detail::require(std::isfinite(m_lo) && std::isfinite(m_hi) && m_lo < m_hi,
                  "elicitation interval must be finite with m_lo < m_hi");
  detail::require(std::isfinite(sigma) && sigma > 0.0,
                  "sampling standard deviation must be positive");
  detail::require(coverage > 0.0 && coverage < 1.0,
                  "elicitation coverage must lie strictly inside (0,1)");
  NormalPrior prior;
  prior.mu0 = 0.5 * (m_lo + m_hi);
  prior.lambda0 =
      (m_hi - m_lo) / (2.0 * sigma * std_normal_quantile(0.5 * (1.0 + coverage)));
  return prior;
}

PosteriorParams posterior_params(double xbar, int n, double sigma, const NormalPrior& prior) {
  require_model(n, sigma);
  require_prior(prior);
  detail::require(std::isfinite(xbar), "sample mean must be finite");
  const double lam2 = prior.lambda0 * prior.lambda0;
  PosteriorParams p;
  p.mean = (n * xbar + prior.mu0 / lam2) / (n + 1.0 / lam2);
  p.sd = prior.lambda0 * sigma / std::sqrt(n * lam2 + 1.0);
  return p;
}

DiscreteBelief rb_cells(double xbar, int n, double sigma, const NormalPrior& prior,
                        const Grid& grid) {
  const PosteriorParams post = posterior_params(xbar, n, sigma, prior);
  DiscreteBelief belief;
  belief.grid = grid;
  belief.prior = normal_cell_masses(grid, prior.mu0, prior.lambda0 * sigma);
  belief.posterior = normal_cell_masses(grid, post.mean, post.sd);
  return belief;
}

double rb_at_null(double xbar, int n, double sigma, const NormalPrior& prior, double delta) {
  detail::require(std::isfinite(delta) && delta > 0.0, "cell width must be positive");
  const PosteriorParams post = posterior_params(xbar, n, sigma, prior);
  const NullCellRatio ratio(n, prior.lambda0, delta, sigma);
  return ratio(post.mean - prior.mu0);
}

Grid default_grid(const NormalPrior& prior, double delta, double m_lo, double m_hi) {
  return Grid::spanning(prior.mu0, delta, m_lo, m_hi);
}

double a_n(double q, int n, double lambda0) {
  detail::require(std::isfinite(q) && q > 0.0, "cutoff q must be positive");
  detail::require(n >= 1, "sample size must be at least 1");
  detail::require(std::isfinite(lambda0) && lambda0 > 0.0,
                  "prior scale multiplier must be positive");
  const double nl2 = n * lambda0 * lambda0;
  if (q * q > nl2 + 1.0) return 0.0;
  return std::sqrt((1.0 + 1.0 / nl2) * std::log((nl2 + 1.0) / (q * q)));
}

double bias_against(int n, double lambda0, double q_R) {
  return 2.0 * (1.0 - std_normal_cdf(a_n(q_R, n, lambda0)));
}

double bias_favor(int n, double lambda0, double delta, double sigma, double q_A) {
  require_model(n, sigma);
  detail::require(std::isfinite(delta) && delta > 0.0, "cell width must be positive");
  detail::require(std::isfinite(q_A) && q_A >= 1.0, "acceptance cutoff must be >= 1");
  const double nl2 = n * lambda0 * lambda0;
  if (q_A * q_A > nl2 + 1.0) return 0.0;  // evidence that large is unattainable
  const double shift = std::sqrt(static_cast<double>(n)) * delta / (2.0 * sigma);
  const double a = a_n(q_A, n, lambda0);
  return std_normal_cdf(shift + a) - std_normal_cdf(shift - a);
}

Estimate disc_bias_against_mc(int n, double lambda0, double delta, double sigma,
                                  double q_R, std::uint64_t draws, std::uint64_t seed,
                                  int workers) {
  require_model(n, sigma);
  detail::require(q_R > 0.0 && q_R <= 1.0, "rejection cutoff must lie in (0,1]");
  const NullCellRatio ratio(n, lambda0, delta, sigma);
  const double shrink = n / (n + 1.0 / (lambda0 * lambda0));
  const double xbar_sd = sigma / std::sqrt(static_cast<double>(n));
  return run_mean(seed, draws, workers,
                      [&](std::uint64_t, Stream& stream) {
                        const double dev = shrink * xbar_sd * stream.normal();
                        return ratio(dev) < q_R ? 1.0 : 0.0;
                      });
}

Estimate disc_bias_favor_mc(int n, double lambda0, double delta, double sigma,
                                double q_A, std::uint64_t draws, std::uint64_t seed,
                                int workers) {
  require_model(n, sigma);
  detail::require(q_A >= 1.0, "acceptance cutoff must be >= 1");
  const NullCellRatio ratio(n, lambda0, delta, sigma);
  const double shrink = n / (n + 1.0 / (lambda0 * lambda0));
  const double xbar_sd = sigma / std::sqrt(static_cast<double>(n));
  // True value half a cell to the side of the null.
  const double true_dev = 0.5 * delta;
  return run_mean(seed, draws, workers,
                      [&](std::uint64_t, Stream& stream) {
                        const double xbar_dev = true_dev + xbar_sd * stream.normal();
                        return ratio(shrink * xbar_dev) > q_A ? 1.0 : 0.0;
                      });
}

double null_cell_prior_prob(const NormalPrior& prior, double sigma, double delta) {
  require_prior(prior);
  detail::require(std::isfinite(delta) && delta > 0.0, "cell width must be positive");
  return 2.0 * std_normal_cdf(0.5 * delta / (prior.lambda0 * sigma)) - 1.0;
}

double max_rb_at_null(const NormalPrior& prior, double sigma, double delta) {
  return 1.0 / null_cell_prior_prob(prior, sigma, delta);
}

ProportionBelief proportion_belief(const std::vector<double>& xbar, int n, double sigma,
                                   const NormalPrior& prior, double delta,
                                   std::uint64_t draws, std::uint64_t seed, int workers) {
  require_model(n, sigma);
  require_prior(prior);
  const int k = static_cast<int>(xbar.size());
  detail::require(k >= 1, "need at least one coordinate");

  ProportionBelief belief;
  belief.k = k;

  // Exact binomial prior over the count of coordinates in the null cell.
  const double p0 = null_cell_prior_prob(prior, sigma, delta);
  belief.prior.assign(k + 1, 0.0);
  for (int j = 0; j <= k; ++j) {
    belief.prior[j] = std::exp(std::lgamma(k + 1.0) - std::lgamma(j + 1.0) -
                               std::lgamma(k - j + 1.0) + j * std::log(p0) +
                               (k - j) * std::log1p(-p0));
  }

  // Posterior null-cell probability per coordinate.
  std::vector<double> post_prob(k);
  const NullCellRatio ratio(n, prior.lambda0, delta, sigma);
  for (int i = 0; i < k; ++i) {
    const PosteriorParams post = posterior_params(xbar[i], n, sigma, prior);
    const double dev = post.mean - prior.mu0;
    post_prob[i] = std_normal_cdf((0.5 * delta - dev) / post.sd) -
                   std_normal_cdf((-0.5 * delta - dev) / post.sd);
  }

  // Posterior over the count by simulation; the count histogram is averaged
  // through the block-deterministic driver.
  const auto est = run_mean_vector(
      seed, draws, workers, static_cast<std::size_t>(k) + 1,
      [&](std::uint64_t, Stream& stream, std::vector<double>& out) {
        std::fill(out.begin(), out.end(), 0.0);
        int count = 0;
        for (int i = 0; i < k; ++i) {
          if (stream.uniform() <= post_prob[i]) ++count;
        }
        out[count] = 1.0;
      });
  belief.posterior = est.mean;

  belief.rb.assign(k + 1, 0.0);
  belief.estimate_count = 0;
  double best = -1.0;
  for (int j = 0; j <= k; ++j) {
    belief.rb[j] = belief.posterior[j] / belief.prior[j];
    if (belief.rb[j] > best) {
      best = belief.rb[j];
      belief.estimate_count = j;
    }
  }
  return belief;
}

std::vector<double> simulate_xbar(const std::vector<double>& true_means, int n,
                                  double sigma, Stream& stream) {
  require_model(n, sigma);
  std::vector<double> xbar(true_means.size());
  const double sd = sigma / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < true_means.size(); ++i) {
    xbar[i] = true_means[i] + sd * stream.normal();
  }
  return xbar;
}

}  // namespace relbel
