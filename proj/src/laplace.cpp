#include "relbel/laplace.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relbel/errors.hpp"
#include "relbel/rng.hpp"
#include "relbel/specfun.hpp"

namespace relbel {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kSqrt2Pi = 2.5066282746310002;

void require_sampling_params(int n, double sigma) {
  detail::require(n >= 1, "group size must be at least 1");
  detail::require(std::isfinite(sigma) && sigma > 0.0,
                  "sampling sd must be positive");
}

void require_prior(const LaplacePrior& prior) {
  detail::require(std::isfinite(prior.mu0), "prior mean must be finite");
  detail::require(std::isfinite(prior.lambda0) && prior.lambda0 > 0.0,
                  "prior scale multiplier must be positive");
}

}  // namespace

LaplacePrior elicit_laplace_prior(double m_l, double m_u, double sigma,
                                  double gamma_vc) {
  detail::require(std::isfinite(m_l) && std::isfinite(m_u) && m_l < m_u,
                  "interval bounds must satisfy m_l < m_u");
  detail::require(std::isfinite(sigma) && sigma > 0.0,
                  "sampling sd must be positive");
  detail::require(std::isfinite(gamma_vc) && gamma_vc > 0.0 && gamma_vc < 1.0,
                  "coverage must lie in (0, 1)");
  const double quantile = laplace_std_quantile(0.5 * (1.0 + gamma_vc));
  return LaplacePrior{0.5 * (m_l + m_u), (m_u - m_l) / (2.0 * sigma * quantile)};
}

double map_half_width(int n, double sigma, double lambda0) {
  require_sampling_params(n, sigma);
  detail::require(std::isfinite(lambda0) && lambda0 > 0.0,
                  "prior scale multiplier must be positive");
  return kSqrt2 * sigma / (lambda0 * static_cast<double>(n));
}

double laplace_map(double xbar, int n, double sigma,
                   const LaplacePrior& prior) {
  require_prior(prior);
  detail::require(std::isfinite(xbar), "group mean must be finite");
  const double half = map_half_width(n, sigma, prior.lambda0);
  const double offset = xbar - prior.mu0;
  const double shifted = std::max(0.0, std::abs(offset) - half);
  return prior.mu0 + std::copysign(shifted, offset);
}

double map_exact_zero_prob(int n, double lambda0) {
  detail::require(n >= 1, "group size must be at least 1");
  detail::require(std::isfinite(lambda0) && lambda0 > 0.0,
                  "prior scale multiplier must be positive");
  const double arg = kSqrt2 / (lambda0 * std::sqrt(static_cast<double>(n)));
  return 2.0 * std_normal_cdf(arg) - 1.0;
}

ConfusionMatrix lasso_confusion_sim(std::size_t k, int n, double sigma,
                                    const LaplacePrior& prior,
                                    const std::vector<double>& true_means,
                                    std::uint64_t seed) {
  require_sampling_params(n, sigma);
  require_prior(prior);
  detail::require(k >= 1 && true_means.size() == k,
                  "true means must list one value per hypothesis");
  const double xbar_sd = sigma / std::sqrt(static_cast<double>(n));
  ConfusionMatrix table;
  Stream stream(seed, 0);
  for (std::size_t i = 0; i < k; ++i) {
    const double xbar = true_means[i] + xbar_sd * stream.normal();
    const double mode = laplace_map(xbar, n, sigma, prior);
    const bool accepted = (mode == prior.mu0);
    const bool truth = (true_means[i] == prior.mu0);
    ++table.at(accepted ? Verdict::Accepted : Verdict::Rejected, truth);
  }
  return table;
}

std::vector<double> laplace_prior_cell_masses(const Grid& grid,
                                              const LaplacePrior& prior,
                                              double sigma) {
  require_prior(prior);
  detail::require(std::isfinite(sigma) && sigma > 0.0,
                  "sampling sd must be positive");
  const double scale = prior.lambda0 * sigma;
  const std::size_t m = grid.size();
  std::vector<double> masses(m, 0.0);
  // cdf at the m-1 interior edges; tails take the complements.
  std::vector<double> edge_cdf(m - 1);
  for (std::size_t idx = 0; idx + 1 < m; ++idx) {
    edge_cdf[idx] = laplace_std_cdf((grid.upper_edge(idx) - prior.mu0) / scale);
  }
  masses[0] = edge_cdf[0];
  for (std::size_t idx = 1; idx + 1 < m; ++idx) {
    masses[idx] = std::max(0.0, edge_cdf[idx] - edge_cdf[idx - 1]);
  }
  masses[m - 1] = std::max(0.0, 1.0 - edge_cdf[m - 2]);
  return masses;
}

namespace detail {

namespace {

double simpson_rule(double a, double fa, double fm, double fb, double b) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adaptive_simpson_step(const std::function<double(double)>& f, double a,
                             double fa, double b, double fb, double m,
                             double fm, double whole, double tol, int depth) {
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = simpson_rule(a, fa, flm, fm, m);
  const double right = simpson_rule(m, fm, frm, fb, b);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive_simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol,
                               depth - 1) +
         adaptive_simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol,
                               depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  require(std::isfinite(a) && std::isfinite(b) && a <= b,
          "integration bounds must be finite and ordered");
  if (a == b) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(m);
  const double whole = simpson_rule(a, fa, fm, fb, b);
  return adaptive_simpson_step(f, a, fa, b, fb, m, fm, whole, tol, 40);
}

}  // namespace detail

std::vector<double> laplace_posterior_cell_masses(const Grid& grid,
                                                  double xbar, int n,
                                                  double sigma,
                                                  const LaplacePrior& prior) {
  require_sampling_params(n, sigma);
  require_prior(prior);
  detail::require(std::isfinite(xbar), "group mean must be finite");

  const double nn = static_cast<double>(n);
  const double b = prior.lambda0 * sigma / kSqrt2;  // distribution scale
  const double xbar_var = sigma * sigma / nn;
  const double mode = laplace_map(xbar, n, sigma, prior);

  // Log posterior kernel (unnormalized), peaked at the posterior mode.
  const auto log_kernel = [&](double mu) {
    const double z = mu - xbar;
    return -0.5 * z * z / xbar_var - std::abs(mu - prior.mu0) / b;
  };
  const double log_peak = log_kernel(mode);
  const auto scaled_kernel = [&](double mu) {
    return std::exp(log_kernel(mu) - log_peak);
  };

  // Exact integral of the scaled kernel over a half-line piece.  On each
  // side of mu0 the kernel is a Gaussian in mu:
  //   mu >= mu0: mean m_plus  = xbar - sigma^2/(n b)
  //   mu <  mu0: mean m_minus = xbar + sigma^2/(n b)
  const double shift = xbar_var / b;
  const double m_plus = xbar - shift;
  const double m_minus = xbar + shift;
  const double log_c_plus =
      0.5 * (m_plus * m_plus - xbar * xbar) / xbar_var + prior.mu0 / b;
  const double log_c_minus =
      0.5 * (m_minus * m_minus - xbar * xbar) / xbar_var - prior.mu0 / b;
  const double xbar_sd = sigma / std::sqrt(nn);
  const auto piece_integral = [&](double lo, double hi, bool upper_piece) {
    const double mean = upper_piece ? m_plus : m_minus;
    const double log_c = upper_piece ? log_c_plus : log_c_minus;
    const double hi_cdf =
        std::isinf(hi) ? 1.0 : std_normal_cdf((hi - mean) / xbar_sd);
    const double lo_cdf =
        std::isinf(lo) ? 0.0 : std_normal_cdf((lo - mean) / xbar_sd);
    const double width = std::max(0.0, hi_cdf - lo_cdf);
    return std::exp(log_c - log_peak) * xbar_sd * kSqrt2Pi * width;
  };
  const auto tail_integral = [&](double lo, double hi) {
    // Split at mu0 when the interval straddles it.
    if (hi <= prior.mu0) return piece_integral(lo, hi, false);
    if (lo >= prior.mu0) return piece_integral(lo, hi, true);
    return piece_integral(lo, prior.mu0, false) +
           piece_integral(prior.mu0, hi, true);
  };

  const std::size_t m = grid.size();
  std::vector<double> raw(m, 0.0);
  raw[0] = tail_integral(-std::numeric_limits<double>::infinity(),
                         grid.upper_edge(0));
  raw[m - 1] = tail_integral(grid.lower_edge(m - 1),
                             std::numeric_limits<double>::infinity());
  constexpr double kTol = 1e-10;
  for (std::size_t idx = 1; idx + 1 < m; ++idx) {
    double lo = grid.lower_edge(idx);
    double hi = grid.upper_edge(idx);
    // Integrate each smooth piece separately when the cell straddles the
    // prior center (the kernel has a kink at mu0).
    if (lo < prior.mu0 && prior.mu0 < hi) {
      raw[idx] = detail::adaptive_simpson(scaled_kernel, lo, prior.mu0, kTol) +
                 detail::adaptive_simpson(scaled_kernel, prior.mu0, hi, kTol);
    } else {
      raw[idx] = detail::adaptive_simpson(scaled_kernel, lo, hi, kTol);
    }
    raw[idx] = std::max(0.0, raw[idx]);
  }

  double total = 0.0;
  for (double value : raw) total += value;
  detail::require(std::isfinite(total) && total > 0.0,
                  "posterior kernel integrated to a non-positive total");
  for (double& value : raw) value /= total;
  return raw;
}

DiscreteBelief laplace_belief(const Grid& grid, double xbar, int n,
                              double sigma, const LaplacePrior& prior) {
  DiscreteBelief belief;
  belief.prior = laplace_prior_cell_masses(grid, prior, sigma);
  belief.posterior = laplace_posterior_cell_masses(grid, xbar, n, sigma, prior);
  belief.validate();
  return belief;
}

}  // namespace relbel
