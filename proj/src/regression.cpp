#include "relbel/regression.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "relbel/errors.hpp"
#include "relbel/rng.hpp"
#include "relbel/specfun.hpp"

namespace relbel {

namespace {

constexpr double kRankTol = 1e-10;

void require_prior(const RegressionPrior& prior) {
  detail::require(std::isfinite(prior.lambda0) && prior.lambda0 > 0.0,
                  "prior coefficient scale must be positive");
  detail::require(std::isfinite(prior.alpha1) && prior.alpha1 > 0.0,
                  "gamma shape hyperparameter must be positive");
  detail::require(std::isfinite(prior.alpha2) && prior.alpha2 > 0.0,
                  "gamma rate hyperparameter must be positive");
}

void require_full_rank(const Eigen::MatrixXd& X) {
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
  qr.setThreshold(kRankTol);
  if (qr.rank() < X.cols()) {
    throw rank_deficient(
        "design matrix is not of full column rank; use the reduced-basis "
        "path");
  }
}

void require_design(const DesignMatrix& design) {
  detail::require(design.X.rows() >= 1 && design.X.cols() >= 2,
                  "design matrix needs rows and at least one predictor");
  detail::require((design.X.col(0).array() - 1.0).abs().maxCoeff() <= 1e-12,
                  "first design column must be the all-ones intercept");
}

}  // namespace

DesignMatrix standardize(const Eigen::MatrixXd& X_raw) {
  detail::require(X_raw.rows() >= 2 && X_raw.cols() >= 2,
                  "need at least two rows and an intercept plus a predictor");
  detail::require((X_raw.col(0).array() - 1.0).abs().maxCoeff() <= 1e-12,
                  "first design column must be the all-ones intercept");
  DesignMatrix design;
  design.X = X_raw;
  for (Eigen::Index j = 1; j < X_raw.cols(); ++j) {
    Eigen::VectorXd col = X_raw.col(j);
    col.array() -= col.mean();
    const double norm = col.norm();
    detail::require(norm > 1e-12,
                    "predictor column is constant; drop it before analysis");
    design.X.col(j) = col / norm;
  }
  design.standardized = true;
  return design;
}

double elicit_tau0(const Eigen::MatrixXd& X) {
  detail::require(X.rows() >= 1, "design matrix must have rows");
  return X.rowwise().norm().maxCoeff();
}

double elicit_lambda0(double m0, double s2, double tau0) {
  detail::require(std::isfinite(m0) && m0 > 0.0,
                  "response-deviation bound must be positive");
  detail::require(std::isfinite(s2) && s2 > 0.0,
                  "upper sd bound must be positive");
  detail::require(std::isfinite(tau0) && tau0 > 0.0,
                  "row-norm bound must be positive");
  return m0 / (s2 * tau0);
}

GammaHyper solve_gamma_hyperparams(double s1, double s2, double gamma_vc) {
  detail::require(std::isfinite(s1) && std::isfinite(s2) && 0.0 < s1 &&
                      s1 < s2,
                  "sd bounds must satisfy 0 < s1 < s2");
  detail::require(std::isfinite(gamma_vc) && gamma_vc > 0.0 && gamma_vc < 1.0,
                  "coverage must lie in (0, 1)");
  const double p_hi = 0.5 * (1.0 + gamma_vc);
  const double p_lo = 0.5 * (1.0 - gamma_vc);
  const double z_hi = std_normal_quantile(p_hi);
  const double z2 = z_hi * z_hi;
  constexpr double kStep = 0.01;
  constexpr double kBand = 1e-3;
  constexpr double kAlpha1Cap = 500.0;

  double prev_alpha1 = 0.0;
  double prev_alpha2 = 0.0;
  double prev_residual = 0.0;
  bool have_prev = false;
  const int cap_steps = static_cast<int>(kAlpha1Cap / kStep);
  for (int step = 1; step <= cap_steps; ++step) {
    const double alpha1 = kStep * static_cast<double>(step);
    // Enforce the upper quantile equation exactly, then measure the lower one.
    const double alpha2 =
        gamma_quantile(p_hi, GammaParams{alpha1, 1.0}) * (s1 * s1) / z2;
    const double residual =
        gamma_cdf(alpha2 * z2 / (s2 * s2), GammaParams{alpha1, 1.0}) - p_lo;
    if (std::abs(residual) <= kBand) return {alpha1, alpha2};
    if (have_prev && std::signbit(residual) != std::signbit(prev_residual)) {
      // The lattice stepped over the root without entering the band; return
      // the closer endpoint.
      if (std::abs(prev_residual) <= std::abs(residual)) {
        return {prev_alpha1, prev_alpha2};
      }
      return {alpha1, alpha2};
    }
    prev_alpha1 = alpha1;
    prev_alpha2 = alpha2;
    prev_residual = residual;
    have_prev = true;
  }
  throw numeric_error(
      "hyperparameter scan reached the shape cap (500) without matching the "
      "lower quantile; last residual " +
      std::to_string(prev_residual) +
      " in probability units (interval may be too narrow)");
}

namespace detail {

RegressionPosterior posterior_with_prior_precision(
    const Eigen::MatrixXd& X, const Eigen::VectorXd& y,
    const Eigen::MatrixXd& prior_precision, double alpha1, double alpha2) {
  require(X.rows() == y.size(), "response length must match design rows");
  require(prior_precision.rows() == X.cols() &&
              prior_precision.cols() == X.cols(),
          "prior precision must be square of the coefficient dimension");
  const Eigen::MatrixXd xtx = X.transpose() * X;
  const Eigen::LLT<Eigen::MatrixXd> llt(xtx + prior_precision);
  if (llt.info() != Eigen::Success) {
    throw numeric_error("posterior scale matrix is not positive definite");
  }
  RegressionPosterior post;
  post.scale = llt.solve(Eigen::MatrixXd::Identity(X.cols(), X.cols()));
  const Eigen::VectorXd xty = X.transpose() * y;
  post.beta_mean = llt.solve(xty);
  const double rate_full =
      y.squaredNorm() - xty.dot(post.beta_mean) + 2.0 * alpha2;
  if (!(std::isfinite(rate_full) && rate_full > 0.0)) {
    throw numeric_error("posterior rate is not positive");
  }
  post.shape = 0.5 * (static_cast<double>(X.rows()) + 2.0 * alpha1);
  post.rate = 0.5 * rate_full;
  return post;
}

}  // namespace detail

RegressionPosterior posterior(const DesignMatrix& design,
                              const Eigen::VectorXd& y,
                              const RegressionPrior& prior) {
  require_design(design);
  require_prior(prior);
  detail::require(design.X.rows() > design.X.cols(),
                  "need more observations than coefficients");
  require_full_rank(design.X);
  const Eigen::Index p = design.X.cols();
  const Eigen::MatrixXd precision =
      Eigen::MatrixXd::Identity(p, p) / (prior.lambda0 * prior.lambda0);
  return detail::posterior_with_prior_precision(design.X, y, precision,
                                                prior.alpha1, prior.alpha2);
}

double scaled_t_pdf(const ScaledT& t, double x) {
  detail::require(t.scale > 0.0 && t.dof > 0.0,
                  "scaled-t needs positive scale and dof");
  return student_t_pdf((x - t.loc) / t.scale, t.dof) / t.scale;
}

double scaled_t_cdf(const ScaledT& t, double x) {
  detail::require(t.scale > 0.0 && t.dof > 0.0,
                  "scaled-t needs positive scale and dof");
  return student_t_cdf((x - t.loc) / t.scale, t.dof);
}

ScaledT prior_coordinate_marginal(const RegressionPrior& prior,
                                  double sigma0_ii) {
  require_prior(prior);
  detail::require(sigma0_ii > 0.0, "coordinate variance factor must be positive");
  return ScaledT{2.0 * prior.alpha1, 0.0,
                 prior.lambda0 * std::sqrt(sigma0_ii * prior.alpha2 /
                                           prior.alpha1)};
}

ScaledT evidence_reference_marginal(const RegressionPrior& prior,
                                    double sigma0_ii) {
  require_prior(prior);
  detail::require(sigma0_ii > 0.0, "coordinate variance factor must be positive");
  return ScaledT{2.0 * prior.alpha1, 0.0,
                 prior.lambda0 * prior.alpha2 *
                     std::sqrt(sigma0_ii /
                               (prior.alpha1 * (prior.alpha1 + 1.0)))};
}

ScaledT bias_reference_marginal(const RegressionPrior& prior,
                                double sigma0_ii) {
  require_prior(prior);
  detail::require(sigma0_ii > 0.0, "coordinate variance factor must be positive");
  return ScaledT{2.0 * prior.alpha1, 0.0,
                 prior.lambda0 * prior.alpha2 *
                     std::sqrt(sigma0_ii / (2.0 * prior.alpha1))};
}

ScaledT posterior_coordinate_marginal(const RegressionPosterior& post,
                                      std::size_t i) {
  detail::require(i < static_cast<std::size_t>(post.beta_mean.size()),
                  "coordinate index out of range");
  const double nu2 = post.dof();
  const double sii = post.scale(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(i));
  return ScaledT{nu2, post.beta_mean(static_cast<Eigen::Index>(i)),
                 std::sqrt(post.rate_full() * sii / nu2)};
}

double rb_beta_zero(const RegressionPosterior& post,
                    const RegressionPrior& prior, std::size_t i) {
  require_prior(prior);
  detail::require(i < static_cast<std::size_t>(post.beta_mean.size()),
                  "coordinate index out of range");
  const double nu2 = post.dof();
  const double a2xy = post.rate_full();
  const double sii = post.scale(static_cast<Eigen::Index>(i),
                                static_cast<Eigen::Index>(i));
  const double m = post.beta_mean(static_cast<Eigen::Index>(i));
  const double a1 = prior.alpha1;
  const double log_gamma_ratio = std::lgamma(0.5 * (nu2 + 1.0)) +
                                 std::lgamma(a1) - std::lgamma(0.5 * nu2) -
                                 std::lgamma(a1 + 0.5);
  const double log_scale_ratio = std::log(prior.lambda0 * prior.alpha2) +
                                 0.5 * std::log(2.0 / (a1 + 1.0)) -
                                 0.5 * std::log(a2xy * sii);
  const double log_kernel =
      -0.5 * (nu2 + 1.0) * std::log1p(m * m / (a2xy * sii));
  return std::exp(log_gamma_ratio + log_scale_ratio + log_kernel);
}

namespace {

// Cell masses of a scaled-t distribution over a grid: cdf differences on the
// interior, leftover mass in the tails.
std::vector<double> scaled_t_cell_masses(const ScaledT& t, const Grid& grid) {
  const std::size_t m = grid.size();
  std::vector<double> edge_cdf(m - 1);
  for (std::size_t idx = 0; idx + 1 < m; ++idx) {
    edge_cdf[idx] = scaled_t_cdf(t, grid.upper_edge(idx));
  }
  std::vector<double> masses(m, 0.0);
  masses[0] = edge_cdf[0];
  for (std::size_t idx = 1; idx + 1 < m; ++idx) {
    masses[idx] = std::max(0.0, edge_cdf[idx] - edge_cdf[idx - 1]);
  }
  masses[m - 1] = std::max(0.0, 1.0 - edge_cdf[m - 2]);
  return masses;
}

}  // namespace

DiscreteBelief rb_beta_discretized(const RegressionPosterior& post,
                                   const RegressionPrior& prior,
                                   std::size_t i, const Grid& grid) {
  detail::require(std::abs(grid.center) <= 1e-12,
                  "coefficient grid must be centered at zero");
  DiscreteBelief belief;
  belief.prior = scaled_t_cell_masses(evidence_reference_marginal(prior), grid);
  belief.posterior =
      scaled_t_cell_masses(posterior_coordinate_marginal(post, i), grid);
  belief.validate();
  return belief;
}

Grid regression_default_grid(const RegressionPosterior& post, double delta) {
  detail::require(std::isfinite(delta) && delta > 0.0,
                  "cell width must be positive");
  double reach = 0.0;
  for (Eigen::Index i = 0; i < post.beta_mean.size(); ++i) {
    const ScaledT marginal =
        posterior_coordinate_marginal(post, static_cast<std::size_t>(i));
    reach = std::max(reach, std::abs(marginal.loc) + 8.0 * marginal.scale);
  }
  const int half_cells =
      std::max(1, static_cast<int>(std::ceil(reach / delta)));
  return Grid(0.0, delta, half_cells);
}

ConflictReport conflict_check(const DesignMatrix& design,
                              const Eigen::VectorXd& y,
                              const RegressionPrior& prior,
                              std::uint64_t draws, std::uint64_t seed,
                              double threshold) {
  require_design(design);
  require_prior(prior);
  detail::require(design.X.rows() == y.size(),
                  "response length must match design rows");
  detail::require(draws >= 100, "compatibility checks need at least 100 draws");
  detail::require(threshold > 0.0 && threshold < 1.0,
                  "conflict threshold must lie in (0, 1)");
  require_full_rank(design.X);
  const Eigen::Index n = design.X.rows();
  const Eigen::Index p = design.X.cols();
  detail::require(n > p, "need more observations than coefficients");
  const double resid_dof = static_cast<double>(n - p);

  const Eigen::MatrixXd xtx = design.X.transpose() * design.X;
  const Eigen::LLT<Eigen::MatrixXd> xtx_llt(xtx);
  if (xtx_llt.info() != Eigen::Success) {
    throw numeric_error("normal equations lost positive definiteness");
  }
  const Eigen::VectorXd b = xtx_llt.solve(design.X.transpose() * y);
  const double rss = (y - design.X * b).squaredNorm();

  // Stage 1: error variance.  The predictive density of the residual sum of
  // squares W has W/(2 alpha2) beta-prime distributed with parameters
  // ((n-p)/2, alpha1); the tail probability is the predictive probability of
  // a density value at or below the observed one.
  const double bp_a = 0.5 * resid_dof;
  const double bp_b = prior.alpha1;
  const double log_beta_norm = std::lgamma(bp_a) + std::lgamma(bp_b) -
                               std::lgamma(bp_a + bp_b);
  const auto log_predictive = [&](double w) {
    const double t = w / (2.0 * prior.alpha2);
    return (bp_a - 1.0) * std::log(t) - (bp_a + bp_b) * std::log1p(t) -
           log_beta_norm - std::log(2.0 * prior.alpha2);
  };
  const double log_obs = log_predictive(rss);
  std::uint64_t low_density = 0;
  Stream sigma_stream(seed, 0);
  for (std::uint64_t r = 0; r < draws; ++r) {
    const double w = sigma_stream.chi_square(resid_dof) /
                     sigma_stream.gamma(prior.alpha1, prior.alpha2);
    if (log_predictive(w) <= log_obs) ++low_density;
  }
  const double tail_sigma =
      static_cast<double>(low_density) / static_cast<double>(draws);

  // Stage 2: coefficients, on the scale of the residual-variance estimate.
  const double sigma_hat2 = rss / resid_dof;
  const Eigen::MatrixXd xtx_inv =
      xtx_llt.solve(Eigen::MatrixXd::Identity(p, p));
  const Eigen::MatrixXd v =
      prior.lambda0 * prior.lambda0 * Eigen::MatrixXd::Identity(p, p) +
      xtx_inv;
  const Eigen::LLT<Eigen::MatrixXd> v_llt(v);
  if (v_llt.info() != Eigen::Success) {
    throw numeric_error("coefficient check matrix is not positive definite");
  }
  const double t2_obs = b.dot(v_llt.solve(b)) / sigma_hat2;
  std::uint64_t exceed = 0;
  Stream beta_stream(seed, 1);
  for (std::uint64_t r = 0; r < draws; ++r) {
    double ss = 0.0;
    for (Eigen::Index j = 0; j < p; ++j) {
      const double z = beta_stream.normal();
      ss += z * z;
    }
    if (ss >= t2_obs) ++exceed;
  }
  const double tail_beta =
      static_cast<double>(exceed) / static_cast<double>(draws);

  return ConflictReport{tail_sigma, tail_beta, threshold};
}

RegressionPrior inflate_prior(const RegressionPrior& prior, double factor) {
  require_prior(prior);
  detail::require(std::isfinite(factor) && factor > 1.0,
                  "inflation factor must exceed 1");
  return RegressionPrior{prior.lambda0 * factor, prior.alpha1, prior.alpha2};
}

namespace {

// Precomputed pieces of the design-stage evidence-ratio simulation.  One
// replication draws (sigma^2, beta, least-squares noise, residual sum of
// squares) from the prior, then evaluates the evidence ratio at zero for
// each non-intercept coordinate with that coordinate's coefficient forced
// to a fixed value.
struct BiasKernel {
  Eigen::MatrixXd a_mat;        // scale * X'X (posterior-mean map)
  Eigen::MatrixXd q_mat;        // X'X - X'X scale X'X
  Eigen::MatrixXd noise_map;    // U^{-1} with X'X = U'U (maps z to LS noise)
  Eigen::VectorXd sii;          // diag of scale
  double lambda0 = 0.0;
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double nu2 = 0.0;
  double resid_dof = 0.0;
  Eigen::Index p = 0;
  double log_const = 0.0;

  static std::shared_ptr<const BiasKernel> make(const DesignMatrix& design,
                                                const RegressionPrior& prior) {
    require_design(design);
    require_prior(prior);
    detail::require(design.X.rows() > design.X.cols(),
                    "need more observations than coefficients");
    require_full_rank(design.X);
    auto kernel = std::make_shared<BiasKernel>();
    const Eigen::Index p = design.X.cols();
    kernel->p = p;
    const Eigen::MatrixXd xtx = design.X.transpose() * design.X;
    const Eigen::LLT<Eigen::MatrixXd> xtx_llt(xtx);
    if (xtx_llt.info() != Eigen::Success) {
      throw numeric_error("normal equations lost positive definiteness");
    }
    // (U')^{-1} column draw: solve U x = z with U upper-triangular gives
    // cov(x) = (X'X)^{-1}.
    kernel->noise_map =
        xtx_llt.matrixU().solve(Eigen::MatrixXd::Identity(p, p));
    const Eigen::MatrixXd precision =
        Eigen::MatrixXd::Identity(p, p) / (prior.lambda0 * prior.lambda0);
    const Eigen::LLT<Eigen::MatrixXd> post_llt(xtx + precision);
    if (post_llt.info() != Eigen::Success) {
      throw numeric_error("posterior scale matrix is not positive definite");
    }
    const Eigen::MatrixXd scale =
        post_llt.solve(Eigen::MatrixXd::Identity(p, p));
    kernel->a_mat = scale * xtx;
    kernel->q_mat = xtx - xtx * scale * xtx;
    kernel->sii = scale.diagonal();
    kernel->lambda0 = prior.lambda0;
    kernel->alpha1 = prior.alpha1;
    kernel->alpha2 = prior.alpha2;
    kernel->nu2 = static_cast<double>(design.X.rows()) + 2.0 * prior.alpha1;
    kernel->resid_dof = static_cast<double>(design.X.rows() - p);
    kernel->log_const = std::lgamma(0.5 * (kernel->nu2 + 1.0)) +
                        std::lgamma(prior.alpha1) -
                        std::lgamma(0.5 * kernel->nu2) -
                        std::lgamma(prior.alpha1 + 0.5) +
                        std::log(prior.lambda0 * prior.alpha2);
    return kernel;
  }

  void fill(Stream& stream, double forced_value,
            std::vector<double>& rb_out) const {
    const double sigma2 = 1.0 / stream.gamma(alpha1, alpha2);
    const double sigma = std::sqrt(sigma2);
    Eigen::VectorXd beta(p);
    for (Eigen::Index j = 0; j < p; ++j) {
      beta(j) = sigma * lambda0 * stream.normal();
    }
    Eigen::VectorXd z(p);
    for (Eigen::Index j = 0; j < p; ++j) z(j) = stream.normal();
    const Eigen::VectorXd b = beta + sigma * (noise_map * z);
    const double rss = sigma2 * stream.chi_square(resid_dof);
    const Eigen::VectorXd m_base = a_mat * b;
    const Eigen::VectorXd qb = q_mat * b;
    const double bqb = b.dot(qb);
    rb_out.resize(static_cast<std::size_t>(p - 1));
    for (Eigen::Index i = 1; i < p; ++i) {
      const double d = forced_value - beta(i);
      const double m = m_base(i) + d * a_mat(i, i);
      const double a2 = rss + bqb + 2.0 * d * qb(i) + d * d * q_mat(i, i) +
                        2.0 * alpha2;
      const double denom = a2 * sii(i);
      rb_out[static_cast<std::size_t>(i - 1)] =
          std::exp(log_const - 0.5 * std::log(denom) -
                   0.5 * (nu2 + 1.0) * std::log1p(m * m / denom));
    }
  }
};

}  // namespace

std::unique_ptr<JointRbSampler> regression_null_rb_sampler(
    const DesignMatrix& design, const RegressionPrior& prior) {
  auto kernel = BiasKernel::make(design, prior);
  return std::make_unique<FunctionRbSampler>(
      static_cast<std::size_t>(kernel->p - 1),
      [kernel](Stream& stream, std::vector<double>& out) {
        kernel->fill(stream, 0.0, out);
      });
}

std::unique_ptr<JointRbSampler> regression_alt_rb_sampler(
    const DesignMatrix& design, const RegressionPrior& prior,
    double grid_delta) {
  detail::require(std::isfinite(grid_delta) && grid_delta > 0.0,
                  "cell width must be positive");
  auto kernel = BiasKernel::make(design, prior);
  const double forced = 0.5 * grid_delta;
  return std::make_unique<FunctionRbSampler>(
      static_cast<std::size_t>(kernel->p - 1),
      [kernel, forced](Stream& stream, std::vector<double>& out) {
        kernel->fill(stream, forced, out);
      });
}

BiasRates regression_bias_mc(const DesignMatrix& design,
                             const RegressionPrior& prior, double grid_delta,
                             double q_reject, double q_accept,
                             std::uint64_t draws, std::uint64_t seed,
                             unsigned workers) {
  const auto null_sampler = regression_null_rb_sampler(design, prior);
  const auto alt_sampler = regression_alt_rb_sampler(design, prior, grid_delta);
  BiasRates rates{
      fp_rate_mc(*null_sampler, q_reject, draws, seed, workers),
      fn_rate_mc(*alt_sampler, q_accept, draws, seed, workers),
  };
  return rates;
}

}  // namespace relbel
