#pragma once

// Scalar distribution functions used throughout the library: the standard
// normal, gamma, Student t and Laplace families. Everything here is
// deterministic, cross-platform reproducible (no calls into libm beyond
// erfc/exp/log/sqrt/lgamma) and accurate to near machine precision.

namespace relbel {

// Shape/rate parameterization: density proportional to x^(shape-1) exp(-rate*x).
struct GammaParams {
  double shape = 1.0;
  double rate = 1.0;
};

// --- standard normal ------------------------------------------------------

// Phi(z), absolute error below 1e-15.
double std_normal_cdf(double z);

// Standard normal density.
double std_normal_pdf(double z);

// Phi^{-1}(p) for p in (0,1); rejects the boundary. Round-trip accuracy:
// |Phi(Phi^{-1}(p)) - p| <= 1e-14 relative, |Phi^{-1}(Phi(z)) - z| <= 1e-9
// over |z| <= 6.
double std_normal_quantile(double p);

// --- regularized incomplete gamma / beta ----------------------------------

// P(a, x) = gamma(a, x) / Gamma(a), the lower regularized incomplete gamma.
double lower_gamma_reg(double a, double x);

// I_x(a, b), the regularized incomplete beta function.
double inc_beta_reg(double a, double b, double x);

// --- gamma distribution ----------------------------------------------------

double gamma_cdf(double x, const GammaParams& g);
double gamma_pdf(double x, const GammaParams& g);

// Inverse of gamma_cdf. Bracketed Newton iteration; the result satisfies
// |gamma_cdf(q) - p| <= 1e-12.
double gamma_quantile(double p, const GammaParams& g);

// --- Student t -------------------------------------------------------------

double student_t_cdf(double x, double dof);
double student_t_pdf(double x, double dof);
double student_t_log_pdf(double x, double dof);
double student_t_quantile(double p, double dof);

// --- Laplace (double exponential), variance-one standardization ------------
// Density (1/sqrt(2)) exp(-sqrt(2)|x|): unit variance, matching the normal
// standardization used for prior elicitation.

double laplace_std_cdf(double x);
double laplace_std_quantile(double p);

}  // namespace relbel
