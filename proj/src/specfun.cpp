#include "relbel/specfun.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "relbel/errors.hpp"

namespace relbel {

namespace {

constexpr double kSqrt2 = 1.4142135623730951;
constexpr double kInvSqrt2Pi = 0.3989422804014327;

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) {
    throw invalid_input(std::string(name) + " must be finite");
  }
}

void require_open_unit(double p, const char* name) {
  require_finite(p, name);
  if (!(p > 0.0 && p < 1.0)) {
    throw invalid_input(std::string(name) + " must lie strictly inside (0,1)");
  }
}

void require_gamma_params(const GammaParams& g) {
  if (!(std::isfinite(g.shape) && g.shape > 0.0) ||
      !(std::isfinite(g.rate) && g.rate > 0.0)) {
    throw invalid_input("gamma shape and rate must be finite and positive");
  }
}

// Wichura's AS 241 double-precision rational approximation to Phi^{-1}.
double normal_quantile_as241(double p) {
  const double q = p - 0.5;
  double r;
  if (std::fabs(q) <= 0.425) {
    r = 0.180625 - q * q;
    return q *
           (((((((2509.0809287301226727 * r + 33430.575583588128105) * r +
                 67265.770927008700853) * r + 45921.953931549871457) * r +
               13731.693765509461125) * r + 1971.5909503065514427) * r +
             133.14166789178437745) * r + 3.387132872796366608) /
           (((((((5226.495278852545703 * r + 28729.085735721942674) * r +
                 39307.89580009271061) * r + 21213.794301586595867) * r +
               5394.1960214247511077) * r + 687.1870074920579083) * r +
             42.313330701600911252) * r + 1.0);
  }
  r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double val;
  if (r <= 5.0) {
    r -= 1.6;
    val = (((((((7.7454501427834140764e-4 * r + 0.0227238449892691845833) * r +
                0.24178072517745061177) * r + 1.27045825245236838258) * r +
              3.64784832476320460504) * r + 5.7694972214606914055) * r +
            4.6303378461565452959) * r + 1.42343711074968357734) /
          (((((((1.05075007164441684324e-9 * r + 5.475938084995344946e-4) * r +
                0.0151986665636164571966) * r + 0.14810397642748007459) * r +
              0.68976733498510000455) * r + 1.6763848301838038494) * r +
            2.05319162663775882187) * r + 1.0);
  } else {
    r -= 5.0;
    val = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                0.0012426609473880784386) * r + 0.026532189526576123093) * r +
              0.29656057182850489123) * r + 1.7848265399172913358) * r +
            5.4637849111641143699) * r + 6.6579046435011037772) /
          (((((((2.04426310338993978564e-15 * r + 1.4215117583164458887e-7) * r +
                1.8463183175100546818e-5) * r + 7.868691311456132591e-4) * r +
              0.0148753612908506148525) * r + 0.13692988092273580531) * r +
            0.59983220655588793769) * r + 1.0);
  }
  return q < 0.0 ? -val : val;
}

// Series expansion for P(a,x), effective when x < a + 1.
double lower_gamma_series(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < 600; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * 1e-17) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw numeric_error("incomplete gamma series failed to converge");
}

// Modified Lentz continued fraction for Q(a,x) = 1 - P(a,x), for x >= a + 1.
double upper_gamma_cf(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 600; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw numeric_error("incomplete gamma continued fraction failed to converge");
}

// Continued fraction for the incomplete beta (modified Lentz).
double inc_beta_cf(double a, double b, double x) {
  const double tiny = 1e-300;
  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < tiny) d = tiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 600; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < tiny) d = tiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) return h;
  }
  throw numeric_error("incomplete beta continued fraction failed to converge");
}

}  // namespace

double std_normal_cdf(double z) {
  require_finite(z, "z");
  return 0.5 * std::erfc(-z / kSqrt2);
}

double std_normal_pdf(double z) {
  require_finite(z, "z");
  return kInvSqrt2Pi * std::exp(-0.5 * z * z);
}

double std_normal_quantile(double p) {
  require_open_unit(p, "p");
  double z = normal_quantile_as241(p);
  // One Newton polish against the cdf tightens the tails to full precision.
  const double err = std_normal_cdf(z) - p;
  const double dens = std_normal_pdf(z);
  if (dens > 0.0) z -= err / dens;
  return z;
}

double lower_gamma_reg(double a, double x) {
  if (!(std::isfinite(a) && a > 0.0)) {
    throw invalid_input("incomplete gamma requires shape a > 0");
  }
  require_finite(x, "x");
  if (x <= 0.0) return 0.0;
  if (x < a + 1.0) return lower_gamma_series(a, x);
  return 1.0 - upper_gamma_cf(a, x);
}

double inc_beta_reg(double a, double b, double x) {
  if (!(std::isfinite(a) && a > 0.0 && std::isfinite(b) && b > 0.0)) {
    throw invalid_input("incomplete beta requires a > 0 and b > 0");
  }
  require_finite(x, "x");
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double front = std::exp(std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                                a * std::log(x) + b * std::log1p(-x));
  // The continued fraction converges fast for x below the distribution bulge.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * inc_beta_cf(a, b, x) / a;
  }
  return 1.0 - front * inc_beta_cf(b, a, 1.0 - x) / b;
}

double gamma_cdf(double x, const GammaParams& g) {
  require_gamma_params(g);
  require_finite(x, "x");
  if (x <= 0.0) return 0.0;
  return lower_gamma_reg(g.shape, g.rate * x);
}

double gamma_pdf(double x, const GammaParams& g) {
  require_gamma_params(g);
  require_finite(x, "x");
  if (x <= 0.0) return 0.0;
  return std::exp(g.shape * std::log(g.rate) + (g.shape - 1.0) * std::log(x) -
                  g.rate * x - std::lgamma(g.shape));
}

double gamma_quantile(double p, const GammaParams& g) {
  require_open_unit(p, "p");
  require_gamma_params(g);
  // Work at unit rate, rescale at the end: quantile(p; a, r) = quantile(p; a, 1) / r.
  const GammaParams unit{g.shape, 1.0};

  // Wilson-Hilferty starting point.
  const double z = std_normal_quantile(p);
  const double a = g.shape;
  double x = a * std::pow(1.0 - 1.0 / (9.0 * a) + z / (3.0 * std::sqrt(a)), 3.0);
  if (!(x > 0.0) || !std::isfinite(x)) x = a;

  // Establish a bracket around the root.
  double lo = x, hi = x;
  if (gamma_cdf(x, unit) < p) {
    for (int i = 0; i < 200 && gamma_cdf(hi, unit) < p; ++i) hi = hi * 2.0 + 1e-8;
  } else {
    for (int i = 0; i < 200 && gamma_cdf(lo, unit) > p && lo > 0.0; ++i) lo *= 0.5;
  }
  if (gamma_cdf(lo, unit) > p || gamma_cdf(hi, unit) < p) {
    throw numeric_error("gamma quantile bracketing failed");
  }

  // Safeguarded Newton: fall back to bisection whenever the step escapes.
  for (int it = 0; it < 200; ++it) {
    const double fx = gamma_cdf(x, unit) - p;
    if (std::fabs(fx) <= 1e-14 * std::max(p, 1.0 - p) || hi - lo < 1e-15 * x) break;
    if (fx > 0.0) hi = x; else lo = x;
    const double dens = gamma_pdf(x, unit);
    double next = dens > 0.0 ? x - fx / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    x = next;
  }
  if (std::fabs(gamma_cdf(x, unit) - p) > 1e-12) {
    throw numeric_error("gamma quantile iteration did not reach tolerance");
  }
  return x / g.rate;
}

double student_t_cdf(double x, double dof) {
  require_finite(x, "x");
  if (!(std::isfinite(dof) && dof > 0.0)) {
    throw invalid_input("Student t requires dof > 0");
  }
  if (x == 0.0) return 0.5;
  const double w = dof / (dof + x * x);
  const double half_tail = 0.5 * inc_beta_reg(0.5 * dof, 0.5, w);
  return x > 0.0 ? 1.0 - half_tail : half_tail;
}

double student_t_log_pdf(double x, double dof) {
  require_finite(x, "x");
  if (!(std::isfinite(dof) && dof > 0.0)) {
    throw invalid_input("Student t requires dof > 0");
  }
  return std::lgamma(0.5 * (dof + 1.0)) - std::lgamma(0.5 * dof) -
         0.5 * std::log(dof * 3.141592653589793238462643) -
         0.5 * (dof + 1.0) * std::log1p(x * x / dof);
}

double student_t_pdf(double x, double dof) { return std::exp(student_t_log_pdf(x, dof)); }

double student_t_quantile(double p, double dof) {
  require_open_unit(p, "p");
  if (!(std::isfinite(dof) && dof > 0.0)) {
    throw invalid_input("Student t requires dof > 0");
  }
  if (p == 0.5) return 0.0;
  // Bracket geometrically, then bisect + Newton on the cdf.
  const bool upper = p > 0.5;
  const double target = upper ? p : 1.0 - p;  // work in the upper half by symmetry
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 400 && student_t_cdf(hi, dof) < target; ++i) hi *= 2.0;
  double x = 0.5 * (lo + hi);
  for (int it = 0; it < 300; ++it) {
    const double fx = student_t_cdf(x, dof) - target;
    if (std::fabs(fx) <= 1e-14) break;
    if (fx > 0.0) hi = x; else lo = x;
    const double dens = student_t_pdf(x, dof);
    double next = dens > 0.0 ? x - fx / dens : 0.5 * (lo + hi);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (std::fabs(next - x) < 1e-15 * (1.0 + std::fabs(x))) { x = next; break; }
    x = next;
  }
  return upper ? x : -x;
}

double laplace_std_cdf(double x) {
  require_finite(x, "x");
  if (x < 0.0) return 0.5 * std::exp(kSqrt2 * x);
  return 1.0 - 0.5 * std::exp(-kSqrt2 * x);
}

double laplace_std_quantile(double p) {
  require_open_unit(p, "p");
  if (p <= 0.5) return std::log(2.0 * p) / kSqrt2;
  return -std::log(2.0 * (1.0 - p)) / kSqrt2;
}

}  // namespace relbel
