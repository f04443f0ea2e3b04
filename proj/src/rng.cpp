#include "relbel/rng.hpp"

#include <cmath>

#include "relbel/errors.hpp"

namespace relbel {

double Stream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      spare_ = v * f;
      have_spare_ = true;
      return u * f;
    }
  }
}

double Stream::gamma(double shape, double rate) {
  if (!(shape > 0.0) || !(rate > 0.0)) {
    throw invalid_input("gamma sampler requires positive shape and rate");
  }
  if (shape < 1.0) {
    // Boost: if X ~ Gamma(shape+1) and U ~ U(0,1), X U^{1/shape} ~ Gamma(shape).
    const double x = gamma(shape + 1.0, 1.0);
    return x * std::pow(uniform(), 1.0 / shape) / rate;
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v / rate;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v / rate;
  }
}

}  // namespace relbel
