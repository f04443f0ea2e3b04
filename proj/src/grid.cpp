#include "relbel/grid.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "relbel/errors.hpp"

namespace relbel {

namespace {

constexpr double kMassTol = 1e-10;

// Tie rank for the estimate: prefer small |offset|, negative before positive.
bool tie_before(const Grid& grid, std::size_t a, std::size_t b) {
  const int ta = grid.offset_of(a);
  const int tb = grid.offset_of(b);
  if (std::abs(ta) != std::abs(tb)) return std::abs(ta) < std::abs(tb);
  return ta < tb;
}

}  // namespace

Grid::Grid(double center_, double delta_, int half_cells_)
    : center(center_), delta(delta_), half_cells(half_cells_) {
  detail::require(std::isfinite(center), "grid center must be finite");
  detail::require(std::isfinite(delta) && delta > 0.0, "grid delta must be positive");
  detail::require(half_cells >= 1, "grid needs at least one cell on each side");
}

int Grid::offset_of(std::size_t idx) const {
  detail::require(idx < size(), "cell index out of range");
  if (idx == 0) return -(half_cells + 1);
  if (idx == size() - 1) return half_cells + 1;
  return static_cast<int>(idx) - (half_cells + 1);
}

std::size_t Grid::index_of(int offset) const {
  detail::require(std::abs(offset) <= half_cells + 1, "cell offset out of range");
  return static_cast<std::size_t>(offset + half_cells + 1);
}

double Grid::lower_edge(std::size_t idx) const {
  detail::require(idx < size(), "cell index out of range");
  if (idx == 0) return -std::numeric_limits<double>::infinity();
  const int t = static_cast<int>(idx) - (half_cells + 1);
  return center + (t - 0.5) * delta;
}

double Grid::upper_edge(std::size_t idx) const {
  detail::require(idx < size(), "cell index out of range");
  if (idx == size() - 1) return std::numeric_limits<double>::infinity();
  const int t = static_cast<int>(idx) - (half_cells + 1);
  return center + (t + 0.5) * delta;
}

double Grid::midpoint(std::size_t idx) const {
  detail::require(idx < size(), "cell index out of range");
  return center + offset_of(idx) * delta;
}

Grid Grid::spanning(double center, double delta, double lo, double hi) {
  detail::require(std::isfinite(lo) && std::isfinite(hi) && lo <= hi,
                  "grid span bounds must be finite with lo <= hi");
  detail::require(std::isfinite(delta) && delta > 0.0, "grid delta must be positive");
  const double reach = std::max(hi - center, center - lo);
  const int T = std::max(1, static_cast<int>(std::ceil(reach / delta - 0.5)));
  return Grid(center, delta, T);
}

void DiscreteBelief::validate() const {
  detail::require(prior.size() == grid.size() && posterior.size() == grid.size(),
                  "belief mass vectors must match the grid size");
  double prior_sum = 0.0, post_sum = 0.0;
  for (std::size_t i = 0; i < prior.size(); ++i) {
    detail::require(std::isfinite(prior[i]) && prior[i] >= 0.0,
                    "prior cell masses must be finite and nonnegative");
    detail::require(std::isfinite(posterior[i]) && posterior[i] >= 0.0,
                    "posterior cell masses must be finite and nonnegative");
    detail::require(prior[i] > 0.0 || posterior[i] == 0.0,
                    "posterior mass on a cell with zero prior mass");
    prior_sum += prior[i];
    post_sum += posterior[i];
  }
  detail::require(std::fabs(prior_sum - 1.0) <= kMassTol,
                  "prior cell masses must sum to one");
  detail::require(std::fabs(post_sum - 1.0) <= kMassTol,
                  "posterior cell masses must sum to one");
}

double rb_at(const DiscreteBelief& belief, std::size_t idx) {
  detail::require(idx < belief.prior.size(), "cell index out of range");
  if (!(belief.prior[idx] > 0.0)) {
    throw invalid_input("belief ratio undefined on a cell with zero prior mass");
  }
  return belief.posterior[idx] / belief.prior[idx];
}

double strength_at(const DiscreteBelief& belief, std::size_t idx) {
  const double rb0 = rb_at(belief, idx);
  double acc = 0.0;
  for (std::size_t j = 0; j < belief.prior.size(); ++j) {
    if (!(belief.prior[j] > 0.0)) continue;
    if (belief.posterior[j] / belief.prior[j] <= rb0) acc += belief.posterior[j];
  }
  return std::min(acc, 1.0);
}

EvidenceRecord rb_estimate(const DiscreteBelief& belief) {
  bool found = false;
  std::size_t best = 0;
  double best_rb = -1.0;
  for (std::size_t j = 0; j < belief.prior.size(); ++j) {
    if (!(belief.prior[j] > 0.0)) continue;
    const double r = belief.posterior[j] / belief.prior[j];
    if (!found || r > best_rb ||
        (r == best_rb && tie_before(belief.grid, j, best))) {
      found = true;
      best = j;
      best_rb = r;
    }
  }
  detail::require(found, "belief has no cell with positive prior mass");
  return evidence_at(belief, best);
}

EvidenceRecord evidence_at(const DiscreteBelief& belief, std::size_t idx) {
  EvidenceRecord rec;
  rec.cell_index = idx;
  rec.rb = rb_at(belief, idx);
  rec.strength = strength_at(belief, idx);
  return rec;
}

std::vector<std::size_t> credible_region(const DiscreteBelief& belief, double gamma) {
  detail::require(std::isfinite(gamma) && gamma >= 0.0 && gamma <= 1.0,
                  "credibility level must lie in [0,1]");
  // Candidate cut levels: distinct ratio values of posterior-charged cells.
  std::vector<double> levels;
  for (std::size_t j = 0; j < belief.prior.size(); ++j) {
    if (belief.prior[j] > 0.0 && belief.posterior[j] > 0.0) {
      levels.push_back(belief.posterior[j] / belief.prior[j]);
    }
  }
  detail::require(!levels.empty(), "belief has no posterior mass");
  std::sort(levels.begin(), levels.end(), std::greater<>());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto posterior_above = [&](double c) {
    double acc = 0.0;
    for (std::size_t j = 0; j < belief.prior.size(); ++j) {
      if (belief.prior[j] > 0.0 && belief.posterior[j] / belief.prior[j] > c) {
        acc += belief.posterior[j];
      }
    }
    return acc;
  };

  // Descending sweep: smallest candidate c with posterior({rb > c}) <= gamma.
  double cut = levels.front();
  for (double c : levels) {
    if (posterior_above(c) <= gamma) cut = c; else break;
  }

  std::vector<std::size_t> region;
  for (std::size_t j = 0; j < belief.prior.size(); ++j) {
    if (belief.prior[j] > 0.0 && belief.posterior[j] / belief.prior[j] >= cut) {
      region.push_back(j);
    }
  }
  return region;
}

}  // namespace relbel
