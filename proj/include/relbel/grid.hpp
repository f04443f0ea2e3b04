#pragma once

// Discretization of a scalar parameter into half-open interval cells, and the
// evidence operations defined on a (prior mass, posterior mass) pair over
// those cells: the per-cell belief ratio, the strength of the evidence at a
// cell, the ratio-maximizing estimate, and evidence-ordered credible regions.

#include <cstddef>
#include <vector>

namespace relbel {

// Cells indexed 0 .. 2T+2:
//   index 0        : left tail  (-inf, center - (T+1/2) delta]
//   index 1..2T+1  : interior   (center + (t-1/2) delta, center + (t+1/2) delta]
//                    with offset t = index - (T+1) in -T..T
//   index 2T+2     : right tail (center + (T+1/2) delta, +inf)
struct Grid {
  double center = 0.0;
  double delta = 1.0;
  int half_cells = 1;  // T >= 1

  Grid() = default;
  Grid(double center_, double delta_, int half_cells_);

  std::size_t size() const { return 2 * static_cast<std::size_t>(half_cells) + 3; }
  std::size_t center_index() const { return static_cast<std::size_t>(half_cells) + 1; }

  bool is_left_tail(std::size_t idx) const { return idx == 0; }
  bool is_right_tail(std::size_t idx) const { return idx == size() - 1; }
  bool is_interior(std::size_t idx) const { return idx > 0 && idx < size() - 1; }

  // Signed cell offset; tails count as +-(T+1).
  int offset_of(std::size_t idx) const;
  std::size_t index_of(int offset) const;

  // Interval edges; tails extend to +-infinity.
  double lower_edge(std::size_t idx) const;
  double upper_edge(std::size_t idx) const;

  // Representative abscissa for output tables: cell midpoint for interior
  // cells, the finite edge offset by delta/2 for the tails.
  double midpoint(std::size_t idx) const;

  // Smallest grid centered at `center` whose interior cells cover [lo, hi]:
  // T = ceil(max(hi - center, center - lo)/delta - 1/2), at least 1.
  static Grid spanning(double center, double delta, double lo, double hi);
};

// Prior and posterior masses over the cells of one grid. Both vectors sum to
// one (tolerance 1e-10) and the posterior never charges a cell the prior
// gives zero mass.
struct DiscreteBelief {
  Grid grid;
  std::vector<double> prior;
  std::vector<double> posterior;

  void validate() const;  // throws invalid_input on violation
};

// Evidence about one cell: the belief ratio, how strongly the data support
// it (posterior probability of cells with no larger ratio), and where.
struct EvidenceRecord {
  double rb = 0.0;
  double strength = 0.0;
  std::size_t cell_index = 0;
};

// Posterior/prior mass ratio of one cell. The cell must carry prior mass.
double rb_at(const DiscreteBelief& belief, std::size_t idx);

// Posterior probability of { cells j : rb(j) <= rb(idx) }, ties included.
// Cells with zero prior mass are excluded.
double strength_at(const DiscreteBelief& belief, std::size_t idx);

// Cell maximizing the belief ratio. Ties break toward the smallest absolute
// offset, preferring the negative side.
EvidenceRecord rb_estimate(const DiscreteBelief& belief);

// Smallest credible region of the form { rb >= c } whose posterior content
// is at least gamma: c is chosen by a descending sweep over the ratio values
// of posterior-charged cells, stopping at the first c with
// posterior({rb > c}) <= gamma. Always contains the rb_estimate cell.
// Returns cell indices in increasing order.
std::vector<std::size_t> credible_region(const DiscreteBelief& belief, double gamma);

// Full evidence summary at one cell.
EvidenceRecord evidence_at(const DiscreteBelief& belief, std::size_t idx);

}  // namespace relbel
