#pragma once

#include "semaxis/types.hpp"

#include <vector>

namespace semaxis {

/// Tuning constants for the 1-D bead relaxation, all in display units.
struct BeadLayoutConfig {
  int max_iterations = 300;
  double anchor_stiffness = 0.7;   // pull of x toward its anchor per iteration
  double center_stiffness = 0.05;  // pull of y toward the axis line per iteration
  double convergence = 1e-3;       // stop when no bead moves further than this
  double tolerated_overlap = 0.5;
  /// Collision sweeps per iteration are repeated until the worst overlap is
  /// below this or the sweep budget is spent.
  double sweep_tolerance = 1e-3;
  int max_sweeps = 200;
};

struct BeadLayout {
  Vector x;
  Vector y;
  Vector r;
  int iterations = 0;
  /// Largest r_i + r_j - |c_i - c_j| over all pairs (<= 0 when none overlap).
  double max_overlap = 0.0;
  /// max_overlap at the end of every iteration.
  std::vector<double> overlap_trace;
};

/// Beeswarm layout: circles stay near their anchor on x and spread in y.
/// Fully deterministic; pairs are visited in index order.
BeadLayout deoverlap(const Vector& anchors, const Vector& radii, const BeadLayoutConfig& cfg = {});
inline BeadLayout deoverlap(const Vector& anchors, const Vector& radii, int max_iter) {
  BeadLayoutConfig cfg;
  cfg.max_iterations = max_iter;
  return deoverlap(anchors, radii, cfg);
}

double max_pairwise_overlap(const Vector& x, const Vector& y, const Vector& r);

struct BinAssignment {
  std::vector<Index> bin;
  /// 0-based position within the bin, ordered by anchor then id.
  std::vector<Index> stack;
};

/// Discretized alternative to deoverlap for large N. Ids default to the
/// point index when empty.
BinAssignment bin_positions(const Vector& anchors, Index bins, const IdList& ids = {});

}  // namespace semaxis
