#include "semaxis/layout.hpp"

#include "semaxis/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace semaxis {

double max_pairwise_overlap(const Vector& x, const Vector& y, const Vector& r) {
  double worst = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    for (Index j = i + 1; j < x.size(); ++j) {
      const double dist = std::hypot(x[j] - x[i], y[j] - y[i]);
      worst = std::max(worst, r[i] + r[j] - dist);
    }
  }
  return x.size() < 2 ? 0.0 : worst;
}

namespace {

struct Relaxation {
  const Vector& anchors;
  const Vector& r;
  double reach;  // max |x - anchor|
  Vector& x;
  Vector& y;

  double clamp_x(Index i, double v) const { return std::clamp(v, anchors[i] - reach, anchors[i] + reach); }

  // Separates one pair; returns the overlap found before the move.
  double resolve(Index i, Index j) {
    const double min_dist = r[i] + r[j];
    double dx = x[j] - x[i];
    double dy = y[j] - y[i];
    const double dist2 = dx * dx + dy * dy;
    if (dist2 >= min_dist * min_dist) return 0.0;
    const double dist = std::sqrt(dist2);
    const double overlap = min_dist - dist;
    // Coincident centers: split vertically, alternating by pair parity.
    const double tie_sign = ((i + j) & 1) ? 1.0 : -1.0;
    double ux = 0.0;
    double uy = tie_sign;
    if (dist > 1e-12) {
      ux = dx / dist;
      uy = dy / dist;
    }
    const double half = 0.5 * overlap;
    x[i] = clamp_x(i, x[i] - ux * half);
    x[j] = clamp_x(j, x[j] + ux * half);
    y[i] -= uy * half;
    y[j] += uy * half;

    // Whatever the x clamp swallowed is made up vertically.
    dx = x[j] - x[i];
    dy = y[j] - y[i];
    if (dx * dx + dy * dy < min_dist * min_dist) {
      const double need = std::sqrt(std::max(0.0, min_dist * min_dist - dx * dx)) - std::abs(dy);
      const double s = dy > 0.0 ? 1.0 : (dy < 0.0 ? -1.0 : tie_sign);
      y[i] -= s * 0.5 * need;
      y[j] += s * 0.5 * need;
    }
    return overlap;
  }
};

}  // namespace

BeadLayout deoverlap(const Vector& anchors, const Vector& radii, const BeadLayoutConfig& cfg) {
  const Index n = anchors.size();
  if (radii.size() != n) throw Error(ErrorCode::DimensionMismatch, "anchor and radius counts differ");
  if (n > 0 && !(radii.minCoeff() > 0.0)) throw Error(ErrorCode::BadRequest, "radii must be positive");
  if (!anchors.allFinite() || !radii.allFinite()) throw Error(ErrorCode::BadRequest, "non-finite input");

  BeadLayout out;
  out.x = anchors;
  out.y = Vector::Zero(n);
  out.r = radii;
  if (n < 2) return out;

  const double r_max = radii.maxCoeff();
  // x never leaves anchor +- r_max, so only pairs whose anchors are closer
  // than 2 r_max + r_i + r_j can ever touch.
  std::vector<Index> by_anchor(n);
  std::iota(by_anchor.begin(), by_anchor.end(), Index{0});
  std::stable_sort(by_anchor.begin(), by_anchor.end(), [&](Index a, Index b) { return anchors[a] < anchors[b]; });
  std::vector<std::pair<Index, Index>> pairs;
  for (std::size_t s = 0; s < by_anchor.size(); ++s) {
    for (std::size_t t = s + 1; t < by_anchor.size(); ++t) {
      const Index a = by_anchor[s];
      const Index b = by_anchor[t];
      if (anchors[b] - anchors[a] >= 4.0 * r_max) break;
      pairs.emplace_back(std::min(a, b), std::max(a, b));
    }
  }
  std::sort(pairs.begin(), pairs.end());

  Relaxation relax{anchors, radii, r_max, out.x, out.y};
  Vector prev_x(n);
  Vector prev_y(n);
  for (int iter = 0; iter < cfg.max_iterations; ++iter) {
    prev_x = out.x;
    prev_y = out.y;
    out.x += cfg.anchor_stiffness * (anchors - out.x);
    out.y -= cfg.center_stiffness * out.y;

    for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
      double worst = 0.0;
      for (const auto& [i, j] : pairs) worst = std::max(worst, relax.resolve(i, j));
      if (worst < cfg.sweep_tolerance) break;
    }

    out.iterations = iter + 1;
    double worst = -std::numeric_limits<double>::infinity();
    for (const auto& [i, j] : pairs) {
      worst = std::max(worst, radii[i] + radii[j] - std::hypot(out.x[j] - out.x[i], out.y[j] - out.y[i]));
    }
    out.overlap_trace.push_back(pairs.empty() ? 0.0 : worst);

    const double moved = std::sqrt(((out.x - prev_x).array().square() + (out.y - prev_y).array().square()).maxCoeff());
    if (moved < cfg.convergence) break;
  }
  out.max_overlap = max_pairwise_overlap(out.x, out.y, out.r);
  return out;
}

BinAssignment bin_positions(const Vector& anchors, Index bins, const IdList& ids) {
  if (bins < 1) throw Error(ErrorCode::BadRequest, "bins must be >= 1");
  const Index n = anchors.size();
  if (!ids.empty() && static_cast<Index>(ids.size()) != n) {
    throw Error(ErrorCode::DimensionMismatch, "id and anchor counts differ");
  }
  BinAssignment out;
  out.bin.assign(n, 0);
  out.stack.assign(n, 0);
  if (n == 0) return out;

  const double lo = anchors.minCoeff();
  const double hi = anchors.maxCoeff();
  for (Index i = 0; i < n; ++i) {
    if (hi > lo) {
      const double t = std::floor(static_cast<double>(bins) * (anchors[i] - lo) / (hi - lo));
      out.bin[i] = std::clamp(static_cast<Index>(t), Index{0}, bins - 1);
    }
  }

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (out.bin[a] != out.bin[b]) return out.bin[a] < out.bin[b];
    if (anchors[a] != anchors[b]) return anchors[a] < anchors[b];
    if (!ids.empty() && ids[a] != ids[b]) return ids[a] < ids[b];
    return a < b;
  });
  Index run = 0;
  for (Index k = 0; k < n; ++k) {
    run = (k > 0 && out.bin[order[k]] == out.bin[order[k - 1]]) ? run + 1 : 0;
    out.stack[order[k]] = run;
  }
  return out;
}

}  // namespace semaxis
