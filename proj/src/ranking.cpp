#include "semaxis/ranking.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace semaxis {

std::string_view to_string(ScaleKind k) {
  switch (k) {
    case ScaleKind::local_value: return "local";
    case ScaleKind::global_value: return "global";
    case ScaleKind::local_rank: return "rank";
  }
  return "local";
}

ScaleKind scale_kind_from_string(std::string_view s) {
  if (s.empty() || s == "local" || s == "local_value") return ScaleKind::local_value;
  if (s == "global" || s == "global_value") return ScaleKind::global_value;
  if (s == "rank" || s == "local_rank") return ScaleKind::local_rank;
  throw Error(ErrorCode::BadRequest, "unknown scale '" + std::string(s) + "'");
}

namespace {

double unit(double value, double lo, double hi) {
  if (!(hi > lo)) return 0.5;
  return std::clamp((value - lo) / (hi - lo), 0.0, 1.0);
}

}  // namespace

double scale_position(double value, ScaleKind kind, const ScaleContext& ctx) {
  switch (kind) {
    case ScaleKind::local_value: return unit(value, ctx.attr_min, ctx.attr_max);
    case ScaleKind::global_value: return unit(value, ctx.global_min, ctx.global_max);
    case ScaleKind::local_rank:
      if (ctx.n <= 1) return 0.5;
      return std::clamp(static_cast<double>(ctx.n - ctx.rank) / static_cast<double>(ctx.n - 1), 0.0, 1.0);
  }
  return 0.5;
}

std::vector<Index> attribute_ranks(const Vector& column) {
  const Index n = column.size();
  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) { return column[a] > column[b]; });
  std::vector<Index> rank(n);
  for (Index k = 0; k < n; ++k) {
    const bool tied = k > 0 && column[order[k]] == column[order[k - 1]];
    rank[order[k]] = tied ? rank[order[k - 1]] : k + 1;
  }
  return rank;
}

Matrix scale_positions(const Matrix& points, ScaleKind kind) {
  Matrix pos(points.rows(), points.cols());
  ScaleContext ctx;
  ctx.n = points.rows();
  ctx.global_min = points.minCoeff();
  ctx.global_max = points.maxCoeff();
  for (Index k = 0; k < points.cols(); ++k) {
    ctx.attr_min = points.col(k).minCoeff();
    ctx.attr_max = points.col(k).maxCoeff();
    std::vector<Index> ranks;
    if (kind == ScaleKind::local_rank) ranks = attribute_ranks(points.col(k));
    for (Index i = 0; i < points.rows(); ++i) {
      if (kind == ScaleKind::local_rank) ctx.rank = ranks[i];
      pos(i, k) = scale_position(points(i, k), kind, ctx);
    }
  }
  return pos;
}

void BrushFilter::validate() const {
  if (!(lo >= 0.0 && lo <= hi && hi <= 1.0)) {
    throw Error(ErrorCode::InvalidFilter, "filter interval must satisfy 0 <= lo <= hi <= 1");
  }
}

IdList apply_filters(const std::vector<BrushFilter>& filters, const Dataset& d, ScaleKind kind) {
  for (const auto& f : filters) {
    f.validate();
    if (f.attr < 0 || f.attr >= d.dims()) {
      throw Error(ErrorCode::IndexOutOfRange, "filter attribute " + std::to_string(f.attr) + " out of range");
    }
  }
  if (filters.empty()) return d.ids();
  const Matrix pos = scale_positions(d.points(), kind);
  IdList out;
  for (Index i = 0; i < d.size(); ++i) {
    const bool keep = std::all_of(filters.begin(), filters.end(), [&](const BrushFilter& f) {
      const double p = pos(i, f.attr);
      return p >= f.lo && p <= f.hi;
    });
    if (keep) out.push_back(d.ids()[i]);
  }
  return out;
}

Index RankingResult::rank_of(std::string_view id) const {
  auto it = std::find(order.begin(), order.end(), id);
  return it == order.end() ? 0 : static_cast<Index>(it - order.begin()) + 1;
}

RankingResult rank_by_scores(const Vector& scores, const IdList& ids) {
  if (static_cast<Index>(ids.size()) != scores.size()) {
    throw Error(ErrorCode::DimensionMismatch, "score and id counts differ");
  }
  std::vector<Index> order(ids.size());
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index a, Index b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return ids[a] < ids[b];
  });
  RankingResult r;
  r.order.reserve(order.size());
  r.scores.reserve(order.size());
  for (Index i : order) {
    r.order.push_back(ids[i]);
    r.scores.push_back(scores[i]);
  }
  return r;
}

RankingResult weighted_ranking(const Dataset& d, const WeightVector& w) {
  return rank_by_scores(weighted_scores(d.points(), w), d.ids());
}

std::vector<SliceRanking> time_sliced_ranking(const Dataset& d, const WeightVector& w,
                                              const std::vector<std::string>& periods) {
  if (d.slices().empty()) throw Error(ErrorCode::NoSlices, "dataset has no time slices");
  if (w.size() != d.dims()) throw Error(ErrorCode::DimensionMismatch, "weights do not match dataset");
  std::vector<const TimeSlice*> chosen;
  if (periods.empty()) {
    for (const auto& s : d.slices()) chosen.push_back(&s);
  } else {
    for (const auto& p : periods) {
      auto it = std::find_if(d.slices().begin(), d.slices().end(), [&](const TimeSlice& s) { return s.period == p; });
      if (it == d.slices().end()) throw Error(ErrorCode::UnknownPeriod, "no slice '" + p + "'");
      chosen.push_back(&*it);
    }
  }
  std::vector<SliceRanking> out;
  out.reserve(chosen.size());
  for (const auto* s : chosen) out.push_back({s->period, rank_by_scores(weighted_scores(s->points, w), d.ids())});
  return out;
}

namespace {

void write_rows(std::ostream& os, const RankingResult& r, const std::string* period) {
  os.precision(17);
  for (std::size_t k = 0; k < r.order.size(); ++k) {
    if (period) os << *period << ',';
    os << (k + 1) << ',' << r.order[k] << ',' << r.scores[k] << '\n';
  }
}

}  // namespace

std::string ranking_table(const RankingResult& r) {
  std::ostringstream os;
  os << "rank,id,score\n";
  write_rows(os, r, nullptr);
  return os.str();
}

std::string sliced_ranking_table(const std::vector<SliceRanking>& slices) {
  std::ostringstream os;
  os << "period,rank,id,score\n";
  for (const auto& s : slices) write_rows(os, s.ranking, &s.period);
  return os.str();
}

}  // namespace semaxis
