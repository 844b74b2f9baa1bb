#pragma once

#include "semaxis/dataset.hpp"
#include "semaxis/types.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace semaxis {

/// Positional scales of the attribute rows.
///   local_value:  extent of the attribute itself
///   global_value: extent over every attribute
///   local_rank:   rank within the attribute, best rank at 1.0
enum class ScaleKind { local_value, global_value, local_rank };

std::string_view to_string(ScaleKind k);
ScaleKind scale_kind_from_string(std::string_view s);

struct ScaleContext {
  double attr_min = 0.0;
  double attr_max = 0.0;
  double global_min = 0.0;
  double global_max = 0.0;
  Index rank = 1;  // 1 = best
  Index n = 1;
};

/// Position in [0,1]. A zero-width extent (or N = 1 for ranks) maps to 0.5.
double scale_position(double value, ScaleKind kind, const ScaleContext& ctx);

/// Competition ranks ("1224") by descending value.
std::vector<Index> attribute_ranks(const Vector& column);

/// N x D matrix of positions of every cell under one scale.
Matrix scale_positions(const Matrix& points, ScaleKind kind);

struct BrushFilter {
  Index attr = 0;
  double lo = 0.0;
  double hi = 1.0;

  /// Throws InvalidFilter unless 0 <= lo <= hi <= 1.
  void validate() const;
};

/// Ids (dataset order) whose position passes every filter. No filters: all ids.
IdList apply_filters(const std::vector<BrushFilter>& filters, const Dataset& d, ScaleKind kind);

struct SliceRanking;

struct RankingResult {
  IdList order;                // best first
  std::vector<double> scores;  // aligned with order, non-increasing
  std::vector<SliceRanking> slices;

  /// 1-based position of id in the order, 0 when absent.
  Index rank_of(std::string_view id) const;
};

struct SliceRanking {
  std::string period;
  RankingResult ranking;
};

/// Sort by score descending, ties by id ascending.
RankingResult rank_by_scores(const Vector& scores, const IdList& ids);

RankingResult weighted_ranking(const Dataset& d, const WeightVector& w);

/// One independent ranking per requested period (all periods when empty).
std::vector<SliceRanking> time_sliced_ranking(const Dataset& d, const WeightVector& w,
                                              const std::vector<std::string>& periods = {});

/// Flat "rank,id,score" table.
std::string ranking_table(const RankingResult& r);
/// Long "period,rank,id,score" table.
std::string sliced_ranking_table(const std::vector<SliceRanking>& slices);

}  // namespace semaxis
