#pragma once

#include "semaxis/error.hpp"
#include "semaxis/types.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace semaxis {

enum class Normalization { raw, zscore, minmax_0_100 };

std::string_view to_string(Normalization n);
Normalization normalization_from_string(std::string_view s);

struct TimeSlice {
  std::string period;
  Matrix points;
};

/// Id-indexed N x D attribute table. Rows are points, columns attributes.
/// Immutable once constructed; normalization returns a new Dataset.
class Dataset {
 public:
  Dataset(Matrix points, IdList ids, std::vector<std::string> attributes,
          std::vector<TimeSlice> slices = {}, Normalization normalization = Normalization::raw);

  const Matrix& points() const noexcept { return points_; }
  const IdList& ids() const noexcept { return ids_; }
  const std::vector<std::string>& attributes() const noexcept { return attributes_; }
  const std::vector<TimeSlice>& slices() const noexcept { return slices_; }
  Normalization normalization() const noexcept { return normalization_; }

  Index size() const noexcept { return points_.rows(); }
  Index dims() const noexcept { return points_.cols(); }

  std::optional<Index> index_of(std::string_view id) const;
  /// Throws UnknownId.
  Index require_index(std::string_view id) const;
  std::optional<Index> attribute_index(std::string_view name) const;

 private:
  Matrix points_;
  IdList ids_;
  std::vector<std::string> attributes_;
  std::vector<TimeSlice> slices_;
  Normalization normalization_;
  std::unordered_map<std::string, Index> index_;
};

/// Non-negative attribute weights summing to one.
class WeightVector {
 public:
  explicit WeightVector(Vector values);

  static WeightVector uniform(Index dims);

  const Vector& values() const noexcept { return values_; }
  Index size() const noexcept { return values_.size(); }
  double operator[](Index k) const { return values_[k]; }

  friend bool operator==(const WeightVector& a, const WeightVector& b) {
    return a.values_.size() == b.values_.size() && a.values_ == b.values_;
  }

  static constexpr double kSumTolerance = 1e-9;

 private:
  Vector values_;
};

struct CsvOptions {
  /// Empty selects the first column.
  std::string id_column;
  char delimiter = ',';
  /// When set, the table is in long format: one row per (id, period). Each
  /// period becomes a time slice and the main matrix is the per-id sum.
  std::string period_column;
};

Dataset load_csv(std::string_view bytes, const CsvOptions& options = {});

Dataset zscore_normalize(const Dataset& d);
Dataset minmax_scale_0_100(const Dataset& d);
Dataset normalize(const Dataset& d, Normalization n);

/// Sum_k p_k w_k.
template <typename DerivedP, typename DerivedW>
typename DerivedP::Scalar weighted_score(const Eigen::MatrixBase<DerivedP>& p,
                                         const Eigen::MatrixBase<DerivedW>& w) {
  if (p.size() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "point has " + std::to_string(p.size()) +
                                                  " attributes, weights " + std::to_string(w.size()));
  }
  return p.reshaped().dot(w.reshaped());
}

inline double weighted_score(const Vector& p, const WeightVector& w) {
  return weighted_score(p, w.values());
}

/// Weighted score of every row of the dataset.
Vector weighted_scores(const Matrix& points, const WeightVector& w);

/// Sets w[attr] = target and shares the difference equally among the other
/// attributes. An attribute that would go negative is clamped to zero and its
/// unpaid share is re-spread over the remaining positive attributes.
WeightVector adjust_weight(const WeightVector& w, Index attr, double target);

/// Coloring values for the reduced space. A single checked attribute yields
/// its raw column; several yield the weighted score over the checked subset
/// with weights renormalized over that subset.
Vector coloring_score(const Dataset& d, const std::vector<Index>& checked, const WeightVector& w);

/// Affine map of scores onto display radii [min_radius, max_radius].
/// A constant score maps every point to the midpoint.
Vector display_radii(const Vector& scores, double min_radius = 3.0, double max_radius = 12.0);

}  // namespace semaxis
