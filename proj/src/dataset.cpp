#include "semaxis/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <numeric>
#include <unordered_set>

namespace semaxis {

std::string_view to_string(Normalization n) {
  switch (n) {
    case Normalization::raw: return "raw";
    case Normalization::zscore: return "zscore";
    case Normalization::minmax_0_100: return "minmax";
  }
  return "raw";
}

Normalization normalization_from_string(std::string_view s) {
  if (s == "raw" || s.empty()) return Normalization::raw;
  if (s == "zscore") return Normalization::zscore;
  if (s == "minmax" || s == "minmax_0_100") return Normalization::minmax_0_100;
  throw Error(ErrorCode::BadRequest, "unknown normalization '" + std::string(s) + "'");
}

Dataset::Dataset(Matrix points, IdList ids, std::vector<std::string> attributes,
                 std::vector<TimeSlice> slices, Normalization normalization)
    : points_(std::move(points)),
      ids_(std::move(ids)),
      attributes_(std::move(attributes)),
      slices_(std::move(slices)),
      normalization_(normalization) {
  if (points_.rows() == 0 || points_.cols() == 0) {
    throw Error(ErrorCode::EmptyTable, "dataset needs at least one row and one attribute");
  }
  if (static_cast<Index>(ids_.size()) != points_.rows()) {
    throw Error(ErrorCode::RaggedRow, "id count does not match row count");
  }
  if (static_cast<Index>(attributes_.size()) != points_.cols()) {
    throw Error(ErrorCode::RaggedRow, "attribute count does not match column count");
  }
  if (!points_.allFinite()) {
    throw Error(ErrorCode::NonNumericCell, "dataset contains NaN or Inf");
  }
  index_.reserve(ids_.size());
  for (Index i = 0; i < static_cast<Index>(ids_.size()); ++i) {
    if (ids_[i].empty()) throw Error(ErrorCode::UnknownId, "empty id at row " + std::to_string(i));
    if (!index_.emplace(ids_[i], i).second) {
      throw Error(ErrorCode::DuplicateId, "id '" + ids_[i] + "' appears more than once");
    }
  }
  for (const auto& s : slices_) {
    if (s.points.rows() != points_.rows() || s.points.cols() != points_.cols()) {
      throw Error(ErrorCode::DimensionMismatch, "slice '" + s.period + "' has a different shape");
    }
    if (!s.points.allFinite()) {
      throw Error(ErrorCode::NonNumericCell, "slice '" + s.period + "' contains NaN or Inf");
    }
  }
}

std::optional<Index> Dataset::index_of(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Index Dataset::require_index(std::string_view id) const {
  if (auto i = index_of(id)) return *i;
  throw Error(ErrorCode::UnknownId, "unknown id '" + std::string(id) + "'");
}

std::optional<Index> Dataset::attribute_index(std::string_view name) const {
  auto it = std::find(attributes_.begin(), attributes_.end(), name);
  if (it == attributes_.end()) return std::nullopt;
  return static_cast<Index>(it - attributes_.begin());
}

// ---------------------------------------------------------------------------
// WeightVector

WeightVector::WeightVector(Vector values) : values_(std::move(values)) {
  if (values_.size() == 0) throw Error(ErrorCode::InvalidWeights, "empty weight vector");
  if (!values_.allFinite() || values_.minCoeff() < 0.0) {
    throw Error(ErrorCode::InvalidWeights, "weights must be finite and non-negative");
  }
  if (std::abs(values_.sum() - 1.0) > kSumTolerance) {
    throw Error(ErrorCode::InvalidWeights, "weights must sum to 1");
  }
}

WeightVector WeightVector::uniform(Index dims) {
  if (dims <= 0) throw Error(ErrorCode::InvalidWeights, "weight vector needs at least one entry");
  return WeightVector(Vector::Constant(dims, 1.0 / static_cast<double>(dims)));
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string> split_record(std::string_view line, char delim) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == delim) {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

bool parse_real(std::string_view s, double& out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size() && std::isfinite(out);
}

std::vector<std::string_view> split_lines(std::string_view bytes) {
  if (bytes.size() >= 3 && bytes.substr(0, 3) == "\xEF\xBB\xBF") bytes.remove_prefix(3);
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= bytes.size()) {
    std::size_t end = bytes.find('\n', start);
    if (end == std::string_view::npos) end = bytes.size();
    std::string_view line = bytes.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!trim(line).empty()) lines.push_back(line);
    start = end + 1;
  }
  return lines;
}

std::size_t find_column(const std::vector<std::string>& header, const std::string& name) {
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (trim(header[c]) == name) return c;
  }
  throw Error(ErrorCode::MissingColumn, "no column named '" + name + "'");
}

}  // namespace

Dataset load_csv(std::string_view bytes, const CsvOptions& options) {
  auto lines = split_lines(bytes);
  if (lines.empty()) throw Error(ErrorCode::EmptyTable, "no header row");
  auto header = split_record(lines.front(), options.delimiter);
  if (lines.size() < 2) throw Error(ErrorCode::EmptyTable, "no data rows");

  const std::size_t id_col = options.id_column.empty() ? 0 : find_column(header, options.id_column);
  std::optional<std::size_t> period_col;
  if (!options.period_column.empty()) {
    period_col = find_column(header, options.period_column);
    if (*period_col == id_col) throw Error(ErrorCode::MissingColumn, "period column equals id column");
  }

  std::vector<std::size_t> value_cols;
  std::vector<std::string> attributes;
  for (std::size_t c = 0; c < header.size(); ++c) {
    if (c == id_col || (period_col && c == *period_col)) continue;
    value_cols.push_back(c);
    attributes.emplace_back(trim(header[c]));
  }
  if (value_cols.empty()) throw Error(ErrorCode::EmptyTable, "no attribute columns");

  struct Row {
    std::string id;
    std::string period;
    std::vector<double> values;
  };
  std::vector<Row> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t r = 1; r < lines.size(); ++r) {
    auto cells = split_record(lines[r], options.delimiter);
    if (cells.size() != header.size()) {
      throw Error(ErrorCode::RaggedRow, "row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                                            " cells, header has " + std::to_string(header.size()));
    }
    Row row;
    row.id = std::string(trim(cells[id_col]));
    if (row.id.empty()) throw Error(ErrorCode::UnknownId, "empty id in row " + std::to_string(r));
    if (period_col) row.period = std::string(trim(cells[*period_col]));
    row.values.reserve(value_cols.size());
    for (std::size_t k = 0; k < value_cols.size(); ++k) {
      double v = 0.0;
      if (!parse_real(cells[value_cols[k]], v)) {
        throw Error(ErrorCode::NonNumericCell, "cell (" + std::to_string(r) + "," +
                                                   std::to_string(value_cols[k]) + ") is not a real number");
      }
      row.values.push_back(v);
    }
    rows.push_back(std::move(row));
  }

  const Index dims = static_cast<Index>(attributes.size());
  if (!period_col) {
    Matrix points(static_cast<Index>(rows.size()), dims);
    IdList ids;
    ids.reserve(rows.size());
    for (Index i = 0; i < static_cast<Index>(rows.size()); ++i) {
      ids.push_back(rows[i].id);
      for (Index k = 0; k < dims; ++k) points(i, k) = rows[i].values[k];
    }
    return Dataset(std::move(points), std::move(ids), std::move(attributes));
  }

  // Long format: ids and periods in order of first appearance.
  IdList ids;
  std::vector<std::string> periods;
  std::unordered_map<std::string, Index> id_pos;
  std::unordered_map<std::string, std::size_t> period_pos;
  for (const auto& row : rows) {
    if (id_pos.emplace(row.id, static_cast<Index>(ids.size())).second) ids.push_back(row.id);
    if (period_pos.emplace(row.period, periods.size()).second) periods.push_back(row.period);
  }
  const Index n = static_cast<Index>(ids.size());
  std::vector<TimeSlice> slices;
  for (const auto& p : periods) slices.push_back({p, Matrix::Zero(n, dims)});
  std::vector<std::vector<bool>> seen(periods.size(), std::vector<bool>(ids.size(), false));
  for (const auto& row : rows) {
    const Index i = id_pos[row.id];
    const std::size_t s = period_pos[row.period];
    if (seen[s][i]) {
      throw Error(ErrorCode::DuplicateId, "id '" + row.id + "' appears twice in period '" + row.period + "'");
    }
    seen[s][i] = true;
    for (Index k = 0; k < dims; ++k) slices[s].points(i, k) = row.values[k];
  }
  for (std::size_t s = 0; s < periods.size(); ++s) {
    for (Index i = 0; i < n; ++i) {
      if (!seen[s][i]) {
        throw Error(ErrorCode::RaggedRow, "id '" + ids[i] + "' has no row for period '" + periods[s] + "'");
      }
    }
  }
  Matrix total = Matrix::Zero(n, dims);
  for (const auto& s : slices) total += s.points;
  return Dataset(std::move(total), std::move(ids), std::move(attributes), std::move(slices));
}

// ---------------------------------------------------------------------------
// Normalization

namespace {

Matrix zscore_columns(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  const double n = static_cast<double>(m.rows());
  for (Index k = 0; k < m.cols(); ++k) {
    const double mean = m.col(k).sum() / n;
    const double var = (m.col(k).array() - mean).square().sum() / n;
    const double sd = std::sqrt(var);
    if (sd == 0.0 || !std::isfinite(sd)) {
      out.col(k).setZero();
    } else {
      out.col(k) = (m.col(k).array() - mean) / sd;
    }
  }
  return out;
}

Matrix minmax_columns(const Matrix& m) {
  Matrix out(m.rows(), m.cols());
  for (Index k = 0; k < m.cols(); ++k) {
    const double lo = m.col(k).minCoeff();
    const double hi = m.col(k).maxCoeff();
    if (hi == lo) {
      out.col(k).setZero();
    } else {
      out.col(k) = 100.0 * (m.col(k).array() - lo) / (hi - lo);
    }
  }
  return out;
}

template <typename F>
Dataset transform(const Dataset& d, Normalization target, F&& columns) {
  if (d.normalization() != Normalization::raw) {
    throw Error(ErrorCode::AlreadyNormalized,
                "dataset is already normalized (" + std::string(to_string(d.normalization())) + ")");
  }
  std::vector<TimeSlice> slices;
  slices.reserve(d.slices().size());
  for (const auto& s : d.slices()) slices.push_back({s.period, columns(s.points)});
  return Dataset(columns(d.points()), d.ids(), d.attributes(), std::move(slices), target);
}

}  // namespace

Dataset zscore_normalize(const Dataset& d) { return transform(d, Normalization::zscore, zscore_columns); }

Dataset minmax_scale_0_100(const Dataset& d) {
  return transform(d, Normalization::minmax_0_100, minmax_columns);
}

Dataset normalize(const Dataset& d, Normalization n) {
  switch (n) {
    case Normalization::raw: return d;
    case Normalization::zscore: return zscore_normalize(d);
    case Normalization::minmax_0_100: return minmax_scale_0_100(d);
  }
  return d;
}

// ---------------------------------------------------------------------------
// Weights and scores

Vector weighted_scores(const Matrix& points, const WeightVector& w) {
  if (points.cols() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(points.cols()) +
                                                  " attributes, weights " + std::to_string(w.size()));
  }
  return points * w.values();
}

WeightVector adjust_weight(const WeightVector& w, Index attr, double target) {
  const Index d = w.size();
  if (attr < 0 || attr >= d) {
    throw Error(ErrorCode::IndexOutOfRange, "attribute " + std::to_string(attr) + " out of range");
  }
  if (!(target >= 0.0 && target <= 1.0)) {
    throw Error(ErrorCode::InvalidTarget, "target weight must lie in [0,1]");
  }
  if (target == w[attr]) return w;
  if (d == 1) throw Error(ErrorCode::InvalidTarget, "a single attribute must keep weight 1");

  Vector out = w.values();
  double residual = target - out[attr];  // amount the other attributes give up
  out[attr] = target;

  if (residual < 0.0) {
    const double share = -residual / static_cast<double>(d - 1);
    for (Index k = 0; k < d; ++k) {
      if (k != attr) out[k] += share;
    }
    return WeightVector(std::move(out));
  }

  std::vector<Index> sharing;
  for (Index k = 0; k < d; ++k) {
    if (k != attr && out[k] > 0.0) sharing.push_back(k);
  }
  // Each pass either settles the residual or drops at least one attribute.
  while (residual > 0.0 && !sharing.empty()) {
    const double share = residual / static_cast<double>(sharing.size());
    residual = 0.0;
    std::vector<Index> next;
    for (Index k : sharing) {
      if (out[k] > share) {
        out[k] -= share;
        next.push_back(k);
      } else {
        residual += share - out[k];
        out[k] = 0.0;
      }
    }
    sharing = std::move(next);
  }
  return WeightVector(std::move(out));
}

Vector coloring_score(const Dataset& d, const std::vector<Index>& checked, const WeightVector& w) {
  if (checked.empty()) throw Error(ErrorCode::EmptyCheckSet, "no attribute checked");
  if (w.size() != d.dims()) throw Error(ErrorCode::DimensionMismatch, "weights do not match dataset");
  for (Index k : checked) {
    if (k < 0 || k >= d.dims()) throw Error(ErrorCode::IndexOutOfRange, "checked attribute out of range");
  }
  std::vector<Index> uniq(checked);
  std::sort(uniq.begin(), uniq.end());
  uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
  if (uniq.size() == 1) return d.points().col(uniq.front());

  Vector sub = Vector::Zero(d.dims());
  double total = 0.0;
  for (Index k : uniq) total += w[k];
  for (Index k : uniq) {
    // All checked weights zero: fall back to an even split over the checked set.
    sub[k] = total > 0.0 ? w[k] / total : 1.0 / static_cast<double>(uniq.size());
  }
  return d.points() * sub;
}

Vector display_radii(const Vector& scores, double min_radius, double max_radius) {
  if (scores.size() == 0) return scores;
  const double lo = scores.minCoeff();
  const double hi = scores.maxCoeff();
  if (hi == lo) return Vector::Constant(scores.size(), 0.5 * (min_radius + max_radius));
  return (min_radius + (max_radius - min_radius) * (scores.array() - lo) / (hi - lo)).matrix();
}

}  // namespace semaxis
