#pragma once

#include "semaxis/dataset.hpp"
#include "semaxis/types.hpp"

#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

namespace semaxis {

enum class Algorithm { tsne, pca };

std::string_view to_string(Algorithm a);
Algorithm algorithm_from_string(std::string_view s);

struct EmbeddingConfig {
  Algorithm algorithm = Algorithm::tsne;
  /// Requested perplexity; the effective value is clamped to (N-1)/3.
  double perplexity = 30.0;
  int iterations = 1000;
  double learning_rate = 200.0;
  double early_exaggeration = 12.0;
  int exaggeration_iterations = 250;
  double initial_momentum = 0.5;
  double final_momentum = 0.8;
  int momentum_switch_iteration = 250;
  /// KL divergence is recorded every this many iterations.
  int kl_interval = 50;
  std::uint64_t seed = 1;

  /// Throws InvalidConfig.
  void validate() const;
  /// Stable hash of every field.
  std::uint64_t hash() const;

  friend bool operator==(const EmbeddingConfig&, const EmbeddingConfig&) = default;
};

struct KlCheckpoint {
  int iteration;
  double kl;
};

struct Embedding {
  Matrix coords;  // N x 2
  EmbeddingConfig config;
  std::vector<KlCheckpoint> kl_trace;
};

/// Row-wise Hadamard product with the weight vector.
template <typename Derived, typename DerivedW>
Matrix weighted_matrix(const Eigen::MatrixBase<Derived>& m, const Eigen::MatrixBase<DerivedW>& w) {
  if (m.cols() != w.size()) {
    throw Error(ErrorCode::DimensionMismatch, "matrix has " + std::to_string(m.cols()) +
                                                  " attributes, weights " + std::to_string(w.size()));
  }
  return m * w.reshaped().asDiagonal();
}

inline Matrix weighted_matrix(const Dataset& d, const WeightVector& w) {
  return weighted_matrix(d.points(), w.values());
}

/// Squared Euclidean distances between all rows.
Matrix squared_distances(const Matrix& m);

struct Bandwidth {
  double beta = 1.0;  // precision of the Gaussian kernel, exp(-beta * d^2)
  double entropy_bits = 0.0;
  int steps = 0;
  Vector probabilities;  // conditional distribution over the neighbours
};

/// Bisection on the Gaussian precision until the conditional distribution over
/// the given neighbours has entropy log2(perplexity) within 1e-5 bits, or 50
/// steps elapse. Input holds squared distances to the neighbours only.
Bandwidth perplexity_calibration(const Vector& squared_neighbor_distances, double perplexity);

double effective_perplexity(double requested, Index n);

/// Symmetrized joint affinities P_ij = (p_j|i + p_i|j) / 2N with zero diagonal.
Matrix joint_affinities(const Matrix& m, double perplexity);

/// KL(P || Q) for the Student-t kernel on low-dimensional coordinates.
double kl_divergence(const Matrix& p, const Matrix& coords);

using EmbedProgress = std::function<void(int iteration, double kl)>;

/// Deterministic for fixed (m, cfg). The callback receives every KL checkpoint.
Embedding embed(const Matrix& m, const EmbeddingConfig& cfg, const EmbedProgress& progress = {});

/// Projection onto the top two principal components of the centered rows.
/// Each component is signed so its largest-magnitude loading is positive.
Matrix pca_project(const Matrix& m);

}  // namespace semaxis

namespace semaxis {

/// Flat "id,x,y" table.
std::string embedding_table(const IdList& ids, const Matrix& coords);

}  // namespace semaxis
