#include "semaxis/embedding.hpp"

#include "semaxis/hash.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <cstdio>
#include <random>

namespace semaxis {

std::string_view to_string(Algorithm a) { return a == Algorithm::pca ? "pca" : "tsne"; }

Algorithm algorithm_from_string(std::string_view s) {
  if (s == "tsne" || s == "t-sne") return Algorithm::tsne;
  if (s == "pca") return Algorithm::pca;
  throw Error(ErrorCode::InvalidConfig, "unknown algorithm '" + std::string(s) + "'");
}

void EmbeddingConfig::validate() const {
  if (!(perplexity >= 2.0) || !std::isfinite(perplexity)) {
    throw Error(ErrorCode::InvalidConfig, "perplexity must be >= 2");
  }
  if (iterations < 1) throw Error(ErrorCode::InvalidConfig, "iterations must be >= 1");
  if (!(learning_rate > 0.0)) throw Error(ErrorCode::InvalidConfig, "learning rate must be positive");
  if (!(early_exaggeration >= 1.0)) throw Error(ErrorCode::InvalidConfig, "exaggeration must be >= 1");
  if (exaggeration_iterations < 0 || momentum_switch_iteration < 0) {
    throw Error(ErrorCode::InvalidConfig, "phase lengths must be non-negative");
  }
  if (kl_interval < 1) throw Error(ErrorCode::InvalidConfig, "kl interval must be >= 1");
}

std::uint64_t EmbeddingConfig::hash() const {
  Fnv1a h;
  h.str(to_string(algorithm))
      .real(perplexity)
      .u64(static_cast<std::uint64_t>(iterations))
      .real(learning_rate)
      .real(early_exaggeration)
      .u64(static_cast<std::uint64_t>(exaggeration_iterations))
      .real(initial_momentum)
      .real(final_momentum)
      .u64(static_cast<std::uint64_t>(momentum_switch_iteration))
      .u64(static_cast<std::uint64_t>(kl_interval))
      .u64(seed);
  return h.value();
}

Matrix squared_distances(const Matrix& m) {
  const Vector norms = m.rowwise().squaredNorm();
  Matrix d = (-2.0 * (m * m.transpose())).colwise() + norms;
  d.rowwise() += norms.transpose();
  d = d.cwiseMax(0.0);
  d.diagonal().setZero();
  return d;
}

namespace {

constexpr double kEntropyTolerance = 1e-5;
constexpr int kMaxBisectionSteps = 50;

// Conditional distribution for precision beta; returns entropy in bits.
double evaluate_kernel(const Vector& shifted, double beta, Vector& probs) {
  probs = (-beta * shifted.array()).exp().matrix();
  const double sum = probs.sum();
  const double mean_d = probs.dot(shifted) / sum;
  probs /= sum;
  return (std::log(sum) + beta * mean_d) / std::log(2.0);
}

}  // namespace

double effective_perplexity(double requested, Index n) {
  const double cap = static_cast<double>(n - 1) / 3.0;
  return std::max(1.0, std::min(requested, cap));
}

Bandwidth perplexity_calibration(const Vector& squared_neighbor_distances, double perplexity) {
  Bandwidth out;
  const Index k = squared_neighbor_distances.size();
  if (k == 0) return out;
  const double target = std::log2(perplexity);

  // Shifting by the nearest distance leaves the distribution unchanged and
  // keeps exp() away from underflow.
  const double d_min = squared_neighbor_distances.minCoeff();
  const Vector shifted = squared_neighbor_distances.array() - d_min;
  const double mean = shifted.mean();
  if (mean == 0.0) {
    out.probabilities = Vector::Constant(k, 1.0 / static_cast<double>(k));
    out.entropy_bits = std::log2(static_cast<double>(k));
    out.beta = 0.0;
    return out;
  }

  double beta = 1.0 / mean;
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  Vector probs;
  double entropy = evaluate_kernel(shifted, beta, probs);
  int step = 0;
  while (std::abs(entropy - target) > kEntropyTolerance && step < kMaxBisectionSteps) {
    if (entropy > target) {
      lo = beta;
      beta = std::isinf(hi) ? beta * 2.0 : 0.5 * (beta + hi);
    } else {
      hi = beta;
      beta = 0.5 * (beta + lo);
    }
    entropy = evaluate_kernel(shifted, beta, probs);
    ++step;
  }
  out.beta = beta;
  out.entropy_bits = entropy;
  out.steps = step;
  out.probabilities = std::move(probs);
  return out;
}

Matrix joint_affinities(const Matrix& m, double perplexity) {
  const Index n = m.rows();
  const Matrix dist = squared_distances(m);
  Matrix cond = Matrix::Zero(n, n);
  Vector row(n - 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0, c = 0; j < n; ++j) {
      if (j != i) row[c++] = dist(i, j);
    }
    const Bandwidth bw = perplexity_calibration(row, perplexity);
    for (Index j = 0, c = 0; j < n; ++j) {
      if (j != i) cond(i, j) = bw.probabilities[c++];
    }
  }
  Matrix p = (cond + cond.transpose()) / (2.0 * static_cast<double>(n));
  p.diagonal().setZero();
  return p;
}

namespace {

// Student-t numerators 1 / (1 + |y_i - y_j|^2) with zero diagonal.
Matrix student_kernel(const Matrix& coords) {
  Matrix num = (1.0 + squared_distances(coords).array()).inverse().matrix();
  num.diagonal().setZero();
  return num;
}

}  // namespace

double kl_divergence(const Matrix& p, const Matrix& coords) {
  const Matrix num = student_kernel(coords);
  const double z = num.sum();
  double kl = 0.0;
  for (Index j = 0; j < p.cols(); ++j) {
    for (Index i = 0; i < p.rows(); ++i) {
      const double pij = p(i, j);
      if (i == j || pij <= 0.0) continue;
      const double qij = std::max(num(i, j) / z, std::numeric_limits<double>::min());
      kl += pij * std::log(pij / qij);
    }
  }
  return kl;
}

Matrix pca_project(const Matrix& m) {
  const Index n = m.rows();
  const Index d = m.cols();
  Matrix coords = Matrix::Zero(n, 2);
  if (n == 0 || d == 0) return coords;
  const Matrix centered = m.rowwise() - m.colwise().mean();
  const Matrix cov = (centered.transpose() * centered) / static_cast<double>(n);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(cov);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::DegenerateInput, "covariance eigendecomposition failed");
  }
  // Eigenvalues come back ascending.
  const Index keep = std::min<Index>(2, d);
  for (Index c = 0; c < keep; ++c) {
    Vector axis = solver.eigenvectors().col(d - 1 - c);
    Index lead = 0;
    axis.cwiseAbs().maxCoeff(&lead);
    if (axis[lead] < 0.0) axis = -axis;
    coords.col(c) = centered * axis;
  }
  return coords;
}

namespace {

Embedding run_tsne(const Matrix& m, const EmbeddingConfig& cfg, const EmbedProgress& progress) {
  const Index n = m.rows();
  if (n < 3) throw Error(ErrorCode::TooFewPoints, "t-SNE needs at least 3 points");
  const Matrix dist = squared_distances(m);
  if (dist.maxCoeff() == 0.0) throw Error(ErrorCode::DegenerateInput, "all rows are identical");

  Matrix p = joint_affinities(m, effective_perplexity(cfg.perplexity, n));
  const Matrix p_plain = p;
  p *= cfg.early_exaggeration;

  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> gauss(0.0, 1e-4);
  Matrix y(n, 2);
  for (Index i = 0; i < n; ++i) {
    y(i, 0) = gauss(rng);
    y(i, 1) = gauss(rng);
  }

  Matrix velocity = Matrix::Zero(n, 2);
  Matrix gains = Matrix::Ones(n, 2);
  double momentum = cfg.initial_momentum;
  Embedding out;
  out.config = cfg;

  for (int iter = 0; iter < cfg.iterations; ++iter) {
    if (iter == cfg.exaggeration_iterations) p = p_plain;
    if (iter == cfg.momentum_switch_iteration) momentum = cfg.final_momentum;

    const Matrix num = student_kernel(y);
    const double z = num.sum();
    // dC/dy_i = 4 sum_j (p_ij - q_ij) num_ij (y_i - y_j)
    const Matrix pq = (p - num / z).cwiseProduct(num);
    const Matrix grad = 4.0 * (pq.rowwise().sum().asDiagonal() * y - pq * y);

    for (Index i = 0; i < n; ++i) {
      for (Index c = 0; c < 2; ++c) {
        const bool same_sign = (grad(i, c) > 0.0) == (velocity(i, c) > 0.0);
        gains(i, c) = same_sign ? std::max(gains(i, c) * 0.8, 0.01) : gains(i, c) + 0.2;
      }
    }
    velocity = momentum * velocity - cfg.learning_rate * gains.cwiseProduct(grad);
    y += velocity;
    y.rowwise() -= y.colwise().mean();

    const int done = iter + 1;
    if (done % cfg.kl_interval == 0 || done == cfg.iterations) {
      const double kl = kl_divergence(p_plain, y);
      out.kl_trace.push_back({done, kl});
      if (progress) progress(done, kl);
    }
  }
  out.coords = std::move(y);
  return out;
}

}  // namespace

Embedding embed(const Matrix& m, const EmbeddingConfig& cfg, const EmbedProgress& progress) {
  cfg.validate();
  if (!m.allFinite()) throw Error(ErrorCode::DegenerateInput, "input contains NaN or Inf");
  if (cfg.algorithm == Algorithm::pca) {
    if (m.rows() < 1) throw Error(ErrorCode::TooFewPoints, "PCA needs at least 1 point");
    Embedding out;
    out.coords = pca_project(m);
    out.config = cfg;
    return out;
  }
  return run_tsne(m, cfg, progress);
}

}  // namespace semaxis

namespace semaxis {

std::string embedding_table(const IdList& ids, const Matrix& coords) {
  if (static_cast<Index>(ids.size()) != coords.rows() || coords.cols() != 2) {
    throw Error(ErrorCode::DimensionMismatch, "coordinates must be N x 2 and match the id list");
  }
  std::string out = "id,x,y\n";
  char buf[64];
  for (Index i = 0; i < coords.rows(); ++i) {
    out += ids[i];
    std::snprintf(buf, sizeof buf, ",%.17g,%.17g\n", coords(i, 0), coords(i, 1));
    out += buf;
  }
  return out;
}

}  // namespace semaxis
