#include "semaxis/embedding.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

using namespace semaxis;

namespace {

Matrix planted_clusters(Index per_cluster, Index dims, double separation, std::uint64_t seed, std::vector<int>& labels) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g(0, 1);
  Matrix m(3 * per_cluster, dims);
  labels.clear();
  for (int c = 0; c < 3; ++c) {
    for (Index i = 0; i < per_cluster; ++i) {
      const Index row = c * per_cluster + i;
      for (Index k = 0; k < dims; ++k) m(row, k) = g(rng) + (k == c ? separation : 0.0);
      labels.push_back(c);
    }
  }
  return m;
}

}  // namespace

TEST_CASE("weighted matrix and distances") {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int trial = 0; trial < 30; ++trial) {
    Matrix m(12, 5);
    for (Index i = 0; i < m.size(); ++i) m.data()[i] = u(rng);
    Vector w = Vector::NullaryExpr(5, [&] { return std::abs(u(rng)); });
    w /= w.sum();
    Matrix scaled = m;
    for (Index i = 0; i < m.rows(); ++i)
      for (Index k = 0; k < 5; ++k) scaled(i, k) = m(i, k) * w[k];
    const Matrix d = squared_distances(weighted_matrix(m, w));
    const Matrix oracle = oracle::squared_distances(scaled);
    CHECK((d - oracle).cwiseAbs().maxCoeff() <= 1e-12);
  }

  Matrix m(3, 2);
  m << 0, 5, 1, -2, 3, 7;
  const Matrix only0 = squared_distances(weighted_matrix(m, (Vector(2) << 1, 0).finished()));
  CHECK(only0(0, 2) == 9.0);
  CHECK(only0(0, 1) == 1.0);
  const Matrix raw = squared_distances(m);
  const Matrix uni = squared_distances(weighted_matrix(m, Vector::Constant(2, 0.5)));
  CHECK((uni * 4.0 - raw).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("perplexity calibration") {
  SUBCASE("equidistant neighbours are uniform") {
    const Bandwidth b = perplexity_calibration(Vector::Constant(9, 2.5), 5);
    CHECK(b.probabilities.isApproxToConstant(1.0 / 9.0));
    CHECK(b.entropy_bits == doctest::Approx(std::log2(9.0)).epsilon(1e-12));
  }
  SUBCASE("near neighbour dominates at perplexity 2") {
    Vector d = Vector::Constant(20, 100.0);
    d[0] = 1.0;
    const Bandwidth b = perplexity_calibration(d, 2);
    // direct evaluation at the returned precision
    const Vector e = (-b.beta * d.array()).exp();
    CHECK(e[0] / e.sum() >= 0.5);
    CHECK(b.probabilities[0] >= 0.5);
  }
  SUBCASE("random rows reach the target entropy") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.1, 50);
    for (int trial = 0; trial < 100; ++trial) {
      Vector d = Vector::NullaryExpr(40, [&] { return u(rng); });
      const double perp = 2.0 + 10.0 * std::uniform_real_distribution<double>(0, 1)(rng);
      const Bandwidth b = perplexity_calibration(d, perp);
      const Vector p = b.probabilities;
      double h = 0;
      for (Index j = 0; j < p.size(); ++j)
        if (p[j] > 0) h -= p[j] * std::log2(p[j]);
      CHECK(std::abs(h - std::log2(perp)) <= 1e-5);
      CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
      CHECK(b.steps <= 50);
    }
  }
}

TEST_CASE("joint affinities are symmetric and normalised") {
  std::vector<int> labels;
  const Matrix m = planted_clusters(10, 4, 5, 2, labels);
  const Matrix p = joint_affinities(m, 8);
  CHECK((p - p.transpose()).cwiseAbs().maxCoeff() == 0.0);
  CHECK(p.sum() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(p.diagonal().isZero(0.0));
  CHECK(p.minCoeff() >= 0.0);
}

TEST_CASE("effective perplexity") {
  CHECK(effective_perplexity(30, 60) == doctest::Approx(59.0 / 3.0));
  CHECK(effective_perplexity(5, 1000) == 5.0);
  CHECK(effective_perplexity(30, 3) == 1.0);
}

TEST_CASE("tsne: planted clusters, determinism, KL trace") {
  std::vector<int> labels;
  const Matrix m = planted_clusters(20, 10, 10, 42, labels);
  EmbeddingConfig cfg;
  cfg.seed = 5;
  std::vector<int> seen;
  const Embedding e = embed(m, cfg, [&](int it, double) { seen.push_back(it); });
  REQUIRE(e.coords.rows() == 60);
  REQUIRE(e.coords.cols() == 2);
  CHECK(e.coords.allFinite());
  CHECK(oracle::purity(oracle::kmeans(e.coords, 3), labels, 3) >= 0.9);

  REQUIRE(e.kl_trace.size() == 20);
  CHECK(e.kl_trace.front().iteration == 50);
  CHECK(e.kl_trace.back().iteration == 1000);
  CHECK(seen.size() == e.kl_trace.size());
  double post_exaggeration = 0;
  for (const auto& c : e.kl_trace)
    if (c.iteration > cfg.exaggeration_iterations) {
      post_exaggeration = c.kl;
      break;
    }
  CHECK(e.kl_trace.back().kl <= post_exaggeration);
  CHECK(e.kl_trace.back().kl == doctest::Approx(kl_divergence(joint_affinities(m, effective_perplexity(cfg.perplexity, 60)), e.coords)));

  const Embedding again = embed(m, cfg);
  CHECK(again.coords == e.coords);
  cfg.seed = 6;
  CHECK(embed(m, cfg).coords != e.coords);
}

TEST_CASE("tsne: input errors") {
  EmbeddingConfig cfg;
  auto code = [&](const Matrix& m) {
    try {
      embed(m, cfg);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code(Matrix::Random(2, 3)) == ErrorCode::TooFewPoints);
  CHECK(code(Matrix::Ones(10, 3)) == ErrorCode::DegenerateInput);
  cfg.perplexity = 1;
  CHECK(code(Matrix::Random(10, 3)) == ErrorCode::InvalidConfig);
}

TEST_CASE("pca: planar data keeps pairwise distances") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> g(0, 1);
  const Index dims = 7;
  Matrix basis = Matrix::NullaryExpr(dims, 2, [&] { return g(rng); });
  Eigen::HouseholderQR<Matrix> qr(basis);
  const Matrix q = qr.householderQ() * Matrix::Identity(dims, 2);
  Matrix plane(50, 2);
  for (Index i = 0; i < plane.size(); ++i) plane.data()[i] = 3 * g(rng);
  const Vector offset = Vector::NullaryExpr(dims, [&] { return g(rng); });
  const Matrix m = (plane * q.transpose()).rowwise() + offset.transpose();

  EmbeddingConfig cfg;
  cfg.algorithm = Algorithm::pca;
  const Embedding e = embed(m, cfg);
  CHECK(e.kl_trace.empty());
  const Matrix dh = oracle::squared_distances(m).cwiseSqrt();
  const Matrix dl = oracle::squared_distances(e.coords).cwiseSqrt();
  CHECK((dh - dl).cwiseAbs().maxCoeff() <= 1e-6);

  // components come from the covariance eigendecomposition
  const Matrix centered = m.rowwise() - m.colwise().mean();
  Eigen::SelfAdjointEigenSolver<Matrix> es(centered.transpose() * centered);
  const Vector top = es.eigenvectors().col(dims - 1);
  const Vector col0 = centered * top;
  CHECK(std::abs(std::abs(col0.dot(e.coords.col(0))) - col0.squaredNorm()) <= 1e-6 * col0.squaredNorm());
}

TEST_CASE("pca sign convention") {
  Matrix m(4, 3);
  m << 1, 0, 0, -1, 0, 0, 0, 0.5, 0, 0, -0.5, 0;
  const Matrix a = pca_project(m);
  const Matrix b = pca_project(-m);
  CHECK((a + b).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("config validation, hashing and table output") {
  EmbeddingConfig a, b;
  CHECK(a.hash() == b.hash());
  b.seed = 2;
  CHECK(a.hash() != b.hash());
  b = a;
  b.iterations = 0;
  CHECK_THROWS_AS(b.validate(), Error);
  Matrix c(2, 2);
  c << 1, 2, 3.5, -4;
  CHECK(embedding_table({"a", "b"}, c) == "id,x,y\na,1,2\nb,3.5,-4\n");
}
