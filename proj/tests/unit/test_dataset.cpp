#include "semaxis/dataset.hpp"
#include "semaxis/fixtures.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

using namespace semaxis;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

Dataset column(std::initializer_list<double> values) {
  Matrix m(static_cast<Index>(values.size()), 1);
  IdList ids;
  Index i = 0;
  for (double v : values) {
    m(i, 0) = v;
    ids.push_back("p" + std::to_string(i++));
  }
  return Dataset(m, ids, {"a"});
}

}  // namespace

TEST_CASE("csv: minimal table") {
  const Dataset d = load_csv("id,math,physics\ns1,80,90\n");
  CHECK(d.size() == 1);
  CHECK(d.dims() == 2);
  CHECK(d.ids() == IdList{"s1"});
  CHECK(d.attributes() == std::vector<std::string>{"math", "physics"});
  CHECK(d.points()(0, 1) == 90.0);
}

TEST_CASE("csv: quoting, BOM, CRLF, named id column") {
  const Dataset d = load_csv("\xEF\xBB\xBFx,\"name, full\",y\r\n1,\"a\"\"b\",2\r\n3,c,4\r\n", {"name, full"});
  CHECK(d.ids() == IdList{"a\"b", "c"});
  CHECK(d.attributes() == std::vector<std::string>{"x", "y"});
  CHECK(d.points()(1, 0) == 3.0);
  CHECK(d.points()(1, 1) == 4.0);
}

TEST_CASE("csv: error paths") {
  CHECK(code_of([] { load_csv("id,a\ns1,1\ns1,2\n"); }) == ErrorCode::DuplicateId);
  CHECK(code_of([] { load_csv("id,a\ns1,abc\n"); }) == ErrorCode::NonNumericCell);
  CHECK(code_of([] { load_csv("id,a\ns1,nan\n"); }) == ErrorCode::NonNumericCell);
  CHECK(code_of([] { load_csv("id,a,b\ns1,1\n"); }) == ErrorCode::RaggedRow);
  CHECK(code_of([] { load_csv("id,a\n"); }) == ErrorCode::EmptyTable);
  CHECK(code_of([] { load_csv("id,a\ns1,1\n", {"key"}); }) == ErrorCode::MissingColumn);
}

TEST_CASE("csv: long format builds slices") {
  const std::string csv =
      "id,period,a,b\n"
      "x,2000,1,2\n"
      "y,2000,3,4\n"
      "x,2005,10,20\n"
      "y,2005,30,40\n";
  CsvOptions o;
  o.period_column = "period";
  const Dataset d = load_csv(csv, o);
  REQUIRE(d.slices().size() == 2);
  CHECK(d.slices()[0].period == "2000");
  CHECK(d.slices()[1].points(1, 1) == 40.0);
  CHECK(d.points()(0, 0) == 11.0);
  CHECK(d.points()(1, 1) == 44.0);

  CHECK(code_of([&] { load_csv(csv + "x,2005,1,1\n", o); }) == ErrorCode::DuplicateId);
  CHECK(code_of([&] { load_csv(csv + "z,2005,1,1\n", o); }) == ErrorCode::RaggedRow);
}

TEST_CASE("fixture: 494 students x 9 subjects") {
  const auto fx = make_student_fixture(494, 60, 3);
  const Dataset d = load_csv(fx.csv);
  CHECK(d.size() == 494);
  CHECK(d.dims() == 9);
  CHECK(fx.science_biased.size() == 60);
  CHECK(fx.humanities_biased.size() == 60);
  for (const auto& id : fx.science_biased) CHECK(d.index_of(id).has_value());
}

TEST_CASE("zscore") {
  const Dataset z = zscore_normalize(column({1, 2, 3}));
  const double s = std::sqrt(2.0 / 3.0);
  CHECK(z.points()(0, 0) == doctest::Approx(-1.0 / s).epsilon(1e-12));
  CHECK(z.points()(0, 0) == doctest::Approx(-1.2247).epsilon(1e-4));
  CHECK(z.points()(1, 0) == 0.0);
  CHECK(z.points()(2, 0) == doctest::Approx(1.2247).epsilon(1e-4));
  CHECK(z.normalization() == Normalization::zscore);

  CHECK(zscore_normalize(column({5, 5, 5})).points().isZero(0.0));
  CHECK(code_of([&] { zscore_normalize(z); }) == ErrorCode::AlreadyNormalized);

  std::mt19937_64 rng(5);
  std::normal_distribution<double> g(40, 9);
  Matrix m(37, 4);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = g(rng);
  IdList ids;
  for (Index i = 0; i < 37; ++i) ids.push_back(std::to_string(i));
  const Matrix out = zscore_normalize(Dataset(m, ids, {"a", "b", "c", "d"})).points();
  for (Index k = 0; k < 4; ++k) {
    const double mean = out.col(k).mean();
    const double var = (out.col(k).array() - mean).square().mean();
    CHECK(std::abs(mean) < 1e-12);
    CHECK(std::abs(std::sqrt(var) - 1.0) < 1e-12);
  }
}

TEST_CASE("minmax") {
  const Dataset s = minmax_scale_0_100(column({2, 4, 6}));
  CHECK(s.points()(0, 0) == 0.0);
  CHECK(s.points()(1, 0) == 50.0);
  CHECK(s.points()(2, 0) == 100.0);
  CHECK(minmax_scale_0_100(column({7, 7})).points().isZero(0.0));

  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-50, 50);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m(20, 1);
    IdList ids;
    for (Index i = 0; i < 20; ++i) {
      m(i, 0) = u(rng);
      ids.push_back(std::to_string(i));
    }
    const Vector out = minmax_scale_0_100(Dataset(m, ids, {"a"})).points().col(0);
    std::vector<Index> by_in(20), by_out(20);
    std::iota(by_in.begin(), by_in.end(), Index{0});
    by_out = by_in;
    std::sort(by_in.begin(), by_in.end(), [&](Index a, Index b) { return m(a, 0) < m(b, 0); });
    std::sort(by_out.begin(), by_out.end(), [&](Index a, Index b) { return out[a] < out[b]; });
    CHECK(by_in == by_out);
    CHECK(out.minCoeff() == 0.0);
    CHECK(out.maxCoeff() == doctest::Approx(100.0).epsilon(1e-14));
  }
}

TEST_CASE("minmax applies per slice") {
  CsvOptions o;
  o.period_column = "t";
  const Dataset d = minmax_scale_0_100(load_csv("id,t,a\nx,1,1\ny,1,3\nx,2,10\ny,2,30\n", o));
  CHECK(d.slices()[1].points(0, 0) == 0.0);
  CHECK(d.slices()[1].points(1, 0) == 100.0);
}

TEST_CASE("weighted score") {
  const Vector p = (Vector(2) << 10, 20).finished();
  CHECK(weighted_score(p, WeightVector((Vector(2) << 0.5, 0.5).finished())) == 15.0);
  CHECK(weighted_score(p, WeightVector((Vector(2) << 1, 0).finished())) == 10.0);

  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const Index dims = 1 + static_cast<Index>(rng() % 12);
    Vector x(dims), w(dims);
    for (Index k = 0; k < dims; ++k) {
      x[k] = 100 * u(rng);
      w[k] = u(rng);
    }
    w /= w.sum();
    double loop = 0;
    for (Index k = 0; k < dims; ++k) loop += x[k] * w[k];
    CHECK(std::abs(weighted_score(x, w) - loop) <= 1e-12 * std::max(1.0, std::abs(loop)));
  }
  CHECK(code_of([&] { weighted_score(p, Vector::Ones(3)); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("weight vector invariants") {
  CHECK(code_of([] { WeightVector((Vector(2) << 0.7, 0.7).finished()); }) == ErrorCode::InvalidWeights);
  CHECK(code_of([] { WeightVector((Vector(2) << 1.2, -0.2).finished()); }) == ErrorCode::InvalidWeights);
  CHECK(WeightVector::uniform(4)[3] == 0.25);
}

TEST_CASE("adjust weight: equal share") {
  const WeightVector w = adjust_weight(WeightVector::uniform(3), 0, 0.5);
  CHECK(w[0] == 0.5);
  CHECK(w[1] == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(w[2] == doctest::Approx(0.25).epsilon(1e-15));

  const WeightVector two = adjust_weight(WeightVector((Vector(2) << 0.5, 0.5).finished()), 0, 0.7);
  CHECK(two[0] == 0.7);
  CHECK(two[1] == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("adjust weight: clamp and reshare") {
  const WeightVector w((Vector(3) << 0.8, 0.15, 0.05).finished());
  const WeightVector out = adjust_weight(w, 0, 0.95);
  CHECK(out[0] == 0.95);
  CHECK(out[1] == doctest::Approx(0.05).epsilon(1e-14));
  CHECK(std::abs(out[1] - 0.05) <= 1e-15);
  CHECK(out[2] == 0.0);
  const Vector oracle = oracle::redistribute(w.values(), 0, 0.95);
  CHECK(out.values() == oracle);
}

TEST_CASE("adjust weight: random sequences against oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    const Index dims = 2 + static_cast<Index>(rng() % 10);
    WeightVector w = WeightVector::uniform(dims);
    for (int step = 0; step < 10; ++step) {
      const Index attr = static_cast<Index>(rng() % dims);
      const double target = u(rng);
      const Vector oracle = oracle::redistribute(w.values(), attr, target);
      w = adjust_weight(w, attr, target);
      CHECK((w.values() - oracle).cwiseAbs().maxCoeff() <= 1e-12);
      CHECK(std::abs(w.values().sum() - 1.0) <= 1e-9);
      CHECK(w.values().minCoeff() >= 0.0);
    }
  }
}

TEST_CASE("adjust weight: errors") {
  CHECK(code_of([] { adjust_weight(WeightVector::uniform(3), 3, 0.2); }) == ErrorCode::IndexOutOfRange);
  CHECK(code_of([] { adjust_weight(WeightVector::uniform(3), 0, 1.2); }) == ErrorCode::InvalidTarget);
  CHECK(code_of([] { adjust_weight(WeightVector::uniform(1), 0, 0.5); }) == ErrorCode::InvalidTarget);
}

TEST_CASE("coloring score") {
  Matrix m(1, 3);
  m << 10, 20, 99;
  const Dataset d(m, {"a"}, {"x", "y", "z"});
  const WeightVector w((Vector(3) << 0.2, 0.2, 0.6).finished());
  CHECK(coloring_score(d, {0, 1}, w)[0] == doctest::Approx(15.0).epsilon(1e-14));
  CHECK(coloring_score(d, {2}, w)[0] == 99.0);
  CHECK(coloring_score(d, {0, 1, 2}, w)[0] == doctest::Approx(weighted_score(Vector(m.row(0).transpose()), w)));
  CHECK(code_of([&] { coloring_score(d, {}, w); }) == ErrorCode::EmptyCheckSet);
  CHECK(code_of([&] { coloring_score(d, {3}, w); }) == ErrorCode::IndexOutOfRange);
}

TEST_CASE("display radii") {
  const Vector r = display_radii((Vector(3) << 0, 5, 10).finished(), 3, 12);
  CHECK(r[0] == 3.0);
  CHECK(r[1] == 7.5);
  CHECK(r[2] == 12.0);
  CHECK(display_radii(Vector::Constant(3, 4.0)).isApproxToConstant(7.5));
}
