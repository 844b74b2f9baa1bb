#include "semaxis/fixtures.hpp"
#include "semaxis/ranking.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

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

Dataset random_dataset(Index n, Index dims, std::mt19937_64& rng, int levels = 0) {
  std::uniform_real_distribution<double> u(0, 100);
  Matrix m(n, dims);
  for (Index i = 0; i < m.size(); ++i) m.data()[i] = levels ? std::floor(u(rng) / 100 * levels) : u(rng);
  IdList ids;
  std::vector<std::string> attrs;
  for (Index i = 0; i < n; ++i) ids.push_back("e" + std::to_string(1000 + (i * 37) % n));
  for (Index k = 0; k < dims; ++k) attrs.push_back("a" + std::to_string(k));
  return Dataset(m, ids, attrs);
}

}  // namespace

TEST_CASE("scale positions") {
  ScaleContext ctx;
  ctx.attr_min = 0;
  ctx.attr_max = 100;
  CHECK(scale_position(25, ScaleKind::local_value, ctx) == 0.25);
  ctx.n = 11;
  ctx.rank = 1;
  CHECK(scale_position(0, ScaleKind::local_rank, ctx) == 1.0);
  ctx.rank = 11;
  CHECK(scale_position(0, ScaleKind::local_rank, ctx) == 0.0);
  ctx.attr_min = ctx.attr_max = 5;
  CHECK(scale_position(5, ScaleKind::local_value, ctx) == 0.5);
}

TEST_CASE("global scale compresses a narrow column into a band") {
  Matrix m(50, 2);
  for (Index i = 0; i < 50; ++i) {
    m(i, 0) = 100.0 * i / 49.0;
    m(i, 1) = 40.0 + 10.0 * ((i * 7) % 50) / 49.0;
  }
  const Matrix local = scale_positions(m, ScaleKind::local_value);
  const Matrix global = scale_positions(m, ScaleKind::global_value);
  CHECK(local.col(1).maxCoeff() - local.col(1).minCoeff() == doctest::Approx(1.0));
  CHECK(global.col(1).maxCoeff() - global.col(1).minCoeff() == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("scales are bounded and monotone") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const Dataset d = random_dataset(25, 4, rng, trial % 2 ? 6 : 0);
    for (ScaleKind kind : {ScaleKind::local_value, ScaleKind::global_value, ScaleKind::local_rank}) {
      const Matrix pos = scale_positions(d.points(), kind);
      CHECK(pos.minCoeff() >= 0.0);
      CHECK(pos.maxCoeff() <= 1.0);
      for (Index k = 0; k < d.dims(); ++k)
        for (Index i = 0; i < d.size(); ++i)
          for (Index j = 0; j < d.size(); ++j) {
            if (d.points()(i, k) < d.points()(j, k)) CHECK(pos(i, k) <= pos(j, k));
            if (d.points()(i, k) == d.points()(j, k)) CHECK(pos(i, k) == pos(j, k));
          }
    }
  }
}

TEST_CASE("competition ranks") {
  const auto r = attribute_ranks((Vector(5) << 3, 9, 3, 1, 9).finished());
  CHECK(r == std::vector<Index>{3, 1, 3, 5, 1});
}

TEST_CASE("filters: AND semantics") {
  std::mt19937_64 rng(9);
  const Dataset d = random_dataset(40, 3, rng);
  CHECK(apply_filters({}, d, ScaleKind::local_value) == d.ids());
  CHECK(apply_filters({{0, 0.0, 0.3}, {0, 0.6, 1.0}}, d, ScaleKind::local_value).empty());
  CHECK(code_of([&] { apply_filters({{0, 0.5, 0.2}}, d, ScaleKind::local_value); }) == ErrorCode::InvalidFilter);
  CHECK(code_of([&] { apply_filters({{0, -0.1, 0.2}}, d, ScaleKind::local_value); }) == ErrorCode::InvalidFilter);
  CHECK(code_of([&] { apply_filters({{7, 0, 1}}, d, ScaleKind::local_value); }) == ErrorCode::IndexOutOfRange);

  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const ScaleKind kind = static_cast<ScaleKind>(trial % 3);
    const Matrix pos = scale_positions(d.points(), kind);
    std::vector<BrushFilter> filters;
    const int count = 1 + static_cast<int>(rng() % 3);
    std::set<std::string> keep(d.ids().begin(), d.ids().end());
    for (int f = 0; f < count; ++f) {
      double a = u(rng), b = u(rng);
      if (a > b) std::swap(a, b);
      const Index attr = static_cast<Index>(rng() % 3);
      filters.push_back({attr, a, b});
      std::set<std::string> pass;
      for (Index i = 0; i < d.size(); ++i)
        if (pos(i, attr) >= a && pos(i, attr) <= b) pass.insert(d.ids()[i]);
      std::set<std::string> both;
      std::set_intersection(keep.begin(), keep.end(), pass.begin(), pass.end(), std::inserter(both, both.end()));
      keep = both;
    }
    const IdList got = apply_filters(filters, d, kind);
    CHECK(std::set<std::string>(got.begin(), got.end()) == keep);
    CHECK(got.size() == keep.size());
  }
}

TEST_CASE("weighted ranking") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Dataset d = random_dataset(30, 4, rng, trial % 2 ? 4 : 0);
    Vector w = Vector::NullaryExpr(4, [&] { return std::uniform_real_distribution<double>(0, 1)(rng); });
    w /= w.sum();
    const RankingResult r = weighted_ranking(d, WeightVector(w));
    std::vector<std::pair<double, std::string>> oracle;
    for (Index i = 0; i < d.size(); ++i) {
      double s = 0;
      for (Index k = 0; k < 4; ++k) s += d.points()(i, k) * w[k];
      oracle.emplace_back(-s, d.ids()[i]);
    }
    std::sort(oracle.begin(), oracle.end());
    for (std::size_t k = 0; k < oracle.size(); ++k) {
      CHECK(r.order[k] == oracle[k].second);
      CHECK(std::abs(r.scores[k] + oracle[k].first) <= 1e-12);
    }
  }

  const Dataset flat(Matrix::Ones(3, 2), {"c", "a", "b"}, {"x", "y"});
  CHECK(weighted_ranking(flat, WeightVector::uniform(2)).order == IdList{"a", "b", "c"});

  Matrix m(3, 2);
  m << 1, 9, 3, 0, 2, 5;
  const RankingResult one = weighted_ranking(Dataset(m, {"x", "y", "z"}, {"p", "q"}),
                                             WeightVector((Vector(2) << 1, 0).finished()));
  CHECK(one.order == IdList{"y", "z", "x"});
  CHECK(one.rank_of("z") == 2);
  CHECK(ranking_table(one) == "rank,id,score\n1,y,3\n2,z,2\n3,x,1\n");
}

TEST_CASE("time-sliced ranking") {
  Matrix m(3, 2);
  m << 1, 2, 3, 1, 0, 9;
  const Dataset single(m, {"a", "b", "c"}, {"x", "y"}, {{"2019", m}});
  const auto w = WeightVector::uniform(2);
  const auto sliced = time_sliced_ranking(single, w, {});
  REQUIRE(sliced.size() == 1);
  CHECK(sliced[0].ranking.order == weighted_ranking(single, w).order);
  CHECK(sliced_ranking_table(sliced).rfind("period,rank,id,score\n2019,1,c,", 0) == 0);

  CHECK(code_of([&] { time_sliced_ranking(single, w, {"1999"}); }) == ErrorCode::UnknownPeriod);
  CHECK(code_of([&] { time_sliced_ranking(Dataset(m, {"a", "b", "c"}, {"x", "y"}), w, {}); }) ==
        ErrorCode::NoSlices);
}

TEST_CASE("time-sliced ranking: planted riser climbs") {
  const auto fx = make_institution_fixture();
  CsvOptions o;
  o.period_column = "period";
  const Dataset d = load_csv(fx.csv, o);
  Vector w = Vector::Zero(d.dims());
  for (const auto& a : fx.ai_areas) w[*d.attribute_index(a)] = 1.0 / static_cast<double>(fx.ai_areas.size());
  const auto sliced = time_sliced_ranking(d, WeightVector(w), {});
  REQUIRE(sliced.size() == 10);
  Index prev = d.size() + 1;
  for (const auto& s : sliced) {
    const Index r = s.ranking.rank_of(fx.rising_id);
    CHECK(r <= prev);
    prev = r;
  }
  CHECK(prev <= 5);
}
