#include "semaxis/error.hpp"
#include "semaxis/lasso.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace semaxis;

TEST_CASE("contains: square with boundary") {
  const Polygon sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(contains(sq, {1, 1}));
  CHECK(!contains(sq, {3, 1}));
  CHECK(contains(sq, {2, 1}));
  CHECK(contains(sq, {0, 0}));
  CHECK(contains(sq, {1, 2}));
}

TEST_CASE("contains: self-intersecting bow tie uses even-odd") {
  const Polygon star{{0, 0}, {4, 4}, {4, 0}, {0, 4}};
  CHECK(contains(star, {1, 2}));
  CHECK(contains(star, {3, 2}));
  CHECK(!contains(star, {2, 0.5}));
}

TEST_CASE("contains: random polygons against an independent even-odd oracle") {
  std::mt19937_64 rng(1234);
  std::uniform_real_distribution<double> u(-10, 10);
  int inside = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    Polygon poly;
    const int n = 3 + static_cast<int>(rng() % 10);
    for (int k = 0; k < n; ++k) poly.emplace_back(u(rng), u(rng));
    const Point2 p(u(rng), u(rng));
    const bool got = contains(poly, p);
    CHECK(got == oracle::inside(poly, p.x(), p.y()));
    inside += got;
  }
  CHECK(inside > 100);
}

TEST_CASE("lasso select and errors") {
  Matrix coords(4, 2);
  coords << 0.5, 0.5, 5, 5, 1, 0.2, -1, 0;
  const IdList ids{"a", "b", "c", "d"};
  const Polygon tri{{0, 0}, {2, 0}, {0, 2}};
  CHECK(lasso_select(coords, ids, tri) == IdList{"a", "c"});
  auto code = [](const Polygon& p) {
    try {
      validate_polygon(p);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  CHECK(code({{0, 0}, {1, 1}}) == ErrorCode::InvalidPolygon);
  CHECK(code({{0, 0}, {1, 1}, {std::nan(""), 0}}) == ErrorCode::InvalidPolygon);
}

TEST_CASE("vertex centroid") {
  const Point2 c = vertex_centroid({{0, 0}, {2, 0}, {0, 2}});
  CHECK(c.x() == doctest::Approx(2.0 / 3.0));
  CHECK(c.y() == doctest::Approx(0.667).epsilon(1e-3));
}
