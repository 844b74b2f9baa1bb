#include "semaxis/error.hpp"
#include "semaxis/layout.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace semaxis;

TEST_CASE("deoverlap: single bead stays on its anchor") {
  const BeadLayout l = deoverlap(Vector::Constant(1, 42.0), Vector::Constant(1, 6.0));
  CHECK(l.x[0] == 42.0);
  CHECK(l.y[0] == 0.0);
}

TEST_CASE("deoverlap: coincident anchors separate") {
  const BeadLayout l = deoverlap(Vector::Constant(2, 10.0), Vector::Constant(2, 5.0));
  const double dist = std::hypot(l.x[0] - l.x[1], l.y[0] - l.y[1]);
  CHECK(dist >= 9.5);
  for (Index i = 0; i < 2; ++i) CHECK(std::abs(l.x[i] - 10.0) <= 5.0);
}

TEST_CASE("deoverlap: well separated beads do not move") {
  const Vector anchors = (Vector(4) << 0, 30, 61, 100).finished();
  const BeadLayout l = deoverlap(anchors, (Vector(4) << 5, 7, 3, 6).finished());
  CHECK(l.y.isZero(0.0));
  CHECK((l.x - anchors).cwiseAbs().maxCoeff() <= 1e-3);
}

TEST_CASE("deoverlap: random crowds") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> pos(0, 300), rad(3, 12);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 40 + static_cast<Index>(rng() % 60);
    const Vector anchors = Vector::NullaryExpr(n, [&] { return pos(rng); });
    const Vector radii = Vector::NullaryExpr(n, [&] { return rad(rng); });
    const BeadLayout l = deoverlap(anchors, radii);
    const double rmax = radii.maxCoeff();
    CHECK(l.max_overlap <= 0.5);
    CHECK(max_pairwise_overlap(l.x, l.y, l.r) == l.max_overlap);
    CHECK((l.x - anchors).cwiseAbs().maxCoeff() <= rmax + 1e-12);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j)
        if (anchors[j] - anchors[i] > 2 * rmax) CHECK(l.x[i] < l.x[j]);
    const BeadLayout again = deoverlap(anchors, radii);
    CHECK(again.x == l.x);
    CHECK(again.y == l.y);
  }
}

TEST_CASE("deoverlap: input validation") {
  CHECK_THROWS_AS(deoverlap(Vector::Zero(2), Vector::Ones(3)), Error);
  CHECK_THROWS_AS(deoverlap(Vector::Zero(2), -Vector::Ones(2)), Error);
}

TEST_CASE("bin positions") {
  const BinAssignment a = bin_positions((Vector(3) << 0, 0.55, 1.0).finished(), 10);
  CHECK(a.bin == std::vector<Index>{0, 5, 9});
  CHECK(a.stack == std::vector<Index>{0, 0, 0});

  const BinAssignment eq = bin_positions(Vector::Constant(3, 2.0), 10, {"c", "a", "b"});
  CHECK(eq.bin == std::vector<Index>{0, 0, 0});
  CHECK(eq.stack == std::vector<Index>{2, 0, 1});

  std::mt19937_64 rng(77);
  std::uniform_int_distribution<int> u(0, 30);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 1 + static_cast<Index>(rng() % 50);
    const Index bins = 1 + static_cast<Index>(rng() % 20);
    const Vector anchors = Vector::NullaryExpr(n, [&] { return 0.1 * u(rng); });
    IdList ids;
    for (Index i = 0; i < n; ++i) ids.push_back("id" + std::to_string(rng() % 100));
    const BinAssignment got = bin_positions(anchors, bins, ids);
    const oracle::Bins want = oracle::bins(anchors, bins, ids);
    CHECK(got.bin == want.bin);
    CHECK(got.stack == want.stack);
  }
}
