#include <doctest.h>

#include <vector>

#include "ncm/lattice.hpp"
#include "ncm/rng.hpp"

using namespace ncm;

namespace {

ConvexBody square_body(const Rat& lo, const Rat& hi) {
  return ConvexBody::make(
      {{lo, lo}, {hi, lo}, {hi, hi}, {lo, hi}});
}

// Regular-ish octagon approximating a disk of radius r around c, with
// rational vertices taken from 5-12-13 style directions.
ConvexBody octagon_body(const Rat& cx, const Rat& cy, const Rat& r) {
  const std::vector<std::pair<Rat, Rat>> dirs = {
      {1, 0},          {Rat(4, 5), Rat(3, 5)},   {0, 1},
      {Rat(-3, 5), Rat(4, 5)},  {-1, 0},         {Rat(-4, 5), Rat(-3, 5)},
      {0, -1},         {Rat(3, 5), Rat(-4, 5)}};
  std::vector<RatPoint> verts;
  for (const auto& [dx, dy] : dirs)
    verts.push_back({cx + r * dx, cy + r * dy});
  return ConvexBody::make(verts);
}

// Exact convex hull of rational points (Andrew's monotone chain), used as an
// independent random-body factory for property tests.
std::vector<RatPoint> rat_hull(std::vector<RatPoint> pts) {
  std::sort(pts.begin(), pts.end(), [](const RatPoint& a, const RatPoint& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return {};
  std::vector<RatPoint> hull;
  auto build = [&](auto begin, auto end) {
    const size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= base + 2 &&
             rat_cross(hull[hull.size() - 2], hull.back(), *it) <= 0)
        hull.pop_back();
      hull.push_back(*it);
    }
    hull.pop_back();
  };
  build(pts.begin(), pts.end());
  build(pts.rbegin(), pts.rend());
  return hull;
}

ConvexBody random_body(Rng& rng, const Rat& span_num, long span_den) {
  while (true) {
    std::vector<RatPoint> pts;
    const int n = 4 + static_cast<int>(rng.below(8));
    for (int i = 0; i < n; ++i)
      pts.push_back({span_num * Rat(static_cast<long>(rng.below(10007)), 10007 * span_den),
                     span_num * Rat(static_cast<long>(rng.below(10007)), 10007 * span_den)});
    const std::vector<RatPoint> hull = rat_hull(pts);
    if (hull.size() < 3) continue;
    try {
      return ConvexBody::make(hull);
    } catch (const Error&) {
    }
  }
}

}  // namespace

TEST_CASE("rounding to the nearest integer") {
  CHECK(rat_round(Rat(7, 2)) == 4);    // half rounds up
  CHECK(rat_round(Rat(-7, 2)) == -3);  // toward +inf
  CHECK(rat_round(Rat(10, 4)) == 3);
  CHECK(rat_round(Rat(1, 3)) == 0);
  CHECK(rat_round(Rat(-1, 3)) == 0);
  CHECK(rat_round(Rat(5)) == 5);
  CHECK(rat_round(Rat(-5)) == -5);
}

TEST_CASE("convex body area, diameter, containment") {
  const ConvexBody sq = square_body(0, Rat(1, 5));
  CHECK(sq.area() == Rat(1, 25));
  CHECK(sq.diameter_sq() == Rat(2, 25));
  CHECK(sq.contains({Rat(1, 10), Rat(1, 10)}));
  CHECK(sq.contains({0, 0}));  // boundary is inside (weak)
  CHECK_FALSE(sq.contains({Rat(1, 4), Rat(1, 10)}));
  CHECK_THROWS_AS(ConvexBody::make({{0, 0}, {1, 0}}), Error);
  CHECK_THROWS_AS(ConvexBody::make({{0, 0}, {1, 0}, {2, 0}}), Error);
  // clockwise input is rejected rather than silently reversed
  CHECK_THROWS_AS(ConvexBody::make({{0, 0}, {0, 1}, {1, 0}}), Error);
}

TEST_CASE("lattice triangle constructor validates the grid") {
  const long M = 100;
  CHECK_NOTHROW(LatticeTriangle::make(
      M, {Rat(1, 100), 0}, {Rat(3, 100), 0}, {0, Rat(7, 100)}));
  CHECK_THROWS_AS(LatticeTriangle::make(
                      M, {Rat(1, 3), 0}, {1, 0}, {0, 1}),
                  Error);
  CHECK_THROWS_AS(LatticeTriangle::make(M, {0, 0}, {Rat(1, 100), 0},
                                        {Rat(2, 100), 0}),
                  Error);
  // orientation is normalized to CCW
  const LatticeTriangle t = LatticeTriangle::make(
      M, {0, 0}, {0, Rat(1, 100)}, {Rat(1, 100), 0});
  CHECK(t.area() > 0);
}

TEST_CASE("bounding triangle on a generic square body") {
  const ConvexBody K = square_body(0, Rat(1, 5));
  const long M = 10000;
  const LatticeTriangle T = bounding_triangle(K, M);
  CHECK(T.contains(K));
  CHECK(T.area() <= 64 * K.area());  // S = 0.04 > 100/M
  for (const RatPoint& p : T.v) {
    CHECK(denominator(Rat(p.x * M)) == 1);
    CHECK(denominator(Rat(p.y * M)) == 1);
  }
}

TEST_CASE("bounding triangle on a thin small-area body") {
  // Long thin sliver: area 5e-5 < 100/M for M = 10^6, padding path.
  const ConvexBody K = ConvexBody::make({{0, 0},
                                         {Rat(1, 2), Rat(-1, 10000)},
                                         {Rat(1, 2), Rat(1, 10000)},
                                         {0, Rat(1, 10000)}});
  const long M = 1000000;
  CHECK(K.area() < Rat(100, M));
  const LatticeTriangle T = bounding_triangle(K, M);
  CHECK(T.contains(K));
  CHECK(T.area() <= Rat(6400, M));
  CHECK(T.diameter_sq() <= 144);
}

TEST_CASE("bounding triangle preconditions") {
  const ConvexBody K = square_body(0, Rat(1, 5));
  CHECK_THROWS_AS(bounding_triangle(K, 100), Error);  // M too small
  const ConvexBody wide = square_body(0, 2);          // diameter > 1
  CHECK_THROWS_AS(bounding_triangle(wide, 10000), Error);
}

TEST_CASE("contained triangle on a square body") {
  const ConvexBody K = square_body(0, Rat(1, 2));
  const long M = 1000;
  const LatticeTriangle T = contained_triangle(K, M);
  for (const RatPoint& p : T.v) CHECK(K.contains(p));
  CHECK(T.area() >= K.area() / 100);
}

TEST_CASE("contained triangle on a disk-like body") {
  const ConvexBody K = octagon_body(Rat(1, 2), Rat(1, 2), Rat(2, 5));
  const long M = 10000;
  const LatticeTriangle T = contained_triangle(K, M);
  for (const RatPoint& p : T.v) CHECK(K.contains(p));
  CHECK(T.area() >= K.area() / 100);
}

TEST_CASE("contained triangle precondition: area must beat 100/M") {
  const ConvexBody tiny = square_body(0, Rat(1, 100));
  CHECK_THROWS_AS(contained_triangle(tiny, 1000), Error);  // 1e-4 <= 0.1
}

TEST_CASE("bounding square holds the bounding triangle of inner bodies") {
  const ConvexBody gamma = octagon_body(Rat(1, 2), Rat(1, 2), Rat(9, 20));
  const long M = 10000;
  const LatticeSquare sq = bounding_square(gamma, M);
  CHECK(sq.side == 100);
  CHECK(denominator(Rat(sq.lower_left.x * M)) == 1);
  const ConvexBody inner = octagon_body(Rat(1, 2), Rat(1, 2), Rat(1, 4));
  const LatticeTriangle T = bounding_triangle(inner, M);
  CHECK(sq.contains(T));
}

TEST_CASE("triangle count formula and growth") {
  // frozen small value: M = 1 gives C(101^2, 3)
  const BigInt pts = BigInt(101) * 101;
  CHECK(lattice_triangle_count(1) == pts * (pts - 1) * (pts - 2) / 6);
  CHECK(lattice_triangle_count(10) > lattice_triangle_count(1));
  // Theta(M^6): ratio between M and 10M is within [10^6/2, 2*10^6]
  const BigInt a = lattice_triangle_count(100);
  const BigInt b = lattice_triangle_count(1000);
  CHECK(b / a >= 500000);
  CHECK(b / a <= 2000000);
}

TEST_CASE("random bodies satisfy every exact contract") {
  Rng rng(301);
  for (long M : {1000L, 10000L}) {
    for (int trial = 0; trial < 60; ++trial) {
      const ConvexBody K = random_body(rng, Rat(7, 10), 1);
      const Rat S = K.area();
      const LatticeTriangle T = bounding_triangle(K, M);
      CHECK(T.contains(K));
      if (S > Rat(100, M)) {
        CHECK(T.area() <= 64 * S);
        const LatticeTriangle In = contained_triangle(K, M);
        for (const RatPoint& p : In.v) CHECK(K.contains(p));
        CHECK(In.area() >= S / 100);
      } else {
        CHECK(T.area() <= Rat(6400, M));
        CHECK(T.diameter_sq() <= 144);
      }
    }
  }
}
