#include <doctest.h>

#include <cmath>

#include "ncm/rand_lab.hpp"
#include "ncm/rng.hpp"

using namespace ncm;

namespace {

// Independent Monte Carlo estimate of the probability that 4 uniform points
// in a square are in convex position, via the triangle test: they are not
// convex iff one point falls inside the triangle of the other three.
double independent_p4(long trials, std::uint64_t seed) {
  Rng rng(seed);
  auto tri_contains = [](double ax, double ay, double bx, double by, double cx,
                         double cy, double px, double py) {
    auto s = [](double ox, double oy, double ux, double uy, double vx,
                double vy) {
      return (ux - ox) * (vy - oy) - (uy - oy) * (vx - ox);
    };
    const double d1 = s(ax, ay, bx, by, px, py);
    const double d2 = s(bx, by, cx, cy, px, py);
    const double d3 = s(cx, cy, ax, ay, px, py);
    return (d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0);
  };
  long convex = 0;
  for (long t = 0; t < trials; ++t) {
    double x[4], y[4];
    for (int i = 0; i < 4; ++i) {
      x[i] = rng.unit();
      y[i] = rng.unit();
    }
    bool inside = false;
    for (int i = 0; i < 4 && !inside; ++i) {
      const int a = (i + 1) % 4, b = (i + 2) % 4, c = (i + 3) % 4;
      if (tri_contains(x[a], y[a], x[b], y[b], x[c], y[c], x[i], y[i]))
        inside = true;
    }
    if (!inside) ++convex;
  }
  return static_cast<double>(convex) / static_cast<double>(trials);
}

}  // namespace

TEST_CASE("sampling is deterministic and in general position") {
  const SampleRegion disk = SampleRegion::disk();
  const PointSet a = sample_points(disk, 500, 11);
  const PointSet b = sample_points(disk, 500, 11);
  const PointSet c = sample_points(disk, 500, 12);
  REQUIRE(a.size() == 500);
  bool same = true, differs = false;
  for (int i = 0; i < 500; ++i) {
    if (!(a[i] == b[i])) same = false;
    if (!(a[i] == c[i])) differs = true;
  }
  CHECK(same);
  CHECK(differs);
  CHECK(a.is_general_position());
  for (const Point& p : a.points())
    CHECK(Int128(p.x) * p.x + Int128(p.y) * p.y <=
          Int128(kSampleGrid) * kSampleGrid);
}

TEST_CASE("too-coarse regions are rejected") {
  const SampleRegion tiny = SampleRegion::polygon(
      {{0, 0}, {50, 0}, {50, 50}, {0, 50}});
  CHECK_NOTHROW(sample_points(tiny, 5, 1));
  CHECK_THROWS_AS(sample_points(tiny, 40, 1), Error);
  CHECK_THROWS_AS(SampleRegion::polygon({{0, 0}, {1, 0}, {2, 0}}), Error);
}

TEST_CASE("three points are always in convex position") {
  const ExperimentReport rep =
      convex_position_probability(SampleRegion::square(), 3, 50, 5);
  CHECK(rep.aggregates.at("p_hat") == 1.0);
}

TEST_CASE("square 4-point convexity agrees with the independent estimator") {
  // Frozen exact value 25/36 = 0.69444...; both estimators must agree with
  // it within Monte Carlo noise at 40000 trials (3 sigma < 0.008).
  const double exact = 25.0 / 36.0;
  const ExperimentReport rep =
      convex_position_probability(SampleRegion::square(), 4, 40000, 2024);
  CHECK(rep.aggregates.at("p_hat") == doctest::Approx(exact).epsilon(0.02));
  const double indep = independent_p4(40000, 777);
  CHECK(indep == doctest::Approx(exact).epsilon(0.02));
  CHECK(rep.aggregates.at("p_hat") == doctest::Approx(indep).epsilon(0.03));
  CHECK(rep.aggregates.at("normalized") ==
        doctest::Approx(16.0 * std::pow(rep.aggregates.at("p_hat"), 0.25)));
}

TEST_CASE("convexprob rejects out-of-range n") {
  CHECK_THROWS_AS(
      convex_position_probability(SampleRegion::square(), 2, 10, 1), Error);
  CHECK_THROWS_AS(
      convex_position_probability(SampleRegion::square(), 13, 10, 1), Error);
}

TEST_CASE("empty k-gon scan on hand-built sets") {
  // convex quadrilateral: every triangle is empty
  const PointSet quad = PointSet::make({{0, 0}, {10, 1}, {11, 12}, {1, 10}});
  const EmptyKgonResult tri = empty_kgon_scan(quad, 3);
  CHECK(tri.found);
  CHECK(tri.min_interior == 0);
  // triangle plus an interior point: no 4 points in convex position at all
  const PointSet tri4 = PointSet::make({{0, 0}, {40, 1}, {5, 37}, {12, 10}});
  const EmptyKgonResult four = empty_kgon_scan(tri4, 4);
  CHECK_FALSE(four.found);
  CHECK(four.min_interior == -1);
  // ... but it has an empty triangle avoiding the leftover vertex
  const EmptyKgonResult tri_in = empty_kgon_scan(tri4, 3);
  CHECK(tri_in.found);
  CHECK(tri_in.min_interior == 0);
  CHECK_THROWS_AS(empty_kgon_scan(quad, 2), Error);
  const PointSet big = sample_points(SampleRegion::square(), 50, 3);
  CHECK_THROWS_AS(empty_kgon_scan(big, 25), Error);  // C(50,25) guard
}

TEST_CASE("hull count is exactly 3 for triangles") {
  const ExperimentReport rep =
      hull_count_expectation(SampleRegion::square(), 3, 30, 9);
  CHECK(rep.aggregates.at("mean_hull") == 3.0);
  CHECK(rep.aggregates.at("per_log2_n") ==
        doctest::Approx(3.0 / std::log2(3.0)));
}

TEST_CASE("default removal size formula") {
  // ceil(n + n / (3 log2 2n)), frozen spot values
  CHECK(default_removal_size(8) == 9);
  CHECK(default_removal_size(32) == 34);
  CHECK(default_removal_size(2) > 2);
}

TEST_CASE("resilience with at most n-1 removals always succeeds") {
  for (RemovalModel model :
       {RemovalModel::Uniform, RemovalModel::SpanningTree}) {
    const ExperimentReport rep = resilience_experiment(
        SampleRegion::square(), 8, model, 30, 21, /*removal_size=*/7);
    INFO(removal_model_name(model));
    CHECK(rep.aggregates.at("success_rate") == 1.0);
    CHECK(rep.aggregates.at("recursions_ok_rate") == 1.0);
    CHECK(rep.trials == 30);
  }
}

TEST_CASE("a full star always blocks") {
  // 2n-1 removed edges covering one vertex leave it unmatchable.
  const ExperimentReport rep =
      resilience_experiment(SampleRegion::square(), 4, RemovalModel::Star, 20,
                            33, /*removal_size=*/7);
  CHECK(rep.aggregates.at("success_rate") == 0.0);
}

TEST_CASE("odd split statistics block at oracle-checkable sizes") {
  const ExperimentReport rep =
      odd_split_statistics(SampleRegion::square(), 6, 40, 17);
  CHECK(rep.aggregates.at("blocking_rate") == 1.0);
  CHECK(rep.aggregates.at("mean_odd") > 0.0);
  for (const auto& o : rep.outcomes)
    CHECK(o.at("odd") + o.at("removal_size") == 11.0);  // 2n-1 split
}

TEST_CASE("experiment reports are reproducible from the seed") {
  const ExperimentReport a =
      hull_count_expectation(SampleRegion::disk(), 64, 25, 404);
  const ExperimentReport b =
      hull_count_expectation(SampleRegion::disk(), 64, 25, 404);
  CHECK(a.aggregates == b.aggregates);
  CHECK(a.outcomes == b.outcomes);
}
