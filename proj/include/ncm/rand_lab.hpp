#pragma once

#include <cmath>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ncm/blocking.hpp"
#include "ncm/geom.hpp"
#include "ncm/matcher.hpp"
#include "ncm/removal.hpp"
#include "ncm/rng.hpp"

namespace ncm {

// Bounded closed convex sampling region on the integer grid.
class SampleRegion {
 public:
  enum class Kind { Square, Disk, Polygon };

  static SampleRegion square() {
    SampleRegion r;
    r.kind_ = Kind::Square;
    r.lo_ = Point{0, 0};
    r.hi_ = Point{kSampleGrid, kSampleGrid};
    return r;
  }

  static SampleRegion disk() {
    SampleRegion r;
    r.kind_ = Kind::Disk;
    r.radius_ = kSampleGrid;
    r.lo_ = Point{-kSampleGrid, -kSampleGrid};
    r.hi_ = Point{kSampleGrid, kSampleGrid};
    return r;
  }

  static SampleRegion polygon(std::vector<Point> vertices) {
    if (vertices.size() < 3)
      throw Error(ErrorCode::BadInput, "polygon region needs 3+ vertices");
    SampleRegion r;
    r.kind_ = Kind::Polygon;
    r.poly_ = std::move(vertices);
    const size_t m = r.poly_.size();
    for (size_t i = 0; i < m; ++i)
      if (sign(cross(r.poly_[i], r.poly_[(i + 1) % m],
                     r.poly_[(i + 2) % m])) <= 0)
        throw Error(ErrorCode::BadInput, "polygon region must be strictly "
                                         "convex CCW");
    r.lo_ = r.hi_ = r.poly_[0];
    for (const Point& p : r.poly_) {
      r.lo_.x = std::min(r.lo_.x, p.x);
      r.lo_.y = std::min(r.lo_.y, p.y);
      r.hi_.x = std::max(r.hi_.x, p.x);
      r.hi_.y = std::max(r.hi_.y, p.y);
    }
    return r;
  }

  Kind kind() const { return kind_; }
  const Point& lo() const { return lo_; }
  const Point& hi() const { return hi_; }

  bool contains(const Point& p) const {
    switch (kind_) {
      case Kind::Square:
        return p.x >= lo_.x && p.x <= hi_.x && p.y >= lo_.y && p.y <= hi_.y;
      case Kind::Disk:
        return Int128(p.x) * p.x + Int128(p.y) * p.y <=
               Int128(radius_) * radius_;
      case Kind::Polygon: {
        const size_t m = poly_.size();
        for (size_t i = 0; i < m; ++i)
          if (sign(cross(poly_[i], poly_[(i + 1) % m], p)) < 0) return false;
        return true;
      }
    }
    return false;
  }

  // Rough grid-cell count for the collision-pressure guard.
  double cell_estimate() const {
    switch (kind_) {
      case Kind::Square:
        return static_cast<double>(hi_.x - lo_.x) *
               static_cast<double>(hi_.y - lo_.y);
      case Kind::Disk:
        return 3.14159 * static_cast<double>(radius_) *
               static_cast<double>(radius_);
      case Kind::Polygon: {
        double twice = 0;
        const size_t m = poly_.size();
        for (size_t i = 0; i < m; ++i) {
          const Point& a = poly_[i];
          const Point& b = poly_[(i + 1) % m];
          twice += static_cast<double>(a.x) * static_cast<double>(b.y) -
                   static_cast<double>(b.x) * static_cast<double>(a.y);
        }
        return twice / 2;
      }
    }
    return 0;
  }

  std::string name() const {
    switch (kind_) {
      case Kind::Square: return "square";
      case Kind::Disk: return "disk";
      case Kind::Polygon: return "polygon";
    }
    return "?";
  }

 private:
  Kind kind_{Kind::Square};
  Point lo_{}, hi_{};
  Coord radius_{};
  std::vector<Point> poly_;
};

// Point count above which the per-candidate collinearity filter is skipped:
// the full filter costs O(n^3) overall, and on a 2^20 grid the chance of a
// collinear triple at these sizes is far below Monte Carlo noise.
inline constexpr int kCollinearFilterLimit = 2048;

// n i.i.d.-uniform grid points in the region by rejection; duplicates are
// always resampled, and up to kCollinearFilterLimit points collinear
// triples are too, making general position a guarantee rather than an
// expectation.
inline PointSet sample_points(const SampleRegion& region, int n,
                              std::uint64_t seed) {
  if (n < 1) throw Error(ErrorCode::BadInput, "need n >= 1");
  if (region.cell_estimate() < 4.0 * n * n)
    throw Error(ErrorCode::RegionTooSmall, "grid too coarse for n points");
  const bool filter = n <= kCollinearFilterLimit;
  Rng rng(seed);
  std::vector<Point> pts;
  std::set<Point> have;
  long attempts = 0;
  const long cap = 1000L * n + 100000L;
  while (static_cast<int>(pts.size()) < n) {
    if (++attempts > cap)
      throw Error(ErrorCode::RegionTooSmall, "rejection sampling stalled");
    const Point cand{rng.range(region.lo().x, region.hi().x),
                     rng.range(region.lo().y, region.hi().y)};
    if (!region.contains(cand) || have.count(cand)) continue;
    if (filter) {
      bool bad = false;
      for (size_t a = 0; a < pts.size() && !bad; ++a)
        for (size_t b = a + 1; b < pts.size(); ++b)
          if (orientation(pts[a], pts[b], cand) == Orientation::Collinear) {
            bad = true;
            break;
          }
      if (bad) continue;
    }
    have.insert(cand);
    pts.push_back(cand);
  }
  return PointSet::make(std::move(pts));
}

struct ExperimentReport {
  std::string experiment;
  std::map<std::string, double> params;
  std::map<std::string, std::string> text_params;
  std::uint64_t seed{};
  long trials{};
  std::vector<std::map<std::string, double>> outcomes;
  std::map<std::string, double> aggregates;
};

namespace detail {

inline double mean_of(const ExperimentReport& rep, const std::string& key) {
  double sum = 0;
  for (const auto& o : rep.outcomes) sum += o.at(key);
  return rep.outcomes.empty() ? 0 : sum / static_cast<double>(rep.outcomes.size());
}

// 95% half-width, normal approximation.
inline double ci_half(const ExperimentReport& rep, const std::string& key) {
  const size_t t = rep.outcomes.size();
  if (t < 2) return 0;
  const double m = mean_of(rep, key);
  double ss = 0;
  for (const auto& o : rep.outcomes) {
    const double d = o.at(key) - m;
    ss += d * d;
  }
  return 1.96 * std::sqrt(ss / static_cast<double>(t - 1) /
                          static_cast<double>(t));
}

}  // namespace detail

enum class RemovalModel { Uniform, SpanningTree, Star, HullBiased };

inline std::string removal_model_name(RemovalModel m) {
  switch (m) {
    case RemovalModel::Uniform: return "uniform";
    case RemovalModel::SpanningTree: return "spanning-tree";
    case RemovalModel::Star: return "star";
    case RemovalModel::HullBiased: return "hull-biased";
  }
  return "?";
}

inline RemovalModel removal_model_from_name(const std::string& s) {
  if (s == "uniform") return RemovalModel::Uniform;
  if (s == "spanning-tree") return RemovalModel::SpanningTree;
  if (s == "star") return RemovalModel::Star;
  if (s == "hull-biased") return RemovalModel::HullBiased;
  throw Error(ErrorCode::BadInput, "unknown removal model: " + s);
}

// Removal size from the resilience theorem: ceil(n + n / (3 log2(2n))).
inline int default_removal_size(int n) {
  return static_cast<int>(std::ceil(
      n + n / (3.0 * std::log2(2.0 * n))));
}

namespace detail {

inline RemovalSet draw_removal(const PointSet& ps, RemovalModel model,
                               int size, Rng& rng) {
  const int n2 = ps.size();
  std::set<EdgeRef> edges;
  auto random_vertex = [&]() { return static_cast<int>(rng.below(
                                   static_cast<std::uint64_t>(n2))); };
  switch (model) {
    case RemovalModel::Uniform: {
      while (static_cast<int>(edges.size()) < size) {
        const int a = random_vertex();
        const int b = random_vertex();
        if (a != b) edges.insert(EdgeRef(a, b));
      }
      break;
    }
    case RemovalModel::SpanningTree: {
      // Random tree on a random subset of size+1 vertices.
      if (size + 1 > n2)
        throw Error(ErrorCode::BadInput, "tree model needs size+1 <= 2n");
      std::vector<int> all(static_cast<size_t>(n2));
      for (int i = 0; i < n2; ++i) all[static_cast<size_t>(i)] = i;
      for (int i = n2 - 1; i > 0; --i)
        std::swap(all[static_cast<size_t>(i)],
                  all[rng.below(static_cast<std::uint64_t>(i + 1))]);
      for (int k = 1; k <= size; ++k)
        edges.insert(EdgeRef(
            all[static_cast<size_t>(k)],
            all[rng.below(static_cast<std::uint64_t>(k))]));
      break;
    }
    case RemovalModel::Star: {
      if (size > n2 - 1)
        throw Error(ErrorCode::BadInput, "star model needs size <= 2n-1");
      const int center = random_vertex();
      while (static_cast<int>(edges.size()) < size) {
        const int b = random_vertex();
        if (b != center) edges.insert(EdgeRef(center, b));
      }
      break;
    }
    case RemovalModel::HullBiased: {
      const std::vector<int> hull = convex_hull(ps);
      while (static_cast<int>(edges.size()) < size) {
        const int a = hull[rng.below(hull.size())];
        const int b = random_vertex();
        if (a != b) edges.insert(EdgeRef(a, b));
      }
      break;
    }
  }
  return RemovalSet(std::vector<EdgeRef>(edges.begin(), edges.end()));
}

}  // namespace detail

// Per trial: sample 2n points, draw a removal set of the theorem's size
// from the chosen model, and try the subdivision pipeline. `removal_size`
// <= 0 selects the default ceil(n + n/(3 log2 2n)).
inline ExperimentReport resilience_experiment(const SampleRegion& region,
                                              int n, RemovalModel model,
                                              long trials, std::uint64_t seed,
                                              int removal_size = 0,
                                              int stop_threshold = 16) {
  if (n < 2) throw Error(ErrorCode::BadInput, "need n >= 2");
  const int size = removal_size > 0 ? removal_size : default_removal_size(n);
  ExperimentReport rep;
  rep.experiment = "resilience";
  rep.seed = seed;
  rep.trials = trials;
  rep.params = {{"n", static_cast<double>(n)},
                {"removal_size", static_cast<double>(size)},
                {"stop_threshold", static_cast<double>(stop_threshold)}};
  rep.text_params = {{"region", region.name()},
                     {"model", removal_model_name(model)}};
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    const PointSet ps = sample_points(region, 2 * n, rng.next());
    const RemovalSet removal = detail::draw_removal(ps, model, size, rng);
    std::map<std::string, double> outcome;
    bool success = false;
    try {
      const ResilientResult res =
          match_avoiding_resilient(ps, removal, stop_threshold);
      // match_avoiding_resilient already rechecks the full matching
      // invariant before reporting a matching.
      success = res.matching.has_value();
      outcome["leaf_failure"] = res.failure ? 1.0 : 0.0;
      outcome["recursions_ok"] =
          validate_subdivision(res.tree, ps) ? 1.0 : 0.0;
    } catch (const Error&) {
      success = false;
      outcome["leaf_failure"] = 0.0;
      outcome["error"] = 1.0;
    }
    outcome["success"] = success ? 1.0 : 0.0;
    rep.outcomes.push_back(std::move(outcome));
  }
  rep.aggregates["success_rate"] = detail::mean_of(rep, "success");
  rep.aggregates["ci_half"] = detail::ci_half(rep, "success");
  double rec = 0;
  for (const auto& o : rep.outcomes)
    rec += o.count("recursions_ok") ? o.at("recursions_ok") : 0.0;
  rep.aggregates["recursions_ok_rate"] =
      rep.outcomes.empty() ? 0 : rec / static_cast<double>(rep.outcomes.size());
  return rep;
}

// Fraction of trials in which all n sampled points are hull vertices, and
// the normalized statistic n^2 * p^(1/n) from the two-constant sandwich.
inline ExperimentReport convex_position_probability(const SampleRegion& region,
                                                    int n, long trials,
                                                    std::uint64_t seed) {
  if (n < 3 || n > 12) throw Error(ErrorCode::BadInput, "need 3 <= n <= 12");
  ExperimentReport rep;
  rep.experiment = "convexprob";
  rep.seed = seed;
  rep.trials = trials;
  rep.params = {{"n", static_cast<double>(n)}};
  rep.text_params = {{"region", region.name()}};
  long hits = 0;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    const PointSet ps = sample_points(region, n, rng.next());
    const bool convex = static_cast<int>(convex_hull(ps).size()) == n;
    if (convex) ++hits;
    rep.outcomes.push_back({{"convex", convex ? 1.0 : 0.0}});
  }
  const double p = static_cast<double>(hits) / static_cast<double>(trials);
  rep.aggregates["p_hat"] = p;
  rep.aggregates["ci_half"] = detail::ci_half(rep, "convex");
  rep.aggregates["normalized"] =
      p > 0 ? n * n * std::pow(p, 1.0 / n) : 0.0;
  return rep;
}

struct EmptyKgonResult {
  bool found{};          // some k-subset in convex position exists
  int min_interior{-1};  // 0 means an empty convex k-gon exists
  std::vector<int> witness;
};

// Exhaustive scan of all k-subsets in convex position; returns the minimum
// number of other input points strictly inside the subset's hull.
inline EmptyKgonResult empty_kgon_scan(const PointSet& ps, int k) {
  const int n = ps.size();
  if (k < 3 || k > n) throw Error(ErrorCode::BadInput, "need 3 <= k <= n");
  double combos = 1;
  for (int i = 0; i < k; ++i) combos *= static_cast<double>(n - i) / (i + 1);
  if (combos > 1e7)
    throw Error(ErrorCode::TooLarge, "too many k-subsets to scan");

  EmptyKgonResult result;
  std::vector<int> pick(static_cast<size_t>(k));
  for (int i = 0; i < k; ++i) pick[static_cast<size_t>(i)] = i;
  while (true) {
    std::vector<Point> sub;
    for (int v : pick) sub.push_back(ps[v]);
    const PointSet sub_ps = PointSet::make(sub);
    const std::vector<int> hull = convex_hull(sub_ps);
    if (static_cast<int>(hull.size()) == k) {
      int interior = 0;
      std::vector<char> in_pick(static_cast<size_t>(n), 0);
      for (int v : pick) in_pick[static_cast<size_t>(v)] = 1;
      for (int v = 0; v < n; ++v)
        if (!in_pick[static_cast<size_t>(v)] &&
            strictly_inside_hull(sub_ps, hull, ps[v]))
          ++interior;
      if (!result.found || interior < result.min_interior) {
        result.found = true;
        result.min_interior = interior;
        result.witness = pick;
      }
    }
    // next combination
    int i = k - 1;
    while (i >= 0 && pick[static_cast<size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++pick[static_cast<size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      pick[static_cast<size_t>(j)] = pick[static_cast<size_t>(j - 1)] + 1;
  }
  return result;
}

// Mean hull-vertex count, with the scaling ratios used by the qualitative
// Theta checks (log2 n for polygonal regions, n^(1/3) for the disk).
inline ExperimentReport hull_count_expectation(const SampleRegion& region,
                                               int n, long trials,
                                               std::uint64_t seed) {
  if (n < 3) throw Error(ErrorCode::BadInput, "need n >= 3");
  ExperimentReport rep;
  rep.experiment = "hullcount";
  rep.seed = seed;
  rep.trials = trials;
  rep.params = {{"n", static_cast<double>(n)}};
  rep.text_params = {{"region", region.name()}};
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    const PointSet ps = sample_points(region, n, rng.next());
    rep.outcomes.push_back(
        {{"hull", static_cast<double>(convex_hull(ps).size())}});
  }
  const double c = detail::mean_of(rep, "hull");
  rep.aggregates["mean_hull"] = c;
  rep.aggregates["ci_half"] = detail::ci_half(rep, "hull");
  rep.aggregates["per_log2_n"] = c / std::log2(static_cast<double>(n));
  rep.aggregates["per_cbrt_n"] = c / std::cbrt(static_cast<double>(n));
  return rep;
}

// Odd-split statistics: |O(X)| at the lexicographically least hull vertex,
// its ratio to (mean hull count)/2, and oracle blocking verification of
// the constructed removal whenever 2n fits the oracle guard.
inline ExperimentReport odd_split_statistics(const SampleRegion& region,
                                             int n, long trials,
                                             std::uint64_t seed) {
  if (n < 2) throw Error(ErrorCode::BadInput, "need n >= 2");
  ExperimentReport rep;
  rep.experiment = "oddsplit";
  rep.seed = seed;
  rep.trials = trials;
  rep.params = {{"n", static_cast<double>(n)}};
  rep.text_params = {{"region", region.name()}};
  const bool oracle = 2 * n <= kEnumerationGuard;
  for (long t = 0; t < trials; ++t) {
    Rng rng = Rng::for_trial(seed, static_cast<std::uint64_t>(t));
    const PointSet ps = sample_points(region, 2 * n, rng.next());
    const int p0 = convex_hull(ps)[0];  // hull starts at the lex-min point
    const OddSplit split = odd_split_blocking(ps, p0);
    std::map<std::string, double> outcome;
    outcome["odd"] = static_cast<double>(split.odd_set.size());
    outcome["removal_size"] = static_cast<double>(split.removal.edge_count());
    outcome["hull"] = static_cast<double>(convex_hull(ps).size());
    if (oracle)
      outcome["blocks"] = is_blocking(ps, split.removal) ? 1.0 : 0.0;
    rep.outcomes.push_back(std::move(outcome));
  }
  const double mean_odd = detail::mean_of(rep, "odd");
  const double mean_hull = detail::mean_of(rep, "hull");
  rep.aggregates["mean_odd"] = mean_odd;
  rep.aggregates["mean_hull"] = mean_hull;
  rep.aggregates["odd_over_half_hull"] =
      mean_hull > 0 ? mean_odd / (mean_hull / 2.0) : 0.0;
  if (oracle) rep.aggregates["blocking_rate"] = detail::mean_of(rep, "blocks");
  return rep;
}

}  // namespace ncm
