#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ncm {

using Coord = std::int64_t;

// Coordinate cap. Predicates run in 128-bit arithmetic, so exactness only
// needs the inputs bounded; the cap leaves headroom for the global x2
// rescale that makes edge midpoints integral.
inline constexpr Coord kCoordLimit = Coord{1} << 22;

// Grid extent used by the samplers (one unit of a sample region).
inline constexpr Coord kSampleGrid = Coord{1} << 20;

enum class ErrorCode {
  BadInput,
  CoordRange,
  DuplicatePoint,
  NotGeneralPosition,
  OddInput,
  TooLarge,
  NoCutFound,
  Unbalanced,
  Parity,
  RedMajority,
  BadForbidden,
  TooManyEdges,
  WrongSize,
  NotHullVertex,
  Range,
  ConstructionFailed,
  Degenerate,
  Precondition,
  RegionTooSmall,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

struct Point {
  Coord x{};
  Coord y{};

  friend bool operator==(const Point& a, const Point& b) {
    return a.x == b.x && a.y == b.y;
  }
  friend bool operator!=(const Point& a, const Point& b) { return !(a == b); }
  friend bool operator<(const Point& a, const Point& b) {
    return a.x != b.x ? a.x < b.x : a.y < b.y;
  }
};

using Int128 = __int128;

inline Int128 cross(const Point& a, const Point& b, const Point& c) {
  return Int128(b.x - a.x) * Int128(c.y - a.y) -
         Int128(b.y - a.y) * Int128(c.x - a.x);
}

inline int sign(Int128 v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

enum class Orientation { Clockwise = -1, Collinear = 0, CounterClockwise = 1 };

inline Orientation orientation(const Point& a, const Point& b,
                               const Point& c) {
  return static_cast<Orientation>(sign(cross(a, b, c)));
}

// Vertex-index pair with i < j.
struct EdgeRef {
  int i{};
  int j{};

  EdgeRef() = default;
  EdgeRef(int a, int b) : i(std::min(a, b)), j(std::max(a, b)) {
    if (a == b) throw Error(ErrorCode::BadInput, "edge endpoints coincide");
  }

  bool touches(int v) const { return i == v || j == v; }
  int other(int v) const { return i == v ? j : i; }

  friend bool operator==(const EdgeRef& a, const EdgeRef& b) {
    return a.i == b.i && a.j == b.j;
  }
  friend bool operator<(const EdgeRef& a, const EdgeRef& b) {
    return a.i != b.i ? a.i < b.i : a.j < b.j;
  }
};

class PointSet {
 public:
  PointSet() = default;

  // `require_general_position` additionally rejects collinear triples
  // (exhaustive O(n^3) check).
  static PointSet make(std::vector<Point> pts,
                       bool require_general_position = false) {
    for (const Point& p : pts) {
      if (p.x < -kCoordLimit || p.x > kCoordLimit || p.y < -kCoordLimit ||
          p.y > kCoordLimit)
        throw Error(ErrorCode::CoordRange, "coordinate outside exact grid");
    }
    std::vector<Point> sorted = pts;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw Error(ErrorCode::DuplicatePoint, "duplicate point");
    PointSet ps;
    ps.points_ = std::move(pts);
    if (require_general_position && !ps.is_general_position())
      throw Error(ErrorCode::NotGeneralPosition, "three points collinear");
    return ps;
  }

  int size() const { return static_cast<int>(points_.size()); }
  const Point& operator[](int i) const { return points_[static_cast<size_t>(i)]; }
  const std::vector<Point>& points() const { return points_; }

  bool is_general_position() const {
    const int n = size();
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        for (int c = b + 1; c < n; ++c)
          if (orientation(points_[a], points_[b], points_[c]) ==
              Orientation::Collinear)
            return false;
    return true;
  }

  void check_index(int i) const {
    if (i < 0 || i >= size())
      throw Error(ErrorCode::BadInput, "vertex index out of range");
  }

 private:
  std::vector<Point> points_;
};

// Proper crossing of two closed segments: the open segments share a point.
// Segments meeting only at an endpoint do not cross. Collinear overlap in
// the interiors counts as a crossing.
inline bool segments_cross(const Point& a, const Point& b, const Point& c,
                           const Point& d) {
  const int o1 = sign(cross(a, b, c));
  const int o2 = sign(cross(a, b, d));
  const int o3 = sign(cross(c, d, a));
  const int o4 = sign(cross(c, d, b));
  if (o1 * o2 < 0 && o3 * o4 < 0) return true;
  if (o1 == 0 && o2 == 0 && o3 == 0 && o4 == 0) {
    // All four points on one line: crossing iff the open intervals overlap.
    auto lo = std::min(a, b), hi = std::max(a, b);
    auto lo2 = std::min(c, d), hi2 = std::max(c, d);
    return std::max(lo, lo2) < std::min(hi, hi2);
  }
  return false;
}

inline bool segments_cross(const EdgeRef& e1, const EdgeRef& e2,
                           const PointSet& ps) {
  ps.check_index(e1.i);
  ps.check_index(e1.j);
  ps.check_index(e2.i);
  ps.check_index(e2.j);
  if (e1.touches(e2.i) || e1.touches(e2.j)) return false;
  return segments_cross(ps[e1.i], ps[e1.j], ps[e2.i], ps[e2.j]);
}

// Convex hull (Andrew's monotone chain), CCW, starting at the
// lexicographically smallest point. Collinear boundary points are dropped,
// so under general position the result is exactly the hull vertex set.
inline std::vector<int> convex_hull(const PointSet& ps) {
  const int n = ps.size();
  if (n == 0) throw Error(ErrorCode::BadInput, "hull of empty set");
  std::vector<int> idx(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) idx[static_cast<size_t>(i)] = i;
  std::sort(idx.begin(), idx.end(),
            [&](int a, int b) { return ps[a] < ps[b]; });
  if (n == 1) return idx;
  if (n == 2) return idx;

  std::vector<int> hull;
  auto build = [&](auto begin, auto end) {
    size_t base = hull.size();
    for (auto it = begin; it != end; ++it) {
      while (hull.size() >= base + 2 &&
             sign(cross(ps[hull[hull.size() - 2]], ps[hull[hull.size() - 1]],
                        ps[*it])) <= 0)
        hull.pop_back();
      hull.push_back(*it);
    }
  };
  // Lower chain then upper chain gives CCW order from the lexicographic min.
  build(idx.begin(), idx.end());
  hull.pop_back();
  build(idx.rbegin(), idx.rend());
  hull.pop_back();
  if (hull.empty()) {
    // All points collinear: keep the two extremes.
    hull = {idx.front(), idx.back()};
  }
  return hull;
}

inline bool is_general_position(const PointSet& ps) {
  return ps.is_general_position();
}

// Strictly inside the convex polygon given by hull indices (CCW).
inline bool strictly_inside_hull(const PointSet& ps,
                                 const std::vector<int>& hull,
                                 const Point& p) {
  const size_t m = hull.size();
  if (m < 3) return false;
  for (size_t k = 0; k < m; ++k) {
    const Point& a = ps[hull[k]];
    const Point& b = ps[hull[(k + 1) % m]];
    if (sign(cross(a, b, p)) <= 0) return false;
  }
  return true;
}

}  // namespace ncm
