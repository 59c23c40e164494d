#pragma once

#include <numeric>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ncm/blocking.hpp"
#include "ncm/geom.hpp"
#include "ncm/matcher.hpp"
#include "ncm/removal.hpp"
#include "ncm/rng.hpp"

namespace ncm {

// Construction-condition checklist. Every item is recomputed from the
// generator's output alone; the generators throw rather than return a
// config whose checklist has a false entry.
struct Certificate {
  std::vector<std::pair<std::string, bool>> checks;

  void add(std::string name, bool ok) {
    checks.emplace_back(std::move(name), ok);
  }
  bool all_true() const {
    for (const auto& [name, ok] : checks)
      if (!ok) return false;
    return true;
  }
};

struct NamedConfig {
  PointSet points;
  std::optional<RemovalSet> removal;
  Certificate certificate;
};

namespace detail {

inline Point primitive(Point v) {
  const Coord g = std::gcd(v.x < 0 ? -v.x : v.x, v.y < 0 ? -v.y : v.y);
  if (g == 0) throw Error(ErrorCode::Degenerate, "zero direction");
  return Point{v.x / g, v.y / g};
}

inline Point rot90(const Point& v) { return Point{-v.y, v.x}; }

// m points on a strictly convex integer chain, listed left to right, which
// is also their convex (CCW) cyclic order. Small m uses the centered
// parabola (t, t^2); large m uses a chain of primitive vectors sorted by
// slope, which keeps coordinates inside the grid for m up to 2*10^4.
inline std::vector<Point> convex_arc(int m) {
  if (m < 1) throw Error(ErrorCode::Range, "need at least one point");
  std::vector<Point> out;
  const Coord half = m / 2;
  if (half * half <= kCoordLimit && m <= 4096) {
    for (int i = 0; i < m; ++i) {
      const Coord t = i - half;
      out.push_back(Point{t, t * t});
    }
    return out;
  }
  // Primitive vectors (q, p), slope p/q in (-1, 1], smallest q first so
  // the chain is as short as possible.
  std::vector<Point> vecs;
  for (Coord q = 1; static_cast<int>(vecs.size()) < m - 1; ++q) {
    for (Coord p = -q + 1; p <= q; ++p)
      if (std::gcd(q, p < 0 ? -p : p) == 1) vecs.push_back(Point{q, p});
  }
  vecs.resize(static_cast<size_t>(m - 1));
  std::sort(vecs.begin(), vecs.end(), [](const Point& a, const Point& b) {
    return Int128(a.y) * b.x < Int128(b.y) * a.x;  // by slope, all distinct
  });
  Point at{0, 0};
  out.push_back(at);
  Coord min_y = 0, max_y = 0;
  for (const Point& v : vecs) {
    at = Point{at.x + v.x, at.y + v.y};
    min_y = std::min(min_y, at.y);
    max_y = std::max(max_y, at.y);
    out.push_back(at);
  }
  const Coord cx = at.x / 2, cy = (min_y + max_y) / 2;
  for (Point& p : out) {
    p.x -= cx;
    p.y -= cy;
  }
  for (const Point& p : out)
    if (p.x < -kCoordLimit || p.x > kCoordLimit || p.y < -kCoordLimit ||
        p.y > kCoordLimit)
      throw Error(ErrorCode::Range, "convex chain exceeds the grid");
  return out;
}

// Strict convexity of the full cycle in index order. For points listed in
// convex order this implies general position of the whole set.
inline bool strictly_convex_cycle(const PointSet& ps) {
  const int m = ps.size();
  if (m < 3) return m >= 1;
  int expected = 0;
  for (int i = 0; i < m; ++i) {
    const int s =
        sign(cross(ps[i], ps[(i + 1) % m], ps[(i + 2) % m]));
    if (s == 0) return false;
    if (expected == 0)
      expected = s;
    else if (s != expected)
      return false;
  }
  return true;
}

// Non-crossing test for a perfect matching on points in convex position in
// index order: chords are non-crossing iff they nest, checked with a stack.
inline bool noncrossing_on_cycle(const Matching& m, int n_points) {
  std::vector<int> partner(static_cast<size_t>(n_points), -1);
  for (const EdgeRef& e : m.edges) {
    partner[static_cast<size_t>(e.i)] = e.j;
    partner[static_cast<size_t>(e.j)] = e.i;
  }
  std::vector<int> stack;
  for (int v = 0; v < n_points; ++v) {
    if (partner[static_cast<size_t>(v)] < 0) return false;
    if (partner[static_cast<size_t>(v)] > v) {
      stack.push_back(v);
    } else {
      if (stack.empty() || stack.back() != partner[static_cast<size_t>(v)])
        return false;
      stack.pop_back();
    }
  }
  return stack.empty();
}

inline void require_certificate(const Certificate& cert, const char* who) {
  if (!cert.all_true())
    throw Error(ErrorCode::ConstructionFailed,
                std::string(who) + ": certificate check failed");
}

}  // namespace detail

struct ConvexFamily {
  NamedConfig config;
  std::vector<Matching> matchings;  // n pairwise edge-disjoint rotations
};

// 2n points in convex position plus the n rotation matchings
// {i, j : i + j = 2k+1 (mod 2n)}, k = 0..n-1. Removing fewer than n edges
// misses one of them entirely, so these witness that n-1 removals never
// block the convex configuration.
inline ConvexFamily gen_convex(int n) {
  if (n < 1 || n > 10000) throw Error(ErrorCode::Range, "need 1 <= n <= 10^4");
  const int m = 2 * n;
  ConvexFamily fam;
  fam.config.points = PointSet::make(detail::convex_arc(m));
  const PointSet& ps = fam.config.points;

  for (int k = 0; k < n; ++k) {
    Matching match;
    const int c = 2 * k + 1;
    for (int i = 0; i < m; ++i) {
      const int j = ((c - i) % m + m) % m;
      if (i < j) match.edges.emplace_back(i, j);
    }
    match.normalize();
    fam.matchings.push_back(std::move(match));
  }

  Certificate& cert = fam.config.certificate;
  cert.add("convex_position", n == 1 || detail::strictly_convex_cycle(ps));
  const bool full_check = m <= 256;
  bool matchings_ok = true;
  std::set<EdgeRef> seen;
  for (const Matching& match : fam.matchings) {
    if (static_cast<int>(match.edges.size()) != n) matchings_ok = false;
    if (full_check) {
      if (!is_valid_matching(ps, match)) matchings_ok = false;
    } else {
      if (!detail::noncrossing_on_cycle(match, m)) matchings_ok = false;
    }
    for (const EdgeRef& e : match.edges)
      if (!seen.insert(e).second) matchings_ok = false;
  }
  cert.add(full_check ? "matchings_valid" : "matchings_valid_structural",
           matchings_ok);
  cert.add("matchings_disjoint", seen.size() == static_cast<size_t>(n) * n);
  detail::require_certificate(cert, "gen_convex");
  return fam;
}

namespace detail {

// Interior cluster on a tiny integer parabola in the frame (tangent,
// inward): count points at base + k*tangent + (1 + k^2)*inward. No three
// cluster points are collinear because the frame map is affine.
inline std::vector<Point> cluster(const Point& base, const Point& tangent,
                                  const Point& inward, int count) {
  std::vector<Point> out;
  for (int k = 0; k < count; ++k) {
    const Coord kk = k;
    out.push_back(Point{base.x + kk * tangent.x + (1 + kk * kk) * inward.x,
                        base.y + kk * tangent.y + (1 + kk * kk) * inward.y});
  }
  return out;
}

inline bool within_grid(const std::vector<Point>& pts) {
  for (const Point& p : pts)
    if (p.x < -kCoordLimit || p.x > kCoordLimit || p.y < -kCoordLimit ||
        p.y > kCoordLimit)
      return false;
  return true;
}

// Are all of `others` strictly on one side of line (a, b)? If `match` is
// non-null the shared side must also be the side of *match.
inline bool same_strict_side(const Point& a, const Point& b,
                             const std::vector<Point>& others,
                             const Point* match) {
  int want = match ? sign(cross(a, b, *match)) : 0;
  if (match && want == 0) return false;
  for (const Point& p : others) {
    const int s = sign(cross(a, b, p));
    if (s == 0) return false;
    if (want == 0)
      want = s;
    else if (s != want)
      return false;
  }
  return true;
}

}  // namespace detail

// An (n+1)-gon with n-1 points clustered just inside the midpoint of one
// edge, all on the same side of every diagonal; removing the n+1 boundary
// edges blocks every non-crossing perfect matching.
inline NamedConfig gen_example1(int n) {
  if (n < 2) throw Error(ErrorCode::Range, "need n >= 2");
  const int m = n + 1;
  const std::vector<Point> base = detail::convex_arc(m);

  for (Coord s = 2; ; s *= 2) {
    std::vector<Point> pts;
    for (const Point& p : base) pts.push_back(Point{s * p.x, s * p.y});
    if (!detail::within_grid(pts))
      throw Error(ErrorCode::ConstructionFailed,
                  "gen_example1: grid exhausted before certificate passed");

    const Point mid{(pts[0].x + pts[1].x) / 2, (pts[0].y + pts[1].y) / 2};
    const Point t = detail::primitive(
        Point{pts[1].x - pts[0].x, pts[1].y - pts[0].y});
    const Point w = detail::rot90(t);  // interior is left of edge 0->1 (CCW)
    // Jitter the cluster anchor: some alignments of the anchor with two
    // polygon vertices are scale-invariant, and a small shift breaks them.
    for (int jit = 0; jit < 25; ++jit) {
    const Coord jx = jit % 5, jy = jit / 5;
    const Point anchor{mid.x + jx * t.x + jy * w.x,
                       mid.y + jx * t.y + jy * w.y};
    std::vector<Point> interior = detail::cluster(anchor, t, w, n - 1);
    std::vector<Point> all = pts;
    all.insert(all.end(), interior.begin(), interior.end());
    if (!detail::within_grid(all)) continue;

    NamedConfig cfg;
    try {
      cfg.points = PointSet::make(all);
    } catch (const Error&) {
      continue;  // coincidence at this scale; rescale separates
    }
    const PointSet& ps = cfg.points;

    std::vector<EdgeRef> boundary;
    for (int i = 0; i < m; ++i) boundary.emplace_back(i, (i + 1) % m);
    cfg.removal = RemovalSet(boundary);

    Certificate& cert = cfg.certificate;
    cert.add("general_position", ps.is_general_position());
    std::vector<int> hull = convex_hull(ps);
    std::sort(hull.begin(), hull.end());
    bool hull_is_polygon = static_cast<int>(hull.size()) == m;
    for (size_t k = 0; hull_is_polygon && k < hull.size(); ++k)
      if (hull[k] != static_cast<int>(k)) hull_is_polygon = false;
    cert.add("hull_is_polygon", hull_is_polygon);

    bool inside = true;
    const std::vector<int> hull_ccw = convex_hull(ps);
    for (const Point& q : interior)
      if (!strictly_inside_hull(ps, hull_ccw, q)) inside = false;
    cert.add("interior_strictly_inside", inside);

    bool diagonals = true;
    for (int a = 0; a < m && diagonals; ++a)
      for (int b = a + 1; b < m && diagonals; ++b) {
        const bool adjacent = (b == a + 1) || (a == 0 && b == m - 1);
        if (adjacent) continue;
        if (!detail::same_strict_side(pts[static_cast<size_t>(a)],
                                      pts[static_cast<size_t>(b)], interior,
                                      nullptr))
          diagonals = false;
      }
    cert.add("same_side_of_all_diagonals", diagonals);

    if (ps.size() <= kEnumerationGuard)
      cert.add("removal_blocks", is_blocking(ps, *cfg.removal));

    if (cert.all_true()) return cfg;
    }
  }
}

// An (n+2)-gon with n-2 points clustered just inside vertex P0; removing
// the n boundary edges not incident to P0 blocks every matching.
inline NamedConfig gen_example2(int n) {
  if (n < 2) throw Error(ErrorCode::Range, "need n >= 2");
  const int m = n + 2;
  const std::vector<Point> base = detail::convex_arc(m);

  for (Coord s = 1; ; s *= 2) {
    std::vector<Point> pts;
    for (const Point& p : base) pts.push_back(Point{s * p.x, s * p.y});
    if (!detail::within_grid(pts))
      throw Error(ErrorCode::ConstructionFailed,
                  "gen_example2: grid exhausted before certificate passed");

    Point to_center{0, 0};
    for (int i = 1; i < m; ++i) {
      to_center.x += pts[static_cast<size_t>(i)].x - pts[0].x;
      to_center.y += pts[static_cast<size_t>(i)].y - pts[0].y;
    }
    const Point u = detail::primitive(to_center);
    const Point w = detail::rot90(u);
    for (int jit = 0; jit < 25; ++jit) {
    const Coord jx = jit % 5, jy = jit / 5;
    const Point anchor{pts[0].x + jx * w.x + jy * u.x,
                       pts[0].y + jx * w.y + jy * u.y};
    std::vector<Point> interior = detail::cluster(anchor, w, u, n - 2);
    std::vector<Point> all = pts;
    all.insert(all.end(), interior.begin(), interior.end());
    if (!detail::within_grid(all)) continue;

    NamedConfig cfg;
    try {
      cfg.points = PointSet::make(all);
    } catch (const Error&) {
      continue;
    }
    const PointSet& ps = cfg.points;

    std::vector<EdgeRef> removed;
    for (int i = 1; i < m - 1; ++i) removed.emplace_back(i, i + 1);
    cfg.removal = RemovalSet(removed);

    Certificate& cert = cfg.certificate;
    cert.add("general_position", ps.is_general_position());
    std::vector<int> hull = convex_hull(ps);
    std::sort(hull.begin(), hull.end());
    bool hull_is_polygon = static_cast<int>(hull.size()) == m;
    for (size_t k = 0; hull_is_polygon && k < hull.size(); ++k)
      if (hull[k] != static_cast<int>(k)) hull_is_polygon = false;
    cert.add("hull_size_n_plus_2", hull_is_polygon);

    bool inside = true;
    const std::vector<int> hull_ccw = convex_hull(ps);
    for (const Point& q : interior)
      if (!strictly_inside_hull(ps, hull_ccw, q)) inside = false;
    cert.add("interior_strictly_inside", n == 2 || inside);

    // The cluster must sit on P0's side of every diagonal avoiding P0, so
    // each chord P_k..P_l leaves an interior-point-free polygon.
    bool near_p0 = true;
    for (int a = 1; a < m && near_p0; ++a)
      for (int b = a + 1; b < m && near_p0; ++b) {
        if (b == a + 1) continue;
        if (!interior.empty() &&
            !detail::same_strict_side(pts[static_cast<size_t>(a)],
                                      pts[static_cast<size_t>(b)], interior,
                                      &pts[0]))
          near_p0 = false;
      }
    cert.add("cluster_on_p0_side_of_diagonals", near_p0);

    if (ps.size() <= kEnumerationGuard)
      cert.add("removal_blocks", is_blocking(ps, *cfg.removal));

    if (cert.all_true()) return cfg;
    }
  }
}

struct G2Family {
  NamedConfig config;
  std::vector<Matching> matchings;  // 2n-1 pairwise edge-disjoint
};

// 2n-1 points on a shallow convex arc plus an apex that sees every arc
// point from outside, and the 2n-1 symmetric matchings
// M_i = { arc chords (i-j, i+j) mod (2n-1) } + { apex--i }.
inline G2Family gen_g2(int n) {
  if (n < 2) throw Error(ErrorCode::Range, "need n >= 2");
  const int m = 2 * n - 1;
  const Coord r = n - 1;
  if (r * r > kCoordLimit)
    throw Error(ErrorCode::Range, "arc exceeds the grid");
  std::vector<Point> arc;
  for (int i = 0; i < m; ++i) {
    const Coord t = i - r;
    arc.push_back(Point{t, -t * t});
  }

  for (Coord d = r * r + 1; ; d *= 2) {
    if (d > kCoordLimit)
      throw Error(ErrorCode::ConstructionFailed,
                  "gen_g2: grid exhausted before visibility passed");
    std::vector<Point> all = arc;
    const Point apex{0, d};
    all.push_back(apex);

    G2Family fam;
    fam.config.points = PointSet::make(all);
    const PointSet& ps = fam.config.points;
    const int apex_idx = m;

    Certificate& cert = fam.config.certificate;
    bool apex_gp = true;  // arc triples are never collinear
    for (int a = 0; a < m && apex_gp; ++a)
      for (int b = a + 1; b < m; ++b)
        if (orientation(arc[static_cast<size_t>(a)],
                        arc[static_cast<size_t>(b)], apex) ==
            Orientation::Collinear) {
          apex_gp = false;
          break;
        }
    cert.add("general_position", apex_gp);

    // Visibility: apex outside hull(C) and no segment apex--C_i properly
    // crosses a hull edge of C.
    PointSet arc_ps = PointSet::make(arc);
    const std::vector<int> hull = convex_hull(arc_ps);
    bool visible = !strictly_inside_hull(arc_ps, hull, apex);
    for (int i = 0; i < m && visible; ++i)
      for (size_t k = 0; k < hull.size(); ++k) {
        const Point& a = arc_ps[hull[k]];
        const Point& b = arc_ps[hull[(k + 1) % hull.size()]];
        if (segments_cross(apex, arc[static_cast<size_t>(i)], a, b)) {
          visible = false;
          break;
        }
      }
    cert.add("apex_sees_arc", visible);
    if (!visible || !apex_gp) continue;

    for (int i = 0; i < m; ++i) {
      Matching match;
      for (int j = 1; j <= n - 1; ++j)
        match.edges.emplace_back(((i - j) % m + m) % m, (i + j) % m);
      match.edges.emplace_back(apex_idx, i);
      match.normalize();
      fam.matchings.push_back(std::move(match));
    }

    bool matchings_ok = true;
    std::set<EdgeRef> seen;
    const bool full_check = n <= 64;
    for (const Matching& match : fam.matchings) {
      if (static_cast<int>(match.edges.size()) != n) matchings_ok = false;
      if (full_check && !is_valid_matching(ps, match)) matchings_ok = false;
      for (const EdgeRef& e : match.edges)
        if (!seen.insert(e).second) matchings_ok = false;
    }
    cert.add(full_check ? "matchings_valid" : "matchings_size_structural",
             matchings_ok);
    cert.add("matchings_disjoint",
             seen.size() == static_cast<size_t>(m) * static_cast<size_t>(n));
    detail::require_certificate(cert, "gen_g2");
    return fam;
  }
}

// 2n points in general position with exactly hull_size hull vertices:
// a convex chain plus rejection-sampled strictly interior points.
inline PointSet gen_small_hull(int n, int hull_size, std::uint64_t seed) {
  if (hull_size < 3 || hull_size > n + 1)
    throw Error(ErrorCode::Range, "need 3 <= hull_size <= n+1");
  const int total = 2 * n;

  std::vector<Point> base = detail::convex_arc(hull_size);
  Coord extent = 1;
  for (const Point& p : base)
    extent = std::max({extent, p.x < 0 ? -p.x : p.x, p.y < 0 ? -p.y : p.y});
  const Coord s = std::max<Coord>(1, (Coord{1} << 18) / extent);
  std::vector<Point> pts;
  for (const Point& p : base) pts.push_back(Point{s * p.x, s * p.y});

  Coord min_x = pts[0].x, max_x = pts[0].x, min_y = pts[0].y, max_y = pts[0].y;
  for (const Point& p : pts) {
    min_x = std::min(min_x, p.x);
    max_x = std::max(max_x, p.x);
    min_y = std::min(min_y, p.y);
    max_y = std::max(max_y, p.y);
  }

  PointSet hull_ps = PointSet::make(pts);
  const std::vector<int> hull = convex_hull(hull_ps);
  Rng rng(seed);
  long attempts = 0;
  const long attempt_cap = 200000L + 20000L * total;
  while (static_cast<int>(pts.size()) < total) {
    if (++attempts > attempt_cap)
      throw Error(ErrorCode::ConstructionFailed,
                  "gen_small_hull: rejection sampling stalled");
    const Point cand{rng.range(min_x, max_x), rng.range(min_y, max_y)};
    if (!strictly_inside_hull(hull_ps, hull, cand)) continue;
    bool ok = true;
    for (size_t a = 0; a < pts.size() && ok; ++a) {
      if (pts[a] == cand) ok = false;
      for (size_t b = a + 1; b < pts.size() && ok; ++b)
        if (orientation(pts[a], pts[b], cand) == Orientation::Collinear)
          ok = false;
    }
    if (ok) pts.push_back(cand);
  }
  return PointSet::make(pts, total <= 512);
}

}  // namespace ncm
