#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ncm/geom.hpp"

namespace ncm {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct RatPoint {
  Rat x;
  Rat y;

  friend RatPoint operator+(const RatPoint& a, const RatPoint& b) {
    return {a.x + b.x, a.y + b.y};
  }
  friend RatPoint operator-(const RatPoint& a, const RatPoint& b) {
    return {a.x - b.x, a.y - b.y};
  }
  friend RatPoint operator*(const Rat& s, const RatPoint& p) {
    return {s * p.x, s * p.y};
  }
  friend bool operator==(const RatPoint& a, const RatPoint& b) {
    return a.x == b.x && a.y == b.y;
  }
};

inline Rat rat_cross(const RatPoint& o, const RatPoint& a, const RatPoint& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

inline Rat dist_sq(const RatPoint& a, const RatPoint& b) {
  const Rat dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

inline double rat_to_double(const Rat& v) {
  return static_cast<double>(v);
}

// Nearest integer to p/q (half rounds toward +inf).
inline BigInt rat_round(const Rat& v) {
  const BigInt p = numerator(v), q = denominator(v);  // q > 0
  BigInt twice = 2 * p + q;
  BigInt den = 2 * q;
  // floor division
  BigInt fl = twice / den;
  if (twice % den != 0 && twice < 0) fl -= 1;
  return fl;
}

// Strictly convex polygon with exact rational vertices, CCW.
class ConvexBody {
 public:
  static ConvexBody make(std::vector<RatPoint> vertices) {
    const size_t m = vertices.size();
    if (m < 3)
      throw Error(ErrorCode::Degenerate, "convex body needs 3+ vertices");
    for (size_t i = 0; i < m; ++i) {
      const Rat c = rat_cross(vertices[i], vertices[(i + 1) % m],
                              vertices[(i + 2) % m]);
      if (c <= 0)
        throw Error(ErrorCode::Degenerate,
                    "vertices not strictly convex CCW");
    }
    ConvexBody body;
    body.vertices_ = std::move(vertices);
    return body;
  }

  const std::vector<RatPoint>& vertices() const { return vertices_; }
  int size() const { return static_cast<int>(vertices_.size()); }

  Rat area() const {
    Rat twice = 0;
    const size_t m = vertices_.size();
    for (size_t i = 0; i < m; ++i) {
      const RatPoint& a = vertices_[i];
      const RatPoint& b = vertices_[(i + 1) % m];
      twice += a.x * b.y - b.x * a.y;
    }
    return twice / 2;
  }

  Rat diameter_sq() const {
    Rat best = 0;
    for (size_t i = 0; i < vertices_.size(); ++i)
      for (size_t j = i + 1; j < vertices_.size(); ++j)
        best = std::max(best, dist_sq(vertices_[i], vertices_[j]));
    return best;
  }

  // Lexicographically first pair attaining the diameter.
  std::pair<int, int> diameter_pair() const {
    Rat best = -1;
    std::pair<int, int> pair{0, 1};
    for (size_t i = 0; i < vertices_.size(); ++i)
      for (size_t j = i + 1; j < vertices_.size(); ++j) {
        const Rat d = dist_sq(vertices_[i], vertices_[j]);
        if (d > best) {
          best = d;
          pair = {static_cast<int>(i), static_cast<int>(j)};
        }
      }
    return pair;
  }

  bool contains(const RatPoint& p) const {  // weakly inside
    const size_t m = vertices_.size();
    for (size_t i = 0; i < m; ++i)
      if (rat_cross(vertices_[i], vertices_[(i + 1) % m], p) < 0) return false;
    return true;
  }

  RatPoint centroid_of_vertices() const {
    RatPoint c{0, 0};
    for (const RatPoint& v : vertices_) c = c + v;
    const Rat inv = Rat(1) / static_cast<int>(vertices_.size());
    return inv * c;
  }

 private:
  std::vector<RatPoint> vertices_;
};

// Triangle with vertices on the 1/M lattice, stored CCW.
struct LatticeTriangle {
  long M{};
  std::array<RatPoint, 3> v;

  static LatticeTriangle make(long M, RatPoint a, RatPoint b, RatPoint c) {
    LatticeTriangle t;
    t.M = M;
    const Rat orient = rat_cross(a, b, c);
    if (orient == 0)
      throw Error(ErrorCode::Degenerate, "degenerate lattice triangle");
    if (orient > 0)
      t.v = {a, b, c};
    else
      t.v = {a, c, b};
    for (const RatPoint& p : t.v)
      if (denominator(Rat(p.x * M)) != 1 || denominator(Rat(p.y * M)) != 1)
        throw Error(ErrorCode::BadInput, "vertex not on the 1/M lattice");
    return t;
  }

  Rat area() const { return rat_cross(v[0], v[1], v[2]) / 2; }

  Rat diameter_sq() const {
    return std::max({dist_sq(v[0], v[1]), dist_sq(v[1], v[2]),
                     dist_sq(v[0], v[2])});
  }

  bool contains(const RatPoint& p) const {  // weakly inside (CCW order)
    return rat_cross(v[0], v[1], p) >= 0 && rat_cross(v[1], v[2], p) >= 0 &&
           rat_cross(v[2], v[0], p) >= 0;
  }

  bool contains(const ConvexBody& body) const {
    for (const RatPoint& p : body.vertices())
      if (!contains(p)) return false;
    return true;
  }
};

struct LatticeSquare {
  long M{};
  RatPoint lower_left;
  long side{};

  std::array<RatPoint, 4> corners() const {
    const Rat s = side;
    return {lower_left, lower_left + RatPoint{s, Rat(0)},
            lower_left + RatPoint{s, s}, lower_left + RatPoint{Rat(0), s}};
  }
  bool contains(const RatPoint& p) const {
    return p.x >= lower_left.x && p.x <= lower_left.x + side &&
           p.y >= lower_left.y && p.y <= lower_left.y + side;
  }
  bool contains(const LatticeTriangle& t) const {
    return contains(t.v[0]) && contains(t.v[1]) && contains(t.v[2]);
  }
};

namespace detail {

struct DPoint {
  double x, y;
};

inline DPoint to_d(const RatPoint& p) {
  return {rat_to_double(p.x), rat_to_double(p.y)};
}

// Numeric incenter of a triangle; only used to aim the lattice rounding —
// every contract is re-verified in exact arithmetic afterwards.
inline DPoint incenter(const RatPoint& A, const RatPoint& B,
                       const RatPoint& C) {
  const DPoint a = to_d(A), b = to_d(B), c = to_d(C);
  const double la = std::hypot(b.x - c.x, b.y - c.y);
  const double lb = std::hypot(a.x - c.x, a.y - c.y);
  const double lc = std::hypot(a.x - b.x, a.y - b.y);
  const double s = la + lb + lc;
  return {(la * a.x + lb * b.x + lc * c.x) / s,
          (la * a.y + lb * b.y + lc * c.y) / s};
}

inline RatPoint lattice_round(const DPoint& p, long M, long dx, long dy) {
  const BigInt nx = BigInt(std::llround(p.x * static_cast<double>(M))) + dx;
  const BigInt ny = BigInt(std::llround(p.y * static_cast<double>(M))) + dy;
  return {Rat(nx, BigInt(M)), Rat(ny, BigInt(M))};
}

inline bool strictly_inside_triangle(const RatPoint& a, const RatPoint& b,
                                     const RatPoint& c, const RatPoint& p) {
  const int s1 = rat_cross(a, b, p) > 0 ? 1 : (rat_cross(a, b, p) < 0 ? -1 : 0);
  const int s2 = rat_cross(b, c, p) > 0 ? 1 : (rat_cross(b, c, p) < 0 ? -1 : 0);
  const int s3 = rat_cross(c, a, p) > 0 ? 1 : (rat_cross(c, a, p) < 0 ? -1 : 0);
  return s1 != 0 && s1 == s2 && s2 == s3;
}

// Lattice point aimed at the incenter of triangle (V, P', Q'); candidates
// ring outward by distance until one lies strictly inside the triangle.
inline RatPoint aimed_lattice_point(const RatPoint& A, const RatPoint& B,
                                    const RatPoint& C, long M) {
  const DPoint target = incenter(A, B, C);
  RatPoint best{};
  bool found = false;
  double best_d = 0;
  for (long dx = -2; dx <= 2; ++dx)
    for (long dy = -2; dy <= 2; ++dy) {
      const RatPoint cand = lattice_round(target, M, dx, dy);
      if (!strictly_inside_triangle(A, B, C, cand)) continue;
      const double cx = rat_to_double(cand.x) - target.x;
      const double cy = rat_to_double(cand.y) - target.y;
      const double d = cx * cx + cy * cy;
      if (!found || d < best_d) {
        found = true;
        best = cand;
        best_d = d;
      }
    }
  if (!found)
    throw Error(ErrorCode::ConstructionFailed,
                "no lattice point inside the aimed incircle");
  return best;
}

}  // namespace detail

// Lattice triangle containing K: diameter-frame rectangle, doubling
// triangle, reflections through each vertex, one lattice point aimed at
// each reflected incircle. Exact post-conditions: T contains K; if
// area(K) > 100/M then area(T) <= 64 area(K), else area(T) <= 6400/M and
// diam(T) <= 12. Thin bodies get the rectangle padded so the incircles are
// wide enough for the 1/M lattice.
inline LatticeTriangle bounding_triangle(const ConvexBody& K, long M) {
  const Rat S = K.area();
  if (S <= 0) throw Error(ErrorCode::Degenerate, "zero-area body");
  if (M <= 100)
    throw Error(ErrorCode::Precondition, "M must exceed 100/area(Gamma)");
  if (K.diameter_sq() > 1)
    throw Error(ErrorCode::Precondition, "body exceeds the diameter-1 frame");

  const auto [xi, yi] = K.diameter_pair();
  const RatPoint x = K.vertices()[static_cast<size_t>(xi)];
  const RatPoint y = K.vertices()[static_cast<size_t>(yi)];
  const RatPoint u = y - x;
  const Rat uu = u.x * u.x + u.y * u.y;  // |u|^2, rational

  // Frame coordinates: v = x + alpha*u + beta*rot90(u).
  Rat amin = 0, amax = 0, bmin = 0, bmax = 0;
  bool first = true;
  for (const RatPoint& v : K.vertices()) {
    const RatPoint w = v - x;
    const Rat alpha = (w.x * u.x + w.y * u.y) / uu;
    const Rat beta = (u.x * w.y - u.y * w.x) / uu;
    if (first) {
      amin = amax = alpha;
      bmin = bmax = beta;
      first = false;
    } else {
      amin = std::min(amin, alpha);
      amax = std::max(amax, alpha);
      bmin = std::min(bmin, beta);
      bmax = std::max(bmax, beta);
    }
  }
  if (amin < 0 || amax > 1)
    throw Error(ErrorCode::Precondition,
                "diameter pair not extremal in its own direction");

  // Minimal bounding rectangle in the frame; real area (da*db*|u|^2) is at
  // most twice the body's.
  const Rat rect_area = (amax - amin) * (bmax - bmin) * uu;
  if (rect_area > 2 * S)
    throw Error(ErrorCode::ConstructionFailed,
                "rectangle area bound violated");

  // Pad each side up to 2/M so the reflected incircles can hold a lattice
  // point: side^2 = d^2 * |u|^2 compared against (2/M)^2 exactly. Doubling
  // then a 17/16 refinement keeps the overshoot small, which is what keeps
  // the small-case 6400/M area bound safe.
  const Rat target_sq = Rat(4, BigInt(M) * M);
  const bool small_case = !(S > Rat(100, M));
  auto pad = [&](Rat d) {
    if (d == 0) d = Rat(1, BigInt(M) * 4);
    while (d * d * uu < target_sq / 4) d *= 2;
    while (d * d * uu < target_sq) d *= Rat(17, 16);
    return d;
  };
  Rat da = amax - amin, db = bmax - bmin;
  const Rat da0 = da, db0 = db;
  da = pad(da);
  db = pad(db);
  const bool padded = da != da0 || db != db0;

  // Doubling triangle ABC: right triangle whose legs double the rectangle
  // sides, so the rectangle's far corners are edge midpoints.
  const RatPoint uperp{-u.y, u.x};
  auto frame_point = [&](const Rat& a, const Rat& b) {
    return x + a * u + b * uperp;
  };
  const RatPoint A = frame_point(amin, bmin);
  const RatPoint B = frame_point(amin + 2 * da, bmin);
  const RatPoint C = frame_point(amin, bmin + 2 * db);
  const Rat tri_area = rat_cross(A, B, C) > 0 ? rat_cross(A, B, C) / 2
                                              : -rat_cross(A, B, C) / 2;
  if (tri_area < 2 * S)
    throw Error(ErrorCode::ConstructionFailed, "doubling triangle too small");
  if (!padded && tri_area > 4 * S)
    throw Error(ErrorCode::ConstructionFailed, "doubling triangle too large");

  // The 4:1 outer triangle through the three vertex reflections (identity
  // check of the homothety about the centroid).
  const Rat third(1, 3);
  const RatPoint G = third * (A + B + C);
  const RatPoint A2 = (Rat(3) * A) - B - C;
  if (!(A2 == G + Rat(4) * (A - G)))
    throw Error(ErrorCode::ConstructionFailed, "homothety identity broken");

  const RatPoint A1 = detail::aimed_lattice_point(
      A, (Rat(2) * A) - B, (Rat(2) * A) - C, M);
  const RatPoint B1 = detail::aimed_lattice_point(
      B, (Rat(2) * B) - A, (Rat(2) * B) - C, M);
  const RatPoint C1 = detail::aimed_lattice_point(
      C, (Rat(2) * C) - A, (Rat(2) * C) - B, M);
  LatticeTriangle T = LatticeTriangle::make(M, A1, B1, C1);

  if (!T.contains(K))
    throw Error(ErrorCode::ConstructionFailed,
                "bounding triangle does not contain the body");
  if (small_case) {
    if (T.area() > Rat(6400, M) || T.diameter_sq() > 144)
      throw Error(ErrorCode::ConstructionFailed,
                  "small-case area/diameter bound violated");
  } else {
    if (T.area() > 64 * S)
      throw Error(ErrorCode::ConstructionFailed, "64S area bound violated");
  }
  return T;
}

// Lattice triangle inside K with area >= area(K)/100: inscribed
// quadrilateral x z y w (diameter pair plus the two extreme points across
// it), its larger diagonal triangle, contraction toward the incenter, and
// lattice rounding; every contract verified exactly, with a contraction
// ladder 1/2, 2/3, 3/4 as fallback.
inline LatticeTriangle contained_triangle(const ConvexBody& K, long M) {
  const Rat S = K.area();
  if (!(S > Rat(100, M)))
    throw Error(ErrorCode::Precondition, "area must exceed 100/M");
  if (K.diameter_sq() > 1)
    throw Error(ErrorCode::Precondition, "body exceeds the diameter-1 frame");

  const auto [xi, yi] = K.diameter_pair();
  const RatPoint x = K.vertices()[static_cast<size_t>(xi)];
  const RatPoint y = K.vertices()[static_cast<size_t>(yi)];

  // Extreme vertices on each side of line xy.
  RatPoint z = x, w = x;
  Rat zc = 0, wc = 0;
  for (const RatPoint& v : K.vertices()) {
    const Rat c = rat_cross(x, y, v);
    if (c > zc) {
      zc = c;
      z = v;
    }
    if (c < wc) {
      wc = c;
      w = v;
    }
  }
  const Rat quad_area = (zc - wc) / 2;  // area of x z y w
  if (quad_area < S / 2)
    throw Error(ErrorCode::ConstructionFailed,
                "inscribed quadrilateral smaller than half the body");

  // Larger of the two triangles the diagonal xy cuts off.
  const RatPoint apex = (zc >= -wc) ? z : w;
  const std::array<RatPoint, 3> big{x, y, apex};

  for (const Rat& f : {Rat(1, 2), Rat(2, 3), Rat(3, 4)}) {
    const detail::DPoint inc = detail::incenter(big[0], big[1], big[2]);
    std::array<RatPoint, 3> cand{};
    bool ok = true;
    for (int k = 0; k < 3 && ok; ++k) {
      const detail::DPoint vd = detail::to_d(big[static_cast<size_t>(k)]);
      const detail::DPoint aim{inc.x + rat_to_double(f) * (vd.x - inc.x),
                               inc.y + rat_to_double(f) * (vd.y - inc.y)};
      cand[static_cast<size_t>(k)] = detail::lattice_round(aim, M, 0, 0);
      if (!K.contains(cand[static_cast<size_t>(k)])) ok = false;
    }
    if (!ok) continue;
    LatticeTriangle T;
    try {
      T = LatticeTriangle::make(M, cand[0], cand[1], cand[2]);
    } catch (const Error&) {
      continue;
    }
    // T inside K holds because each vertex passed K.contains and K is
    // convex; only the area contract remains.
    if (T.area() >= S / 100) return T;
  }
  throw Error(ErrorCode::ConstructionFailed,
              "contraction ladder exhausted without meeting the contract");
}

// Axis-aligned side-100 lattice square centered at a lattice point within
// 1/M of an interior point of gamma; contains every triangle
// bounding_triangle can emit for bodies inside gamma (each such triangle
// stays within distance 13 of any interior point of gamma).
inline LatticeSquare bounding_square(const ConvexBody& gamma, long M) {
  if (gamma.diameter_sq() > 1)
    throw Error(ErrorCode::Precondition, "gamma exceeds the diameter-1 frame");
  const RatPoint O = gamma.centroid_of_vertices();
  const RatPoint center{Rat(rat_round(O.x * M), BigInt(M)),
                        Rat(rat_round(O.y * M), BigInt(M))};
  LatticeSquare sq;
  sq.M = M;
  sq.side = 100;
  sq.lower_left = center - RatPoint{Rat(50), Rat(50)};
  return sq;
}

// Number of triangles with vertices among the lattice points of a side-100
// square at resolution M: choose 3 of the (100M+1)^2 points. Grows as
// Theta(M^6); degenerate (collinear) triples are a lower-order term.
inline BigInt lattice_triangle_count(long M) {
  const BigInt pts = BigInt(100 * M + 1) * (100 * M + 1);
  return pts * (pts - 1) * (pts - 2) / 6;
}

}  // namespace ncm
