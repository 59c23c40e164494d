#pragma once

#include <functional>
#include <optional>
#include <set>
#include <vector>

#include "ncm/geom.hpp"
#include "ncm/ham_sandwich.hpp"
#include "ncm/removal.hpp"

namespace ncm {

inline constexpr int kEnumerationGuard = 16;

struct Matching {
  std::vector<EdgeRef> edges;  // kept sorted

  void normalize() { std::sort(edges.begin(), edges.end()); }
  bool contains(const EdgeRef& e) const {
    return std::binary_search(edges.begin(), edges.end(), e);
  }
  bool uses_any(const RemovalSet& removal) const {
    for (const EdgeRef& e : edges)
      if (removal.contains(e)) return true;
    return false;
  }
  friend bool operator==(const Matching& a, const Matching& b) {
    return a.edges == b.edges;
  }
  friend bool operator<(const Matching& a, const Matching& b) {
    return a.edges < b.edges;
  }
};

struct Coloring {
  std::vector<int> red;
  std::vector<int> blue;
};

// Full invariant recheck: perfect over `members` and pairwise non-crossing.
inline bool is_valid_matching(const PointSet& ps, const Matching& m,
                              const std::vector<int>& members) {
  std::vector<char> hit(static_cast<size_t>(ps.size()), 0);
  for (const EdgeRef& e : m.edges) {
    ps.check_index(e.i);
    ps.check_index(e.j);
    if (hit[static_cast<size_t>(e.i)]++ || hit[static_cast<size_t>(e.j)]++)
      return false;
  }
  size_t covered = 0;
  for (int v : members) {
    if (!hit[static_cast<size_t>(v)]) return false;
    ++covered;
  }
  if (covered != 2 * m.edges.size()) return false;
  for (size_t a = 0; a < m.edges.size(); ++a)
    for (size_t b = a + 1; b < m.edges.size(); ++b)
      if (segments_cross(m.edges[a], m.edges[b], ps)) return false;
  return true;
}

inline bool is_valid_matching(const PointSet& ps, const Matching& m) {
  std::vector<int> all(static_cast<size_t>(ps.size()));
  for (int i = 0; i < ps.size(); ++i) all[static_cast<size_t>(i)] = i;
  return is_valid_matching(ps, m, all);
}

namespace detail {

// Backtracking core shared by the oracle and the cell solver: pair the
// lowest unmatched member with every later member in ascending order,
// pruning forbidden edges and crossings incrementally. Emits matchings in
// lexicographic order of their edge lists.
inline bool enumerate_pairings(
    const PointSet& ps, const std::vector<int>& members,
    const std::function<bool(const EdgeRef&)>& forbidden,
    const std::function<bool(const Matching&)>& emit) {
  const size_t n = members.size();
  std::vector<char> used(n, 0);
  std::vector<EdgeRef> chosen;
  chosen.reserve(n / 2);
  std::function<bool()> rec = [&]() -> bool {
    size_t first = 0;
    while (first < n && used[first]) ++first;
    if (first == n) {
      Matching m;
      m.edges = chosen;
      return emit(m);
    }
    used[first] = 1;
    for (size_t k = first + 1; k < n; ++k) {
      if (used[k]) continue;
      EdgeRef e(members[first], members[k]);
      if (forbidden && forbidden(e)) continue;
      bool crosses = false;
      for (const EdgeRef& c : chosen)
        if (segments_cross(e, c, ps)) {
          crosses = true;
          break;
        }
      if (crosses) continue;
      used[k] = 1;
      chosen.push_back(e);
      if (rec()) return true;
      chosen.pop_back();
      used[k] = 0;
    }
    used[first] = 0;
    return false;
  };
  return rec();
}

}  // namespace detail

// Exhaustive oracle: every perfect non-crossing matching, canonical order.
inline std::vector<Matching> enumerate_ncpm(const PointSet& ps) {
  if (ps.size() % 2 != 0)
    throw Error(ErrorCode::OddInput, "odd point count has no perfect matching");
  if (ps.size() > kEnumerationGuard)
    throw Error(ErrorCode::TooLarge, "oracle guard: more than 16 points");
  std::vector<int> members(static_cast<size_t>(ps.size()));
  for (int i = 0; i < ps.size(); ++i) members[static_cast<size_t>(i)] = i;
  std::vector<Matching> out;
  detail::enumerate_pairings(ps, members, nullptr, [&](const Matching& m) {
    out.push_back(m);
    return false;
  });
  return out;
}

namespace detail {

inline void split_by_cut(const Cut& cut, bool is_red,
                         const std::vector<int>& idx,
                         const std::vector<Point>& pts,
                         std::vector<int>& left, std::vector<int>& right,
                         int& online) {
  for (size_t k = 0; k < idx.size(); ++k) {
    const Side s = cut.side_of(ColorRef{is_red, static_cast<int>(k)},
                               pts[k]);
    if (s == Side::OnLine)
      online = idx[k];
    else
      (s == Side::Left ? left : right).push_back(idx[k]);
  }
}

inline void red_blue_recurse(const PointSet& ps, std::vector<int> red,
                             std::vector<int> blue,
                             std::vector<EdgeRef>& out) {
  if (red.size() != blue.size())
    throw Error(ErrorCode::Unbalanced, "red/blue counts diverged");
  if (red.empty()) return;
  if (red.size() == 1) {
    out.emplace_back(red[0], blue[0]);
    return;
  }
  std::vector<Point> red_pts, blue_pts;
  for (int i : red) red_pts.push_back(ps[i]);
  for (int i : blue) blue_pts.push_back(ps[i]);
  const Cut cut = ham_sandwich_cut(red_pts, blue_pts);

  std::vector<int> red_l, red_r, blue_l, blue_r;
  int red_on = -1, blue_on = -1;
  split_by_cut(cut, true, red, red_pts, red_l, red_r, red_on);
  split_by_cut(cut, false, blue, blue_pts, blue_l, blue_r, blue_on);
  if ((red_on >= 0) != (blue_on >= 0))
    throw Error(ErrorCode::NoCutFound, "unpaired on-line anchor");
  if (red_on >= 0) out.emplace_back(red_on, blue_on);
  red_blue_recurse(ps, std::move(red_l), std::move(blue_l), out);
  red_blue_recurse(ps, std::move(red_r), std::move(blue_r), out);
}

inline std::vector<int> coordinate_sorted(const PointSet& ps,
                                          const std::vector<int>& idx) {
  std::vector<int> out = idx;
  std::sort(out.begin(), out.end(),
            [&](int a, int b) { return ps[a] < ps[b]; });
  return out;
}

}  // namespace detail

// Bichromatic matching by repeated ham-sandwich cuts: every edge joins one
// red and one blue point.
inline Matching red_blue_matching(const PointSet& ps,
                                  const Coloring& coloring) {
  if (coloring.red.size() != coloring.blue.size() || coloring.red.empty())
    throw Error(ErrorCode::Unbalanced, "need equal nonempty color classes");
  std::vector<char> seen(static_cast<size_t>(ps.size()), 0);
  for (int v : coloring.red) {
    ps.check_index(v);
    seen[static_cast<size_t>(v)]++;
  }
  for (int v : coloring.blue) {
    ps.check_index(v);
    seen[static_cast<size_t>(v)]++;
  }
  for (char c : seen)
    if (c > 1) throw Error(ErrorCode::BadInput, "color classes overlap");

  Matching m;
  detail::red_blue_recurse(ps, coloring.red, coloring.blue, m.edges);
  m.normalize();

  std::vector<int> members = coloring.red;
  members.insert(members.end(), coloring.blue.begin(), coloring.blue.end());
  if (!is_valid_matching(ps, m, members))
    throw Error(ErrorCode::NoCutFound, "bichromatic recursion produced an "
                                       "invalid matching");
  return m;
}

// Matches an even set with a blue majority while avoiding red-red edges:
// promote the deficit's worth of blue points to red, then match
// bichromatically.
inline Matching matchable_mixed(const PointSet& ps,
                                const std::vector<int>& red,
                                const std::vector<EdgeRef>& forbidden) {
  if (ps.size() % 2 != 0)
    throw Error(ErrorCode::Parity, "odd point count");
  std::vector<char> is_red(static_cast<size_t>(ps.size()), 0);
  for (int v : red) {
    ps.check_index(v);
    is_red[static_cast<size_t>(v)] = 1;
  }
  std::vector<int> blue;
  for (int i = 0; i < ps.size(); ++i)
    if (!is_red[static_cast<size_t>(i)]) blue.push_back(i);
  if (red.size() > blue.size())
    throw Error(ErrorCode::RedMajority, "more red points than blue");
  for (const EdgeRef& e : forbidden)
    if (!is_red[static_cast<size_t>(e.i)] || !is_red[static_cast<size_t>(e.j)])
      throw Error(ErrorCode::BadForbidden, "forbidden edge not red-red");

  // Promote the coordinate-lexicographically smallest blues.
  std::vector<int> promoted = detail::coordinate_sorted(ps, blue);
  const size_t promote = (blue.size() - red.size()) / 2;
  Coloring coloring;
  coloring.red = red;
  for (size_t k = 0; k < promote; ++k) coloring.red.push_back(promoted[k]);
  for (size_t k = promote; k < promoted.size(); ++k)
    coloring.blue.push_back(promoted[k]);
  Matching m = red_blue_matching(ps, coloring);
  for (const EdgeRef& e : forbidden)
    if (m.contains(e))
      throw Error(ErrorCode::BadForbidden,
                  "bichromatic matching used a forbidden edge");
  return m;
}

// Matching that avoids up to n-1 forbidden edges: partition the vertices
// into two sides of n so each component of the forbidden subgraph sits
// inside one side, then match across the sides.
inline Matching match_avoiding_few(const PointSet& ps,
                                   const RemovalSet& removal) {
  const int n2 = ps.size();
  if (n2 % 2 != 0) throw Error(ErrorCode::Parity, "odd point count");
  const int n = n2 / 2;
  if (removal.edge_count() > n - 1)
    throw Error(ErrorCode::TooManyEdges,
                "needs at most n-1 forbidden edges");
  removal.check_indices(ps);

  std::vector<char> taken(static_cast<size_t>(n2), 0);
  std::vector<int> side_a;
  int total = 0;
  // Maximal prefix of the components (largest first) totalling at most n.
  for (const std::vector<int>& comp : removal.components()) {
    if (total + static_cast<int>(comp.size()) > n) break;
    total += static_cast<int>(comp.size());
    for (int v : comp) {
      side_a.push_back(v);
      taken[static_cast<size_t>(v)] = 1;
    }
  }
  // Fill side A to exactly n with the smallest free (non-forbidden-graph)
  // vertices.
  std::vector<int> free_vertices;
  for (int v = 0; v < n2; ++v)
    if (!taken[static_cast<size_t>(v)] && !removal.has_vertex(v))
      free_vertices.push_back(v);
  free_vertices = detail::coordinate_sorted(ps, free_vertices);
  for (int v : free_vertices) {
    if (static_cast<int>(side_a.size()) == n) break;
    side_a.push_back(v);
    taken[static_cast<size_t>(v)] = 1;
  }
  if (static_cast<int>(side_a.size()) != n)
    throw Error(ErrorCode::ConstructionFailed,
                "could not complete the component partition");

  Coloring coloring;
  coloring.red = side_a;
  for (int v = 0; v < n2; ++v)
    if (!taken[static_cast<size_t>(v)]) coloring.blue.push_back(v);
  Matching m = red_blue_matching(ps, coloring);
  if (m.uses_any(removal))
    throw Error(ErrorCode::ConstructionFailed,
                "partition matching used a forbidden edge");
  return m;
}

// Leaf solver: first non-crossing perfect matching of the member subset
// avoiding the forbidden edges, by filtered enumeration.
inline std::optional<Matching> match_in_cell(
    const PointSet& ps, const std::vector<int>& members,
    const std::vector<EdgeRef>& forbidden) {
  if (members.size() % 2 != 0)
    throw Error(ErrorCode::OddInput, "odd cell");
  if (members.size() > kEnumerationGuard)
    throw Error(ErrorCode::TooLarge, "cell guard: more than 16 points");
  std::set<EdgeRef> banned(forbidden.begin(), forbidden.end());
  std::optional<Matching> found;
  detail::enumerate_pairings(
      ps, members,
      [&](const EdgeRef& e) { return banned.count(e) != 0; },
      [&](const Matching& m) {
        found = m;
        return true;
      });
  return found;
}

struct LeafFailure {
  int depth{};
  std::vector<int> members;
  std::vector<EdgeRef> active_edges;
};

struct ResilientResult {
  std::optional<Matching> matching;
  std::optional<LeafFailure> failure;
  SubdivisionTree tree;
};

namespace detail {

// Cell solve used by the resilient pipeline: enumeration inside the guard,
// the guaranteed component partition when the forbidden set is small
// enough, and unbounded first-found backtracking as the last resort.
inline std::optional<Matching> solve_cell(const PointSet& ps,
                                          const std::vector<int>& members,
                                          const std::vector<EdgeRef>& edges) {
  if (static_cast<int>(members.size()) <= kEnumerationGuard)
    return match_in_cell(ps, members, edges);
  const int half = static_cast<int>(members.size()) / 2;
  if (static_cast<int>(edges.size()) <= half - 1) {
    std::vector<int> back(static_cast<size_t>(ps.size()), -1);
    std::vector<Point> pts;
    for (size_t k = 0; k < members.size(); ++k) {
      back[static_cast<size_t>(members[k])] = static_cast<int>(k);
      pts.push_back(ps[members[k]]);
    }
    std::vector<EdgeRef> local;
    for (const EdgeRef& e : edges)
      local.emplace_back(back[static_cast<size_t>(e.i)],
                         back[static_cast<size_t>(e.j)]);
    Matching sub = match_avoiding_few(PointSet::make(pts), RemovalSet(local));
    Matching m;
    for (const EdgeRef& e : sub.edges)
      m.edges.emplace_back(members[static_cast<size_t>(e.i)],
                           members[static_cast<size_t>(e.j)]);
    m.normalize();
    return m;
  }
  std::set<EdgeRef> banned(edges.begin(), edges.end());
  std::optional<Matching> found;
  enumerate_pairings(
      ps, members, [&](const EdgeRef& e) { return banned.count(e) != 0; },
      [&](const Matching& m) {
        found = m;
        return true;
      });
  return found;
}

}  // namespace detail

// Subdivide, solve each leaf cell, take the union. Absence is a failure of
// the heuristic, not a proof that the removal set blocks.
inline ResilientResult match_avoiding_resilient(
    const PointSet& ps, const RemovalSet& removal, int stop_threshold,
    bool assume_general_position = false) {
  ResilientResult result;
  result.tree = recursive_subdivision(ps, removal.edges(), stop_threshold,
                                      assume_general_position);
  Matching all;
  bool failed = false;
  result.tree.for_each_leaf([&](const SubdivisionNode& leaf) {
    if (failed) return;
    if (leaf.blue_members.empty()) return;
    std::optional<Matching> cell =
        detail::solve_cell(ps, leaf.blue_members, leaf.active_edges);
    if (!cell) {
      failed = true;
      result.failure = LeafFailure{leaf.depth, leaf.blue_members,
                                   leaf.active_edges};
      return;
    }
    all.edges.insert(all.edges.end(), cell->edges.begin(), cell->edges.end());
  });
  if (failed) return result;
  all.normalize();
  if (!is_valid_matching(ps, all) || all.uses_any(removal)) {
    result.failure = LeafFailure{};  // cross-cell conflict
    return result;
  }
  result.matching = std::move(all);
  return result;
}

}  // namespace ncm
