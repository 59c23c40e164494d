#pragma once

#include <bitset>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ncm/geom.hpp"
#include "ncm/matcher.hpp"
#include "ncm/removal.hpp"

namespace ncm {

inline bool is_blocking(const std::vector<Matching>& matchings,
                        const RemovalSet& removal) {
  for (const Matching& m : matchings)
    if (!m.uses_any(removal)) return false;
  return true;
}

// True iff no enumerated non-crossing perfect matching avoids the set.
inline bool is_blocking(const PointSet& ps, const RemovalSet& removal) {
  removal.check_indices(ps);
  return is_blocking(enumerate_ncpm(ps), removal);
}

// Evidence-carrying result of the structural checks that every size-n
// matching-eliminating edge set must satisfy.
struct StructureReport {
  bool is_tree = false;
  bool high_degree_on_hull = false;
  bool balanced_lines = false;
  bool hull_edges_are_boundary = false;
  bool leaf_lines_uncrossed = false;
  // edge -> (left_red - left_blue, right_red - right_blue)
  std::map<EdgeRef, std::pair<long long, long long>> per_edge_balance;
  std::vector<int> high_degree_violations;        // interior vertices, deg>=2
  std::vector<EdgeRef> non_boundary_hull_edges;   // hull-to-hull chords
  std::vector<std::pair<EdgeRef, EdgeRef>> leaf_line_crossings;

  bool all_true() const {
    return is_tree && high_degree_on_hull && balanced_lines &&
           hull_edges_are_boundary && leaf_lines_uncrossed;
  }
};

inline StructureReport verify_blocking_structure(const PointSet& ps,
                                                 const RemovalSet& removal) {
  const int n2 = ps.size();
  if (n2 % 2 != 0) throw Error(ErrorCode::OddInput, "odd point count");
  const int n = n2 / 2;
  if (removal.edge_count() != n)
    throw Error(ErrorCode::WrongSize, "structure checks need exactly n edges");
  removal.check_indices(ps);

  StructureReport report;
  report.is_tree = removal.is_tree();

  const std::vector<int> hull = convex_hull(ps);
  // The boundary-edge and leaf-line conclusions only hold when the hull has
  // at most n+1 vertices (a star at a convex-position vertex blocks with a
  // long hull chord, so the small-hull hypothesis is essential). With a
  // larger hull the evidence lists are still filled in, but the two
  // booleans stay vacuously true.
  const bool small_hull = static_cast<int>(hull.size()) <= n + 1;
  std::vector<char> on_hull(static_cast<size_t>(n2), 0);
  for (int v : hull) on_hull[static_cast<size_t>(v)] = 1;
  std::set<EdgeRef> hull_boundary;
  for (size_t k = 0; k < hull.size(); ++k)
    hull_boundary.insert(EdgeRef(hull[k], hull[(k + 1) % hull.size()]));

  report.high_degree_on_hull = true;
  for (int v : removal.vertices())
    if (removal.degree(v) >= 2 && !on_hull[static_cast<size_t>(v)]) {
      report.high_degree_on_hull = false;
      report.high_degree_violations.push_back(v);
    }

  std::vector<char> red(static_cast<size_t>(n2), 0);
  for (int v : removal.vertices()) red[static_cast<size_t>(v)] = 1;

  report.balanced_lines = true;
  report.hull_edges_are_boundary = true;
  report.leaf_lines_uncrossed = true;
  for (const EdgeRef& e : removal.edges()) {
    const Point& u = ps[e.i];
    const Point& v = ps[e.j];
    long long left_red = 0, left_blue = 0, right_red = 0, right_blue = 0;
    for (int p = 0; p < n2; ++p) {
      if (p == e.i || p == e.j) continue;
      const int o = sign(cross(u, v, ps[p]));
      if (o == 0) continue;  // excluded by general position
      if (o > 0)
        (red[static_cast<size_t>(p)] ? left_red : left_blue)++;
      else
        (red[static_cast<size_t>(p)] ? right_red : right_blue)++;
    }
    report.per_edge_balance[e] = {left_red - left_blue, right_red - right_blue};
    if (left_red != left_blue || right_red != right_blue)
      report.balanced_lines = false;

    if (on_hull[static_cast<size_t>(e.i)] && on_hull[static_cast<size_t>(e.j)] &&
        hull_boundary.count(e) == 0) {
      if (small_hull) report.hull_edges_are_boundary = false;
      report.non_boundary_hull_edges.push_back(e);
    }

    const bool leaf_edge =
        removal.degree(e.i) == 1 || removal.degree(e.j) == 1;
    if (leaf_edge) {
      for (const EdgeRef& f : removal.edges()) {
        if (f == e) continue;
        const int oi = sign(cross(u, v, ps[f.i]));
        const int oj = sign(cross(u, v, ps[f.j]));
        if (oi * oj < 0) {
          if (small_hull) report.leaf_lines_uncrossed = false;
          report.leaf_line_crossings.emplace_back(e, f);
        }
      }
    }
  }
  return report;
}

struct HGResult {
  int min_blocking_size = 0;
  int h = 0;
  RemovalSet witness;
};

namespace detail {

using MatchMask = std::bitset<512>;

struct HittingSetSearch {
  std::vector<std::vector<int>> matching_edges;  // edge ids per matching
  std::vector<MatchMask> edge_hits;              // matchings hit per edge
  int edge_count = 0;
  int best = 0;

  // Greedy packing of pairwise edge-disjoint matchings among the unhit
  // ones; each needs its own removal edge, so the pack size lower-bounds
  // the remaining budget.
  int lower_bound(const MatchMask& unhit, const std::vector<char>& edge_used) const {
    int packed = 0;
    std::vector<char> edge_taken(static_cast<size_t>(edge_count), 0);
    for (size_t m = 0; m < matching_edges.size(); ++m) {
      if (!unhit.test(m)) continue;
      bool disjoint = true;
      for (int e : matching_edges[m])
        if (edge_taken[static_cast<size_t>(e)] || edge_used[static_cast<size_t>(e)]) {
          disjoint = false;
          break;
        }
      if (!disjoint) continue;
      for (int e : matching_edges[m]) edge_taken[static_cast<size_t>(e)] = 1;
      ++packed;
    }
    return packed;
  }

  bool solve(const MatchMask& unhit, int budget, std::vector<char>& edge_used,
             std::vector<int>& chosen, std::vector<int>& out,
             bool lexicographic, int min_edge) {
    if (unhit.none()) {
      out = chosen;
      return true;
    }
    if (budget == 0) return false;
    if (lower_bound(unhit, edge_used) > budget) return false;
    if (lexicographic) {
      // Fixed-size search in increasing edge order: first solution found is
      // the lexicographically least witness.
      for (int e = min_edge; e < edge_count; ++e) {
        if (edge_used[static_cast<size_t>(e)]) continue;
        if ((edge_hits[static_cast<size_t>(e)] & unhit).none()) continue;
        edge_used[static_cast<size_t>(e)] = 1;
        chosen.push_back(e);
        if (solve(unhit & ~edge_hits[static_cast<size_t>(e)], budget - 1,
                  edge_used, chosen, out, true, e + 1))
          return true;
        chosen.pop_back();
        edge_used[static_cast<size_t>(e)] = 0;
      }
      return false;
    }
    // Branch on the unhit matching with the fewest usable edges.
    int pick = -1, pick_options = edge_count + 1;
    for (size_t m = 0; m < matching_edges.size(); ++m) {
      if (!unhit.test(m)) continue;
      int options = 0;
      for (int e : matching_edges[m])
        if (!edge_used[static_cast<size_t>(e)]) ++options;
      if (options < pick_options) {
        pick_options = options;
        pick = static_cast<int>(m);
      }
    }
    if (pick < 0 || pick_options == 0) return false;
    for (int e : matching_edges[static_cast<size_t>(pick)]) {
      if (edge_used[static_cast<size_t>(e)]) continue;
      edge_used[static_cast<size_t>(e)] = 1;
      chosen.push_back(e);
      if (solve(unhit & ~edge_hits[static_cast<size_t>(e)], budget - 1,
                edge_used, chosen, out, false, 0))
        return true;
      chosen.pop_back();
      edge_used[static_cast<size_t>(e)] = 0;
    }
    return false;
  }
};

}  // namespace detail

// Minimum number of edges whose removal eliminates every non-crossing
// perfect matching (minimum hitting set over the matching list), with the
// lexicographically least optimal witness. h(G) is one less.
inline HGResult min_blocking_size(const PointSet& ps) {
  if (ps.size() > 10)
    throw Error(ErrorCode::TooLarge, "hitting-set guard: more than 10 points");
  const std::vector<Matching> matchings = enumerate_ncpm(ps);
  if (matchings.size() > 512)
    throw Error(ErrorCode::TooLarge, "too many matchings for the mask search");
  if (matchings.empty())
    throw Error(ErrorCode::BadInput, "no matchings to block");

  // Only edges that occur in some matching matter.
  std::map<EdgeRef, int> edge_id;
  std::vector<EdgeRef> edge_list;
  for (const Matching& m : matchings)
    for (const EdgeRef& e : m.edges)
      if (edge_id.emplace(e, 0).second) edge_list.push_back(e);
  std::sort(edge_list.begin(), edge_list.end());
  for (size_t k = 0; k < edge_list.size(); ++k) edge_id[edge_list[k]] = static_cast<int>(k);

  detail::HittingSetSearch search;
  search.edge_count = static_cast<int>(edge_list.size());
  search.edge_hits.assign(edge_list.size(), 0);
  for (size_t m = 0; m < matchings.size(); ++m) {
    std::vector<int> ids;
    for (const EdgeRef& e : matchings[m].edges) {
      const int id = edge_id[e];
      ids.push_back(id);
      search.edge_hits[static_cast<size_t>(id)].set(m);
    }
    search.matching_edges.push_back(std::move(ids));
  }

  detail::MatchMask all;
  for (size_t m = 0; m < matchings.size(); ++m) all.set(m);
  std::vector<char> edge_used(edge_list.size(), 0);
  std::vector<int> chosen, found;
  int size = 0;
  for (;; ++size) {
    chosen.clear();
    if (search.solve(all, size, edge_used, chosen, found, false, 0)) break;
  }
  // Re-run at the optimum in increasing edge order for the least witness.
  chosen.clear();
  std::vector<int> lex;
  std::fill(edge_used.begin(), edge_used.end(), 0);
  if (!search.solve(all, size, edge_used, chosen, lex, true, 0))
    throw Error(ErrorCode::ConstructionFailed, "witness re-search failed");

  HGResult result;
  result.min_blocking_size = size;
  result.h = size - 1;
  std::vector<EdgeRef> witness_edges;
  for (int e : lex) witness_edges.push_back(edge_list[static_cast<size_t>(e)]);
  result.witness = RemovalSet(std::move(witness_edges));
  return result;
}

struct OddSplit {
  std::vector<int> odd_set;
  RemovalSet removal;
};

// Hull chords from p0 that leave an odd number of points on each side
// cannot appear in any non-crossing perfect matching; removing every other
// edge at p0 therefore blocks.
inline OddSplit odd_split_blocking(const PointSet& ps, int p0) {
  ps.check_index(p0);
  if (ps.size() % 2 != 0) throw Error(ErrorCode::OddInput, "odd point count");
  const std::vector<int> hull = convex_hull(ps);
  bool p0_on_hull = false;
  std::vector<char> on_hull(static_cast<size_t>(ps.size()), 0);
  for (int v : hull) {
    on_hull[static_cast<size_t>(v)] = 1;
    if (v == p0) p0_on_hull = true;
  }
  if (!p0_on_hull)
    throw Error(ErrorCode::NotHullVertex, "p0 must be a hull vertex");

  OddSplit out;
  std::set<int> odd;
  for (int p : hull) {
    if (p == p0) continue;
    long long left = 0;
    for (int q = 0; q < ps.size(); ++q) {
      if (q == p0 || q == p) continue;
      if (sign(cross(ps[p0], ps[p], ps[q])) > 0) ++left;
    }
    // Total excluding the chord endpoints is even, so the sides share parity.
    if (left % 2 == 1) odd.insert(p);
  }
  out.odd_set.assign(odd.begin(), odd.end());
  std::vector<EdgeRef> edges;
  for (int q = 0; q < ps.size(); ++q)
    if (q != p0 && odd.count(q) == 0) edges.emplace_back(p0, q);
  out.removal = RemovalSet(std::move(edges));
  if (ps.size() <= kEnumerationGuard && !is_blocking(ps, out.removal))
    throw Error(ErrorCode::ConstructionFailed,
                "odd-split removal unexpectedly fails to block");
  return out;
}

}  // namespace ncm
