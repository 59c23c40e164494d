#pragma once

#include <array>
#include <cstdlib>
#include <memory>
#include <optional>
#include <vector>

#include "ncm/geom.hpp"

namespace ncm {

enum class Side { Left, Right, OnLine };

// Point identity inside a bichromatic instance: color plus index into the
// red or blue sequence.
struct ColorRef {
  bool is_red{};
  int index{};

  friend bool operator==(const ColorRef& a, const ColorRef& b) {
    return a.is_red == b.is_red && a.index == b.index;
  }
};

// A balancing line through two input points. "Left" is the CCW side of the
// directed line pa -> pb. Anchors carry a symbolic side (or OnLine, in
// which case they are counted on neither side). Non-anchor points that fall
// exactly on the line (possible when reds are edge midpoints) carry an
// explicit side in `extra_on_line`.
struct Cut {
  ColorRef anchor_a;
  ColorRef anchor_b;
  Side side_a{Side::Left};
  Side side_b{Side::Left};
  Point pa;
  Point pb;
  std::vector<std::pair<ColorRef, Side>> extra_on_line;

  Point direction() const { return Point{pb.x - pa.x, pb.y - pa.y}; }

  Side side_of(const ColorRef& who, const Point& p) const {
    if (who == anchor_a) return side_a;
    if (who == anchor_b) return side_b;
    for (const auto& [ref, s] : extra_on_line)
      if (ref == who) return s;
    const int o = sign(cross(pa, pb, p));
    if (o > 0) return Side::Left;
    if (o < 0) return Side::Right;
    throw Error(ErrorCode::NotGeneralPosition,
                "point on cut line without a recorded side");
  }
};

// Recomputes the side counts of a cut from scratch and checks red-balance
// and blue-balance exactly.
inline bool verify_cut_balance(const std::vector<Point>& red,
                               const std::vector<Point>& blue,
                               const Cut& cut) {
  long long bal_red = 0, bal_blue = 0;
  auto tally = [&](bool is_red, int idx, const Point& p) {
    Side s;
    try {
      s = cut.side_of(ColorRef{is_red, idx}, p);
    } catch (const Error&) {
      return false;
    }
    if (s == Side::OnLine) return true;
    (is_red ? bal_red : bal_blue) += (s == Side::Left ? 1 : -1);
    return true;
  };
  for (int i = 0; i < static_cast<int>(red.size()); ++i)
    if (!tally(true, i, red[static_cast<size_t>(i)])) return false;
  for (int i = 0; i < static_cast<int>(blue.size()); ++i)
    if (!tally(false, i, blue[static_cast<size_t>(i)])) return false;
  return bal_red == 0 && bal_blue == 0;
}

namespace detail {

// Fixed enumeration order of the anchor side assignments.
inline constexpr std::array<std::pair<Side, Side>, 9> kAnchorAssignments = {{
    {Side::Left, Side::Left},
    {Side::Left, Side::Right},
    {Side::Right, Side::Left},
    {Side::Right, Side::Right},
    {Side::Left, Side::OnLine},
    {Side::Right, Side::OnLine},
    {Side::OnLine, Side::Left},
    {Side::OnLine, Side::Right},
    {Side::OnLine, Side::OnLine},
}};

}  // namespace detail

// Enumerates balancing cuts in deterministic lexicographic order of
// (anchor pair, assignment), invoking `visit` for each until it returns
// true. Returns whether a cut was accepted.
//
// Completeness of the pair search: any balancing line can be translated
// until it touches an input point without changing the strict side counts,
// then rotated about that point until it touches a second one; the points
// it sweeps over en route end up on the line with a symbolic side. Hence
// every balancing line is represented by some point pair plus side
// assignment, and the exhaustive scan cannot miss.
template <typename Visitor>
bool for_each_ham_sandwich_cut(const std::vector<Point>& red,
                               const std::vector<Point>& blue,
                               Visitor&& visit) {
  const int nr = static_cast<int>(red.size());
  const int nb = static_cast<int>(blue.size());
  const int n = nr + nb;
  const int red_parity = nr % 2;
  const int blue_parity = nb % 2;
  auto point_at = [&](int id) -> const Point& {
    return id < nr ? red[static_cast<size_t>(id)]
                   : blue[static_cast<size_t>(id - nr)];
  };
  auto ref_at = [&](int id) -> ColorRef {
    return id < nr ? ColorRef{true, id} : ColorRef{false, id - nr};
  };

  std::vector<int> online;  // non-anchor ids exactly on the candidate line
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      const Point& pa = point_at(a);
      const Point& pb = point_at(b);
      if (pa == pb) continue;
      long long red_left = 0, red_right = 0, blue_left = 0, blue_right = 0;
      online.clear();
      for (int k = 0; k < n; ++k) {
        if (k == a || k == b) continue;
        const int o = sign(cross(pa, pb, point_at(k)));
        if (o == 0) {
          online.push_back(k);
          continue;
        }
        if (k < nr)
          (o > 0 ? red_left : red_right)++;
        else
          (o > 0 ? blue_left : blue_right)++;
      }
      int extra_red = 0, extra_blue = 0;
      for (int id : online) (id < nr ? extra_red : extra_blue)++;

      for (const auto& [sa, sb] : detail::kAnchorAssignments) {
        int on_red = 0, on_blue = 0;
        long long rl = red_left, rr = red_right;
        long long bl = blue_left, br = blue_right;
        auto place = [&](int id, Side s) {
          const bool isr = id < nr;
          if (s == Side::OnLine) {
            (isr ? on_red : on_blue)++;
          } else if (s == Side::Left) {
            (isr ? rl : bl)++;
          } else {
            (isr ? rr : br)++;
          }
        };
        place(a, sa);
        place(b, sb);
        // A color has an uncounted on-line anchor exactly when its total
        // count is odd; otherwise strict balance is impossible anyway.
        if (on_red != red_parity || on_blue != blue_parity) continue;

        // Distribute on-line non-anchor points to restore balance.
        const long long need_red_left = (extra_red + (rr - rl));
        const long long need_blue_left = (extra_blue + (br - bl));
        if (need_red_left < 0 || need_red_left % 2 != 0 ||
            need_red_left / 2 > extra_red)
          continue;
        if (need_blue_left < 0 || need_blue_left % 2 != 0 ||
            need_blue_left / 2 > extra_blue)
          continue;

        Cut cut;
        cut.anchor_a = ref_at(a);
        cut.anchor_b = ref_at(b);
        cut.side_a = sa;
        cut.side_b = sb;
        cut.pa = pa;
        cut.pb = pb;
        long long red_to_left = need_red_left / 2;
        long long blue_to_left = need_blue_left / 2;
        for (int id : online) {
          long long& budget = (id < nr) ? red_to_left : blue_to_left;
          const Side s = budget > 0 ? Side::Left : Side::Right;
          if (budget > 0) --budget;
          cut.extra_on_line.emplace_back(ref_at(id), s);
        }
        if (visit(cut)) return true;
      }
    }
  }
  return false;
}

// First balancing cut in enumeration order. When |red| and |blue| are both
// odd the cut passes through one red and one blue anchor, both OnLine.
inline Cut ham_sandwich_cut(const std::vector<Point>& red,
                            const std::vector<Point>& blue) {
  if (red.empty() || blue.empty())
    throw Error(ErrorCode::BadInput, "both colors must be nonempty");
  std::optional<Cut> found;
  for_each_ham_sandwich_cut(red, blue, [&](const Cut& c) {
    found = c;
    return true;
  });
  if (!found)
    throw Error(ErrorCode::NoCutFound,
                "no balancing line found; input likely violates general "
                "position");
  return *found;
}

inline Cut ham_sandwich_cut(const PointSet& red, const PointSet& blue) {
  return ham_sandwich_cut(red.points(), blue.points());
}

// ---------------------------------------------------------------------------
// Recursive balanced subdivision with forbidden-edge midpoints as reds.

struct SubdivisionNode {
  std::vector<int> blue_members;       // indices into the source point set
  std::vector<EdgeRef> active_edges;   // forbidden edges fully inside
  std::optional<Cut> cut;              // set on internal nodes
  int moved_blue = -1;                 // odd-fix reassignment, if any
  int depth = 0;
  std::unique_ptr<SubdivisionNode> left;
  std::unique_ptr<SubdivisionNode> right;

  bool is_leaf() const { return left == nullptr; }
  long long blue_count() const {
    return static_cast<long long>(blue_members.size());
  }
  long long red_count() const {
    return static_cast<long long>(active_edges.size());
  }
  // H = R - B/2; B is even at every node.
  long long deficit() const { return red_count() - blue_count() / 2; }
};

struct SubdivisionTree {
  std::unique_ptr<SubdivisionNode> root;
  int stop_threshold = 0;

  template <typename F>
  void for_each_node(F&& f) const {
    for_each_node_impl(root.get(), f);
  }
  template <typename F>
  void for_each_leaf(F&& f) const {
    auto visit = [&](const SubdivisionNode& n) {
      if (n.is_leaf()) f(n);
    };
    for_each_node_impl(root.get(), visit);
  }

 private:
  template <typename F>
  static void for_each_node_impl(const SubdivisionNode* n, F& f) {
    if (!n) return;
    f(*n);
    for_each_node_impl(n->left.get(), f);
    for_each_node_impl(n->right.get(), f);
  }
};

namespace detail {

inline Int128 abs128(Int128 v) { return v < 0 ? -v : v; }

struct SubdivisionBuilder {
  const PointSet& blue;
  std::vector<Point> doubled;  // 2x coordinates; midpoints stay integral
  int stop_threshold;

  SubdivisionBuilder(const PointSet& b, int threshold)
      : blue(b), stop_threshold(threshold) {
    doubled.reserve(static_cast<size_t>(b.size()));
    for (const Point& p : b.points()) doubled.push_back(Point{2 * p.x, 2 * p.y});
  }

  Point midpoint(const EdgeRef& e) const {
    const Point& u = blue[e.i];
    const Point& v = blue[e.j];
    return Point{u.x + v.x, u.y + v.y};
  }

  std::unique_ptr<SubdivisionNode> build(std::vector<int> members,
                                         std::vector<EdgeRef> edges,
                                         int depth) {
    auto node = std::make_unique<SubdivisionNode>();
    node->blue_members = std::move(members);
    node->active_edges = std::move(edges);
    node->depth = depth;
    if (node->blue_count() < stop_threshold) return node;
    split(*node);
    return node;
  }

  void split(SubdivisionNode& node) {
    std::vector<Point> reds;
    reds.reserve(node.active_edges.size());
    for (const EdgeRef& e : node.active_edges) reds.push_back(midpoint(e));
    std::vector<Point> blues;
    blues.reserve(node.blue_members.size());
    for (int m : node.blue_members) blues.push_back(doubled[static_cast<size_t>(m)]);

    const long long b_parent = node.blue_count();
    const long long h_parent = node.deficit();

    // No reds at all: a cut only needs to bisect the blues; synthesize one
    // red at the first blue so the generic search applies unchanged.
    const bool phantom_red = reds.empty();
    if (phantom_red) reds.push_back(blues.front());

    const bool accepted = for_each_ham_sandwich_cut(
        reds, blues, [&](const Cut& cut) {
          return try_cut(node, cut, b_parent, h_parent);
        });
    if (!accepted)
      throw Error(ErrorCode::NoCutFound,
                  "subdivision found no cut satisfying the count recursions");
  }

  // Attempts one candidate cut; fills in children and returns true when the
  // per-step count recursions hold for both of them.
  bool try_cut(SubdivisionNode& node, const Cut& cut, long long b_parent,
               long long h_parent) {
    const size_t nb = node.blue_members.size();
    std::vector<Side> sides(nb);
    std::vector<Int128> offsets(nb);
    long long left_count = 0;
    for (size_t k = 0; k < nb; ++k) {
      const Point& p = doubled[static_cast<size_t>(node.blue_members[k])];
      offsets[k] = cross(cut.pa, cut.pb, p);
      Side s;
      try {
        s = cut.side_of(ColorRef{false, static_cast<int>(k)}, p);
      } catch (const Error&) {
        return false;
      }
      if (s == Side::OnLine) return false;  // blues are never uncounted here
      sides[k] = s;
      if (s == Side::Left) ++left_count;
    }
    if (left_count * 2 != static_cast<long long>(nb)) return false;

    int moved = -1;
    if (left_count % 2 != 0) {
      // Translate the cut to the nearest strictly-off-line blue point and
      // hand that point to the far side; perpendicular distances compare
      // via |cross| on the shared direction vector.
      int best_left = -1, best_right = -1;
      for (size_t k = 0; k < nb; ++k) {
        if (offsets[k] == 0) continue;
        int& best = (sides[k] == Side::Left) ? best_left : best_right;
        if (best < 0 ||
            abs128(offsets[k]) < abs128(offsets[static_cast<size_t>(best)]) ||
            (abs128(offsets[k]) == abs128(offsets[static_cast<size_t>(best)]) &&
             node.blue_members[k] < node.blue_members[static_cast<size_t>(best)]))
          best = static_cast<int>(k);
      }
      if (best_left < 0 && best_right < 0) return false;
      int chosen;
      if (best_left < 0)
        chosen = best_right;
      else if (best_right < 0)
        chosen = best_left;
      else {
        const Int128 dl = abs128(offsets[static_cast<size_t>(best_left)]);
        const Int128 dr = abs128(offsets[static_cast<size_t>(best_right)]);
        if (dl != dr)
          chosen = dl < dr ? best_left : best_right;
        else
          chosen = node.blue_members[static_cast<size_t>(best_left)] <
                           node.blue_members[static_cast<size_t>(best_right)]
                       ? best_left
                       : best_right;
      }
      sides[static_cast<size_t>(chosen)] =
          sides[static_cast<size_t>(chosen)] == Side::Left ? Side::Right
                                                           : Side::Left;
      moved = node.blue_members[static_cast<size_t>(chosen)];
    }

    std::vector<int> left_members, right_members;
    std::vector<char> in_left(doubled.size(), 0), in_right(doubled.size(), 0);
    for (size_t k = 0; k < nb; ++k) {
      const int m = node.blue_members[k];
      if (sides[k] == Side::Left) {
        left_members.push_back(m);
        in_left[static_cast<size_t>(m)] = 1;
      } else {
        right_members.push_back(m);
        in_right[static_cast<size_t>(m)] = 1;
      }
    }
    std::vector<EdgeRef> left_edges, right_edges;
    for (const EdgeRef& e : node.active_edges) {
      if (in_left[static_cast<size_t>(e.i)] && in_left[static_cast<size_t>(e.j)])
        left_edges.push_back(e);
      else if (in_right[static_cast<size_t>(e.i)] &&
               in_right[static_cast<size_t>(e.j)])
        right_edges.push_back(e);
    }

    auto recursion_ok = [&](long long b_child, long long r_child) {
      if (2 * b_child < b_parent - 2) return false;
      const long long h_child = r_child - b_child / 2;
      return 2 * h_child <= h_parent + 1;
    };
    if (!recursion_ok(static_cast<long long>(left_members.size()),
                      static_cast<long long>(left_edges.size())) ||
        !recursion_ok(static_cast<long long>(right_members.size()),
                      static_cast<long long>(right_edges.size())))
      return false;

    node.cut = cut;
    node.moved_blue = moved;
    node.left = build(std::move(left_members), std::move(left_edges),
                      node.depth + 1);
    node.right = build(std::move(right_members), std::move(right_edges),
                       node.depth + 1);
    return true;
  }
};

}  // namespace detail

inline SubdivisionTree recursive_subdivision(
    const PointSet& blue, const std::vector<EdgeRef>& forbidden,
    int stop_threshold, bool assume_general_position = false) {
  if (blue.size() % 2 != 0)
    throw Error(ErrorCode::OddInput, "subdivision needs an even point count");
  if (stop_threshold < 2)
    throw Error(ErrorCode::BadInput, "stop threshold must be at least 2");
  if (!assume_general_position && !blue.is_general_position())
    throw Error(ErrorCode::NotGeneralPosition,
                "subdivision input not in general position");
  for (const EdgeRef& e : forbidden) {
    blue.check_index(e.i);
    blue.check_index(e.j);
  }
  detail::SubdivisionBuilder builder(blue, stop_threshold);
  SubdivisionTree tree;
  tree.stop_threshold = stop_threshold;
  std::vector<int> all(static_cast<size_t>(blue.size()));
  for (int i = 0; i < blue.size(); ++i) all[static_cast<size_t>(i)] = i;
  tree.root = builder.build(std::move(all), forbidden, 0);
  return tree;
}

// Structural check of a finished tree: leaf partition, per-node edge
// locality, evenness, and the B/H recursions on every edge of the tree.
inline bool validate_subdivision(const SubdivisionTree& tree,
                                 const PointSet& blue,
                                 std::string* why = nullptr) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (!tree.root) return fail("empty tree");
  std::vector<int> seen(static_cast<size_t>(blue.size()), 0);
  bool ok = true;
  std::string reason;
  tree.for_each_node([&](const SubdivisionNode& n) {
    if (!ok) return;
    if (n.blue_count() % 2 != 0) {
      ok = false;
      reason = "odd node";
      return;
    }
    std::vector<char> member(static_cast<size_t>(blue.size()), 0);
    for (int m : n.blue_members) member[static_cast<size_t>(m)] = 1;
    for (const EdgeRef& e : n.active_edges)
      if (!member[static_cast<size_t>(e.i)] || !member[static_cast<size_t>(e.j)]) {
        ok = false;
        reason = "active edge leaves its node";
        return;
      }
    if (n.is_leaf()) {
      if (n.blue_count() >= tree.stop_threshold) {
        ok = false;
        reason = "oversized leaf";
        return;
      }
      for (int m : n.blue_members) seen[static_cast<size_t>(m)]++;
    } else {
      for (const SubdivisionNode* c : {n.left.get(), n.right.get()}) {
        if (2 * c->blue_count() < n.blue_count() - 2 ||
            2 * c->deficit() > n.deficit() + 1) {
          ok = false;
          reason = "count recursion violated";
          return;
        }
      }
      if (n.left->blue_count() + n.right->blue_count() != n.blue_count()) {
        ok = false;
        reason = "children do not partition parent";
        return;
      }
    }
  });
  if (!ok) return fail(reason);
  for (int c : seen)
    if (c != 1) return fail("leaves do not partition the point set");
  return true;
}

}  // namespace ncm
