#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "ncm/geom.hpp"

namespace ncm {

// A forbidden edge set together with the derived structure of the subgraph
// it spans: vertex set, adjacency, degrees, connected components.
class RemovalSet {
 public:
  RemovalSet() = default;

  explicit RemovalSet(std::vector<EdgeRef> edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);
    for (const EdgeRef& e : edges_) {
      adjacency_[e.i].push_back(e.j);
      adjacency_[e.j].push_back(e.i);
    }
    for (const auto& [v, nbrs] : adjacency_) {
      vertices_.push_back(v);
      degree_[v] = static_cast<int>(nbrs.size());
    }
    compute_components();
  }

  const std::vector<EdgeRef>& edges() const { return edges_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<int>& vertices() const { return vertices_; }
  int degree(int v) const {
    auto it = degree_.find(v);
    return it == degree_.end() ? 0 : it->second;
  }
  const std::vector<int>& neighbors(int v) const {
    static const std::vector<int> kEmpty;
    auto it = adjacency_.find(v);
    return it == adjacency_.end() ? kEmpty : it->second;
  }
  bool contains(const EdgeRef& e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }
  bool has_vertex(int v) const { return degree_.count(v) != 0; }

  // Vertex sets of the connected components, each sorted; components
  // ordered by decreasing size, ties by smallest vertex.
  const std::vector<std::vector<int>>& components() const {
    return components_;
  }

  bool is_forest() const {
    // Each component with k vertices and >= k edges has a cycle.
    std::map<int, int> comp_of;
    for (size_t c = 0; c < components_.size(); ++c)
      for (int v : components_[c]) comp_of[v] = static_cast<int>(c);
    std::vector<int> edge_count(components_.size(), 0);
    for (const EdgeRef& e : edges_) edge_count[static_cast<size_t>(comp_of[e.i])]++;
    for (size_t c = 0; c < components_.size(); ++c)
      if (edge_count[c] != static_cast<int>(components_[c].size()) - 1)
        return false;
    return true;
  }

  bool is_tree() const { return components_.size() == 1 && is_forest(); }

  void check_indices(const PointSet& ps) const {
    for (const EdgeRef& e : edges_) {
      ps.check_index(e.i);
      ps.check_index(e.j);
    }
  }

 private:
  void compute_components() {
    std::set<int> unseen(vertices_.begin(), vertices_.end());
    while (!unseen.empty()) {
      std::vector<int> comp;
      std::vector<int> stack{*unseen.begin()};
      unseen.erase(unseen.begin());
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        comp.push_back(v);
        for (int w : adjacency_[v]) {
          auto it = unseen.find(w);
          if (it != unseen.end()) {
            unseen.erase(it);
            stack.push_back(w);
          }
        }
      }
      std::sort(comp.begin(), comp.end());
      components_.push_back(std::move(comp));
    }
    std::sort(components_.begin(), components_.end(),
              [](const std::vector<int>& a, const std::vector<int>& b) {
                if (a.size() != b.size()) return a.size() > b.size();
                return a.front() < b.front();
              });
  }

  std::vector<EdgeRef> edges_;
  std::vector<int> vertices_;
  std::map<int, std::vector<int>> adjacency_;
  std::map<int, int> degree_;
  std::vector<std::vector<int>> components_;
};

}  // namespace ncm
