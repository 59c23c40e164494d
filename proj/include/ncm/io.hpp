#pragma once

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncm/blocking.hpp"
#include "ncm/extremal.hpp"
#include "ncm/geom.hpp"
#include "ncm/lattice.hpp"
#include "ncm/matcher.hpp"
#include "ncm/rand_lab.hpp"
#include "ncm/removal.hpp"

namespace ncm {

namespace detail {

// Strips comments (# to end of line) and blank lines, yielding data lines.
inline std::vector<std::string> data_lines(std::istream& in) {
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream probe(line);
    std::string word;
    if (probe >> word) out.push_back(line);
  }
  return out;
}

}  // namespace detail

// Point-set text format: `n`, then n lines `x y`.
inline PointSet read_point_set(std::istream& in,
                               bool require_general_position = false) {
  const std::vector<std::string> lines = detail::data_lines(in);
  if (lines.empty())
    throw Error(ErrorCode::BadInput, "empty point-set file");
  std::istringstream head(lines[0]);
  long long n = -1;
  if (!(head >> n) || n < 0)
    throw Error(ErrorCode::BadInput, "bad point count line");
  if (static_cast<size_t>(n) + 1 != lines.size())
    throw Error(ErrorCode::BadInput, "point count does not match line count");
  std::vector<Point> pts;
  for (long long i = 0; i < n; ++i) {
    std::istringstream row(lines[static_cast<size_t>(i + 1)]);
    Point p;
    std::string extra;
    if (!(row >> p.x >> p.y) || (row >> extra))
      throw Error(ErrorCode::BadInput, "bad point line: " +
                                           lines[static_cast<size_t>(i + 1)]);
    pts.push_back(p);
  }
  return PointSet::make(std::move(pts), require_general_position);
}

inline void write_point_set(std::ostream& out, const PointSet& ps) {
  out << ps.size() << "\n";
  for (const Point& p : ps.points()) out << p.x << " " << p.y << "\n";
}

// Edge-list format shared by matchings and removal sets: `i j` per line.
inline std::vector<EdgeRef> read_edge_list(std::istream& in) {
  std::vector<EdgeRef> edges;
  for (const std::string& line : detail::data_lines(in)) {
    std::istringstream row(line);
    int i, j;
    std::string extra;
    if (!(row >> i >> j) || (row >> extra))
      throw Error(ErrorCode::BadInput, "bad edge line: " + line);
    edges.emplace_back(i, j);
  }
  return edges;
}

inline void write_edge_list(std::ostream& out,
                            const std::vector<EdgeRef>& edges) {
  for (const EdgeRef& e : edges) out << e.i << " " << e.j << "\n";
}

namespace detail {

inline Rat parse_rat(const std::string& token) {
  const size_t slash = token.find('/');
  try {
    if (slash == std::string::npos) return Rat(BigInt(token));
    const BigInt num(token.substr(0, slash));
    const BigInt den(token.substr(slash + 1));
    if (den == 0) throw Error(ErrorCode::BadInput, "zero denominator");
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw Error(ErrorCode::BadInput, "bad fraction: " + token);
  }
}

inline std::string rat_str(const Rat& v) {
  std::ostringstream out;
  if (denominator(v) == 1)
    out << numerator(v);
  else
    out << numerator(v) << "/" << denominator(v);
  return out.str();
}

}  // namespace detail

// ConvexBody format: `k`, then k lines `p/q r/s` (CCW).
inline ConvexBody read_convex_body(std::istream& in) {
  const std::vector<std::string> lines = detail::data_lines(in);
  if (lines.empty()) throw Error(ErrorCode::BadInput, "empty body file");
  std::istringstream head(lines[0]);
  long long k = -1;
  if (!(head >> k) || k < 3)
    throw Error(ErrorCode::BadInput, "bad vertex count line");
  if (static_cast<size_t>(k) + 1 != lines.size())
    throw Error(ErrorCode::BadInput, "vertex count does not match line count");
  std::vector<RatPoint> verts;
  for (long long i = 0; i < k; ++i) {
    std::istringstream row(lines[static_cast<size_t>(i + 1)]);
    std::string xs, ys, extra;
    if (!(row >> xs >> ys) || (row >> extra))
      throw Error(ErrorCode::BadInput, "bad vertex line");
    verts.push_back(RatPoint{detail::parse_rat(xs), detail::parse_rat(ys)});
  }
  return ConvexBody::make(std::move(verts));
}

inline void write_convex_body(std::ostream& out, const ConvexBody& body) {
  out << body.size() << "\n";
  for (const RatPoint& v : body.vertices())
    out << detail::rat_str(v.x) << " " << detail::rat_str(v.y) << "\n";
}

inline void write_lattice_triangle(std::ostream& out,
                                   const LatticeTriangle& t) {
  out << 3 << "\n";
  for (const RatPoint& v : t.v)
    out << detail::rat_str(v.x) << " " << detail::rat_str(v.y) << "\n";
}

// ---- JSON ----

inline nlohmann::json to_json(const ExperimentReport& rep) {
  nlohmann::json j;
  j["experiment"] = rep.experiment;
  nlohmann::json params = rep.params;
  for (const auto& [k, v] : rep.text_params) params[k] = v;
  j["params"] = params;
  j["seed"] = rep.seed;
  j["trials"] = rep.trials;
  j["outcomes"] = rep.outcomes;
  j["aggregates"] = rep.aggregates;
  return j;
}

inline nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, ok] : cert.checks) j[name] = ok;
  return j;
}

inline nlohmann::json edge_json(const EdgeRef& e) {
  return nlohmann::json::array({e.i, e.j});
}

inline nlohmann::json to_json(const StructureReport& rep) {
  nlohmann::json j;
  j["is_tree"] = rep.is_tree;
  j["high_degree_on_hull"] = rep.high_degree_on_hull;
  j["balanced_lines"] = rep.balanced_lines;
  j["hull_edges_are_boundary"] = rep.hull_edges_are_boundary;
  j["leaf_lines_uncrossed"] = rep.leaf_lines_uncrossed;
  j["all_true"] = rep.all_true();
  nlohmann::json balance = nlohmann::json::array();
  for (const auto& [e, lr] : rep.per_edge_balance)
    balance.push_back({{"edge", edge_json(e)},
                       {"left", lr.first},
                       {"right", lr.second}});
  j["per_edge_balance"] = balance;
  nlohmann::json viol = nlohmann::json::array();
  for (int v : rep.high_degree_violations) viol.push_back(v);
  j["high_degree_violations"] = viol;
  return j;
}

inline nlohmann::json matching_json(const Matching& m) {
  nlohmann::json edges = nlohmann::json::array();
  for (const EdgeRef& e : m.edges) edges.push_back(edge_json(e));
  return edges;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::BadInput, "cannot write " + path);
  out << content;
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline PointSet load_point_set(const std::string& path,
                               bool require_general_position = false) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  return read_point_set(in, require_general_position);
}

inline std::vector<EdgeRef> load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  return read_edge_list(in);
}

inline ConvexBody load_convex_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot read " + path);
  return read_convex_body(in);
}

}  // namespace ncm
