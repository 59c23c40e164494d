// Batch CLI over the ncm library: matching solvers, blocking verification,
// configuration generators, Monte Carlo experiments, lattice constructions,
// and SVG rendering. Exit codes: 0 success, 2 verification failure, 1 bad
// usage or input.
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "ncm/blocking.hpp"
#include "ncm/extremal.hpp"
#include "ncm/geom.hpp"
#include "ncm/ham_sandwich.hpp"
#include "ncm/io.hpp"
#include "ncm/lattice.hpp"
#include "ncm/matcher.hpp"
#include "ncm/rand_lab.hpp"
#include "ncm/removal.hpp"
#include "ncm/rng.hpp"
#include "ncm/svg.hpp"

namespace {

using nlohmann::json;

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kVerifyFail = 2;

void emit(const json& report, const std::string& out_path) {
  const std::string text = report.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    ncm::write_text_file(out_path, text);
}

void maybe_svg(const std::string& svg_path, const ncm::PointSet& ps,
               const std::vector<ncm::EdgeRef>* matching,
               const std::vector<ncm::EdgeRef>* removal,
               const ncm::SubdivisionTree* tree = nullptr) {
  if (svg_path.empty()) return;
  ncm::write_text_file(svg_path, ncm::render_svg(ps, matching, removal, tree));
}

json config_echo(const std::string& sub, const json& extra) {
  json j{{"subcommand", sub}};
  for (auto it = extra.begin(); it != extra.end(); ++it) j[it.key()] = *it;
  return j;
}

ncm::SampleRegion region_by_name(const std::string& name) {
  if (name == "square") return ncm::SampleRegion::square();
  if (name == "disk") return ncm::SampleRegion::disk();
  throw ncm::Error(ncm::ErrorCode::BadInput, "unknown region: " + name);
}

struct Shared {
  std::string points, removal, matching, out, svg, body, region = "square",
              model = "uniform", mode;
  std::uint64_t seed = 1;
  long trials = 100;
  int n = 0, k = 4, threshold = 16, hull_size = 0;
  long m = 1000;
  bool resilient = false;
};

int run_oracle(const Shared& a) {
  const ncm::PointSet ps = ncm::load_point_set(a.points, true);
  const std::vector<ncm::Matching> all = ncm::enumerate_ncpm(ps);
  json rep;
  rep["config"] = config_echo("oracle", {{"points", a.points}});
  rep["count"] = all.size();
  json list = json::array();
  for (const ncm::Matching& m : all) list.push_back(ncm::matching_json(m));
  rep["matchings"] = list;
  emit(rep, a.out);
  return kOk;
}

int run_solve(const Shared& a) {
  const ncm::PointSet ps = ncm::load_point_set(a.points, true);
  const ncm::RemovalSet removal(ncm::load_edge_list(a.removal));
  json rep;
  rep["config"] = config_echo(
      "solve", {{"points", a.points},
                {"removal", a.removal},
                {"resilient", a.resilient},
                {"threshold", a.threshold}});
  std::optional<ncm::Matching> found;
  if (a.resilient) {
    const ncm::ResilientResult res =
        ncm::match_avoiding_resilient(ps, removal, a.threshold);
    found = res.matching;
    rep["leaf_failure"] = res.failure.has_value();
    maybe_svg(a.svg, ps, found ? &found->edges : nullptr, &removal.edges(),
              &res.tree);
  } else {
    found = ncm::match_avoiding_few(ps, removal);
    maybe_svg(a.svg, ps, found ? &found->edges : nullptr, &removal.edges());
  }
  rep["found"] = found.has_value();
  if (found) {
    rep["matching"] = ncm::matching_json(*found);
    rep["valid"] = ncm::is_valid_matching(ps, *found) &&
                   !found->uses_any(removal);
  }
  emit(rep, a.out);
  return found ? kOk : kVerifyFail;
}

int run_verify(const Shared& a) {
  const ncm::PointSet ps = ncm::load_point_set(a.points, true);
  json rep;
  bool pass = false;
  if (!a.matching.empty()) {
    ncm::Matching m;
    m.edges = ncm::load_edge_list(a.matching);
    m.normalize();
    pass = ncm::is_valid_matching(ps, m);
    if (pass && !a.removal.empty()) {
      const ncm::RemovalSet removal(ncm::load_edge_list(a.removal));
      pass = !m.uses_any(removal);
    }
    rep["config"] = config_echo("verify", {{"points", a.points},
                                           {"matching", a.matching},
                                           {"removal", a.removal}});
    rep["kind"] = "matching";
  } else if (!a.removal.empty()) {
    const ncm::RemovalSet removal(ncm::load_edge_list(a.removal));
    const ncm::StructureReport sr = ncm::verify_blocking_structure(ps, removal);
    rep["config"] = config_echo("verify", {{"points", a.points},
                                           {"removal", a.removal}});
    rep["kind"] = "blocking-structure";
    rep["structure"] = ncm::to_json(sr);
    pass = sr.all_true();
  } else {
    throw ncm::Error(ncm::ErrorCode::BadInput,
                     "verify needs --matching or --removal");
  }
  rep["pass"] = pass;
  emit(rep, a.out);
  return pass ? kOk : kVerifyFail;
}

int run_hmin(const Shared& a) {
  const ncm::PointSet ps = ncm::load_point_set(a.points, true);
  const ncm::HGResult res = ncm::min_blocking_size(ps);
  json rep;
  rep["config"] = config_echo("hmin", {{"points", a.points}});
  rep["min_blocking_size"] = res.min_blocking_size;
  rep["h"] = res.h;
  json witness = json::array();
  for (const ncm::EdgeRef& e : res.witness.edges())
    witness.push_back(ncm::edge_json(e));
  rep["witness"] = witness;
  emit(rep, a.out);
  return kOk;
}

void write_config_files(const ncm::NamedConfig& cfg, const Shared& a,
                        json& rep) {
  rep["certificate"] = ncm::to_json(cfg.certificate);
  rep["points"] = cfg.points.size();
  if (!a.out.empty()) {
    std::ostringstream pts;
    ncm::write_point_set(pts, cfg.points);
    ncm::write_text_file(a.out, pts.str());
  }
  if (cfg.removal && !a.removal.empty()) {
    std::ostringstream edges;
    ncm::write_edge_list(edges, cfg.removal->edges());
    ncm::write_text_file(a.removal, edges.str());
  }
  maybe_svg(a.svg, cfg.points, nullptr,
            cfg.removal ? &cfg.removal->edges() : nullptr);
}

int run_gen(const std::string& which, const Shared& a) {
  json rep;
  rep["config"] = config_echo("gen " + which,
                              {{"n", a.n}, {"seed", a.seed},
                               {"hull_size", a.hull_size}});
  if (which == "convex") {
    const ncm::ConvexFamily fam = ncm::gen_convex(a.n);
    write_config_files(fam.config, a, rep);
    json ms = json::array();
    for (const ncm::Matching& m : fam.matchings)
      ms.push_back(ncm::matching_json(m));
    rep["matchings"] = ms;
  } else if (which == "example1") {
    write_config_files(ncm::gen_example1(a.n), a, rep);
  } else if (which == "example2") {
    write_config_files(ncm::gen_example2(a.n), a, rep);
  } else if (which == "g2") {
    const ncm::G2Family fam = ncm::gen_g2(a.n);
    write_config_files(fam.config, a, rep);
    json ms = json::array();
    for (const ncm::Matching& m : fam.matchings)
      ms.push_back(ncm::matching_json(m));
    rep["matchings"] = ms;
  } else {  // small-hull
    const ncm::PointSet ps = ncm::gen_small_hull(a.n, a.hull_size, a.seed);
    rep["points"] = ps.size();
    rep["hull"] = ncm::convex_hull(ps).size();
    if (!a.out.empty()) {
      std::ostringstream pts;
      ncm::write_point_set(pts, ps);
      ncm::write_text_file(a.out, pts.str());
    }
    maybe_svg(a.svg, ps, nullptr, nullptr);
  }
  std::string json_path = a.out.empty() ? "" : a.out + ".json";
  emit(rep, json_path);
  return kOk;
}

int run_lab(const std::string& which, const Shared& a) {
  const ncm::SampleRegion region = region_by_name(a.region);
  ncm::ExperimentReport rep;
  if (which == "resilience") {
    rep = ncm::resilience_experiment(region, a.n,
                                     ncm::removal_model_from_name(a.model),
                                     a.trials, a.seed, 0, a.threshold);
  } else if (which == "convexprob") {
    rep = ncm::convex_position_probability(region, a.n, a.trials, a.seed);
  } else if (which == "emptykgon") {
    // Distribution of min_interior over seeded samples.
    ncm::ExperimentReport out;
    out.experiment = "emptykgon";
    out.seed = a.seed;
    out.trials = a.trials;
    out.params = {{"n", static_cast<double>(a.n)},
                  {"k", static_cast<double>(a.k)}};
    out.text_params = {{"region", region.name()}};
    for (long t = 0; t < a.trials; ++t) {
      ncm::Rng rng = ncm::Rng::for_trial(a.seed, static_cast<std::uint64_t>(t));
      const ncm::PointSet ps = ncm::sample_points(region, a.n, rng.next());
      const ncm::EmptyKgonResult res = ncm::empty_kgon_scan(ps, a.k);
      out.outcomes.push_back(
          {{"min_interior", static_cast<double>(res.min_interior)},
           {"found", res.found ? 1.0 : 0.0}});
    }
    double sum = 0, empty = 0;
    for (const auto& o : out.outcomes) {
      sum += o.at("min_interior");
      if (o.at("min_interior") == 0) empty += 1;
    }
    out.aggregates["mean_min_interior"] =
        a.trials ? sum / static_cast<double>(a.trials) : 0;
    out.aggregates["empty_kgon_rate"] =
        a.trials ? empty / static_cast<double>(a.trials) : 0;
    rep = std::move(out);
  } else if (which == "hullcount") {
    rep = ncm::hull_count_expectation(region, a.n, a.trials, a.seed);
  } else if (which == "oddsplit") {
    rep = ncm::odd_split_statistics(region, a.n, a.trials, a.seed);
  } else {
    throw ncm::Error(ncm::ErrorCode::BadInput, "unknown lab: " + which);
  }
  emit(ncm::to_json(rep), a.out);
  return kOk;
}

int run_lattice(const std::string& which, const Shared& a) {
  const ncm::ConvexBody body = ncm::load_convex_body(a.body);
  json rep;
  rep["config"] = config_echo("lattice " + which,
                              {{"body", a.body}, {"m", a.m}});
  if (which == "bound" || which == "inscribe") {
    const ncm::LatticeTriangle t = which == "bound"
                                       ? ncm::bounding_triangle(body, a.m)
                                       : ncm::contained_triangle(body, a.m);
    std::ostringstream tri;
    ncm::write_lattice_triangle(tri, t);
    rep["triangle"] = tri.str();
    rep["area"] = ncm::rat_to_double(t.area());
  } else if (which == "square") {
    const ncm::LatticeSquare sq = ncm::bounding_square(body, a.m);
    rep["side"] = sq.side;
    std::ostringstream corner;
    corner << ncm::detail::rat_str(sq.lower_left.x) << " "
           << ncm::detail::rat_str(sq.lower_left.y);
    rep["lower_left"] = corner.str();
  } else {
    throw ncm::Error(ncm::ErrorCode::BadInput, "unknown lattice op: " + which);
  }
  emit(rep, a.out);
  return kOk;
}

int run_render(const Shared& a) {
  const ncm::PointSet ps = ncm::load_point_set(a.points);
  std::vector<ncm::EdgeRef> matching, removal;
  if (!a.matching.empty()) matching = ncm::load_edge_list(a.matching);
  if (!a.removal.empty()) removal = ncm::load_edge_list(a.removal);
  if (a.svg.empty())
    throw ncm::Error(ncm::ErrorCode::BadInput, "render needs --svg");
  maybe_svg(a.svg, ps, a.matching.empty() ? nullptr : &matching,
            a.removal.empty() ? nullptr : &removal);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-arithmetic matching/blocking geometry toolbox"};
  app.require_subcommand(1);
  Shared a;

  auto add_io = [&](CLI::App* sub, bool need_points) {
    auto* p = sub->add_option("--points", a.points, "point-set file");
    if (need_points) p->required();
    sub->add_option("--out", a.out, "output path (default stdout)");
    sub->add_option("--svg", a.svg, "SVG output path");
  };

  CLI::App* oracle = app.add_subcommand("oracle", "enumerate all matchings");
  add_io(oracle, true);

  CLI::App* solve = app.add_subcommand("solve", "matching avoiding a removal");
  add_io(solve, true);
  solve->add_option("--removal", a.removal, "removal edge file")->required();
  solve->add_flag("--resilient", a.resilient, "subdivision pipeline");
  solve->add_option("--threshold", a.threshold, "subdivision stop threshold");

  CLI::App* verify = app.add_subcommand("verify", "verify matching/structure");
  add_io(verify, true);
  verify->add_option("--matching", a.matching, "matching edge file");
  verify->add_option("--removal", a.removal, "removal edge file");

  CLI::App* hmin = app.add_subcommand("hmin", "minimum blocking set size");
  add_io(hmin, true);

  CLI::App* gen = app.add_subcommand("gen", "configuration generators");
  gen->require_subcommand(1);
  for (const char* name :
       {"convex", "example1", "example2", "g2", "small-hull"}) {
    CLI::App* sub = gen->add_subcommand(name);
    sub->add_option("--n", a.n, "parameter n")->required();
    sub->add_option("--seed", a.seed, "seed");
    sub->add_option("--hull-size", a.hull_size, "hull size (small-hull)");
    sub->add_option("--removal", a.removal, "removal output file");
    sub->add_option("--out", a.out, "point-set output file");
    sub->add_option("--svg", a.svg, "SVG output path");
  }

  CLI::App* lab = app.add_subcommand("lab", "Monte Carlo experiments");
  lab->require_subcommand(1);
  for (const char* name :
       {"resilience", "convexprob", "emptykgon", "hullcount", "oddsplit"}) {
    CLI::App* sub = lab->add_subcommand(name);
    sub->add_option("--n", a.n, "points parameter")->required();
    sub->add_option("--trials", a.trials, "trial count");
    sub->add_option("--seed", a.seed, "master seed");
    sub->add_option("--region", a.region, "square|disk");
    sub->add_option("--model", a.model, "removal model (resilience)");
    sub->add_option("--threshold", a.threshold, "stop threshold (resilience)");
    sub->add_option("--k", a.k, "k (emptykgon)");
    sub->add_option("--out", a.out, "JSON output path");
  }

  CLI::App* lattice = app.add_subcommand("lattice", "lattice constructions");
  lattice->require_subcommand(1);
  for (const char* name : {"bound", "inscribe", "square"}) {
    CLI::App* sub = lattice->add_subcommand(name);
    sub->add_option("--body", a.body, "convex body file")->required();
    sub->add_option("--m", a.m, "lattice resolution M");
    sub->add_option("--out", a.out, "JSON output path");
  }

  CLI::App* render = app.add_subcommand("render", "SVG figure");
  add_io(render, true);
  render->add_option("--matching", a.matching, "matching edge file");
  render->add_option("--removal", a.removal, "removal edge file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (oracle->parsed()) return run_oracle(a);
    if (solve->parsed()) return run_solve(a);
    if (verify->parsed()) return run_verify(a);
    if (hmin->parsed()) return run_hmin(a);
    if (gen->parsed())
      return run_gen(gen->get_subcommands().front()->get_name(), a);
    if (lab->parsed())
      return run_lab(lab->get_subcommands().front()->get_name(), a);
    if (lattice->parsed())
      return run_lattice(lattice->get_subcommands().front()->get_name(), a);
    if (render->parsed()) return run_render(a);
  } catch (const ncm::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
