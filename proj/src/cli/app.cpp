#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cremona/cli.hpp"
#include "cremona/dyn.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

struct RunConfig {
  int iters = 8;
  int degree_cap = kDefaultDegreeCap;
  int height_cap = kDefaultHeightCap;
  int radius = 3;
  std::uint64_t seed = 1;
  std::string format;
  std::string output;
  std::string dot_output;
  bool conjugate = false;
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kIo, "cannot open " + path + " for writing");
  f << text;
  if (!f) throw Error(ErrorCode::kIo, "write to " + path + " failed");
}

std::string pretty(const nlohmann::json& j) { return j.dump(2) + "\n"; }

ProjMap random_linear(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-3, 3);
  while (true) {
    std::vector<std::vector<Rational>> a(3, std::vector<Rational>(3));
    for (auto& row : a) {
      for (auto& c : row) c = d(rng);
    }
    try {
      return linear_map(a);
    } catch (const Error&) {
    }
  }
}

// The map named on the command line, conjugated by a seeded random linear
// automorphism when asked.
ProjMap load_map(const std::string& text, const RunConfig& cfg) {
  ProjMap f = map_from_spec(parse_map_spec(text));
  if (!cfg.conjugate) return f;
  if (f.dim() != 2) throw Error(ErrorCode::kPrecondition, "--conjugate needs a map of the plane");
  std::mt19937_64 rng(cfg.seed);
  return conjugate(random_linear(rng), f);
}

nlohmann::json mu_json(const MuResult& r) {
  nlohmann::json j = {{"value", r.value ? nlohmann::json(*r.value) : nlohmann::json("undecided")},
                      {"base_point_counts", r.counts}};
  if (!r.method.empty()) j["method"] = r.method;
  if (r.fixed_vertex) j["fixed_vertex"] = r.fixed_vertex->to_string();
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

nlohmann::json nu_json(const NuResult& r) {
  InvariantsReport tmp;
  tmp.nu_f = r;
  nlohmann::json j = report_to_json(tmp)["nu_f"];
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

std::string degseq_csv(const std::vector<int>& d) {
  std::string s = "n,deg\n";
  for (std::size_t k = 0; k < d.size(); ++k) s += std::to_string(k + 1) + "," + std::to_string(d[k]) + "\n";
  return s;
}

void run_ball(const std::string& spec, const RunConfig& cfg, std::ostream& out) {
  const ProjMap f = load_map(spec, cfg);
  if (f.dim() != 2) throw Error(ErrorCode::kPrecondition, "balls are built for maps of the plane");
  std::vector<BubblePoint> universe = base_points(f, cfg.height_cap).points();
  if (f.has_inverse()) {
    for (const auto& p : base_points(f.inverse(), cfg.height_cap).points()) {
      if (std::find(universe.begin(), universe.end(), p) == universe.end()) universe.push_back(p);
    }
  }
  const MarkedSurfaceVertex center = make_vertex(identity_map(2));
  const Ball b = ball(center, cfg.radius, universe);
  // Locate f . center among the presented vertices and draw one geodesic.
  std::optional<VertexId> image;
  if (f.has_inverse()) {
    const MarkedSurfaceVertex fc = act(f, center);
    for (VertexId v = 0; v < b.complex.size() && !image; ++v) {
      if (b.vertices[v] && vertex_equiv(*b.vertices[v], fc, cfg.height_cap)) image = v;
    }
  }
  std::vector<VertexId> path;
  nlohmann::json j = ball_to_json(b);
  j["map"] = spec;
  j["radius"] = cfg.radius;
  j["image_of_center"] = nullptr;
  if (image) {
    const GeodesicList g = geodesics(b.complex, b.center_id, *image, 1);
    if (!g.paths.empty()) path = g.paths.front();
    j["image_of_center"] = b.complex.label(*image);
    j["distance_to_image"] = distance(b.complex, b.center_id, *image);
    j["distance_of_markings"] = distance_vertices(center, act(f, center), cfg.height_cap);
  }
  const std::string dot = complex_to_dot(b.complex, path);
  if (cfg.format == "dot") {
    emit(dot, cfg.output, out);
  } else {
    emit(pretty(j), cfg.output, out);
  }
  if (!cfg.dot_output.empty()) emit(dot, cfg.dot_output, out);
}

void run_check_cat0(const std::string& path, const RunConfig& cfg, std::ostream& out) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read " + path);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidComplex, std::string("malformed JSON: ") + e.what());
  }
  const CubeComplex c = CubeComplex::build(complex_data_from_json(j));
  const GromovReport g = check_gromov(c);
  nlohmann::json r = {{"flag", g.flag},
                      {"vertices", c.size()},
                      {"dimension", c.dimension()},
                      {"witness", g.witness ? nlohmann::json(c.label(*g.witness)) : nlohmann::json(nullptr)}};
  nlohmann::json missing = nlohmann::json::array();
  for (VertexId v : g.missing_simplex) missing.push_back(c.label(v));
  r["missing_simplex"] = missing;
  emit(pretty(r), cfg.output, out);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Birational maps of the plane acting on blow-up cube complexes", "cremona"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("-n,--iters", cfg.iters, "iterates used by the invariants")
      ->envname("CREMONA_ITERS")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--degree-cap", cfg.degree_cap, "largest iterate degree computed")
      ->envname("CREMONA_DEGREE_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--height-cap", cfg.height_cap, "largest height of infinitely near base points")
      ->envname("CREMONA_HEIGHT_CAP")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--radius", cfg.radius, "ball radius (points blown up relative to the center)")
      ->envname("CREMONA_RADIUS")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--seed", cfg.seed, "seed for --conjugate")->envname("CREMONA_SEED")->capture_default_str();
  app.add_option("--format", cfg.format, "json, dot or csv")
      ->envname("CREMONA_FORMAT")
      ->check(CLI::IsMember({"json", "dot", "csv"}));
  app.add_option("-o,--output", cfg.output, "output file (default stdout)");
  app.add_flag("--conjugate", cfg.conjugate, "conjugate the map by a random linear automorphism first");

  std::string spec, file;
  bool all = false;
  auto* classify = app.add_subcommand("classify", "invariants and the row of the isometry table");
  classify->add_option("map", spec, "map specification");
  classify->add_flag("--all-builtins", all, "classify every bundled map");
  auto* mu_cmd = app.add_subcommand("mu", "dynamical number of base points");
  mu_cmd->add_option("map", spec)->required();
  auto* nu_cmd = app.add_subcommand("nu", "growth of contracted curves of f^n");
  nu_cmd->add_option("map", spec)->required();
  auto* bp = app.add_subcommand("base-points", "base point tree of the map");
  bp->add_option("map", spec)->required();
  auto* degseq = app.add_subcommand("degseq", "degrees of f^1..f^n");
  degseq->add_option("map", spec)->required();
  auto* ball_cmd = app.add_subcommand("ball", "ball of the blow-up complex around the plane");
  ball_cmd->add_option("--map", spec, "map whose base points form the universe")->required();
  ball_cmd->add_option("--dot-out", cfg.dot_output, "also write the DOT graph to this file");
  auto* cat0 = app.add_subcommand("check-cat0", "flag condition on a complex given as JSON");
  cat0->add_option("file", file)->required();
  auto* bound = app.add_subcommand("check-bound", "deg f^n against contracted curves of f^n");
  bound->add_option("map", spec)->required();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (classify->parsed()) {
      if (all) {
        nlohmann::json reports = nlohmann::json::array();
        for (const auto& name : builtin_names()) {
          reports.push_back(report_to_json(
              classify_map(name, load_map(name, cfg), cfg.iters, cfg.degree_cap, cfg.height_cap)));
        }
        emit(pretty(reports), cfg.output, out);
      } else {
        if (spec.empty()) {
          err << "classify: a map or --all-builtins is required\n";
          return 1;
        }
        emit(pretty(report_to_json(
                 classify_map(spec, load_map(spec, cfg), cfg.iters, cfg.degree_cap, cfg.height_cap))),
             cfg.output, out);
      }
    } else if (mu_cmd->parsed()) {
      emit(pretty(mu_json(mu(load_map(spec, cfg), cfg.iters, cfg.degree_cap, cfg.height_cap))), cfg.output, out);
    } else if (nu_cmd->parsed()) {
      emit(pretty(nu_json(nu1(load_map(spec, cfg), cfg.iters, cfg.degree_cap))), cfg.output, out);
    } else if (bp->parsed()) {
      emit(pretty(base_tree_to_json(base_points(load_map(spec, cfg), cfg.height_cap))), cfg.output, out);
    } else if (degseq->parsed()) {
      const auto d = degree_sequence(load_map(spec, cfg), cfg.iters, cfg.degree_cap);
      if (cfg.format == "json") {
        emit(pretty(nlohmann::json{{"map", spec}, {"degrees", d}}), cfg.output, out);
      } else {
        emit(degseq_csv(d), cfg.output, out);
      }
    } else if (ball_cmd->parsed()) {
      run_ball(spec, cfg, out);
    } else if (cat0->parsed()) {
      run_check_cat0(file, cfg, out);
    } else if (bound->parsed()) {
      emit(pretty(bound_to_json(check_degree_bound(load_map(spec, cfg), cfg.iters, cfg.degree_cap))), cfg.output,
           out);
    }
  } catch (const Error& e) {
    err << "error (" << error_code_name(e.code()) << "): " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    err << "error (internal): " << e.what() << "\n";
    return static_cast<int>(ErrorCode::kInternal);
  }
  return 0;
}

}  // namespace cremona
