#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <bit>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "cremona/cube.hpp"
#include "cremona/error.hpp"
#include "cube_fixtures.hpp"

using namespace cremona;
using namespace cremona::fixtures;

namespace {

// Opposite-edge classes by transitive closure of a boolean relation matrix.
int brute_force_classes(const CubeComplex& c) {
  const std::size_t n = c.edges().size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& cube : c.cubes()) {
    if (cube.dim != 2) continue;
    const auto& v = cube.vertices;
    const int a = *c.edge_between(v[0], v[1]), b = *c.edge_between(v[2], v[3]);
    const int e = *c.edge_between(v[0], v[2]), f = *c.edge_between(v[1], v[3]);
    r[a][b] = r[b][a] = r[e][f] = r[f][e] = true;
  }
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  std::set<std::vector<bool>> rows(r.begin(), r.end());
  return static_cast<int>(rows.size());
}

std::vector<int> crossed(const CubeComplex& c, const std::vector<Hyperplane>& hs,
                         const std::vector<VertexId>& path) {
  std::vector<int> cls(c.edges().size());
  for (const auto& h : hs) {
    for (int e : h.edges) cls[e] = h.id;
  }
  std::vector<int> out;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) out.push_back(cls[*c.edge_between(path[i], path[i + 1])]);
  return out;
}

ErrorCode build_error(const ComplexData& d, std::string* msg = nullptr) {
  try {
    CubeComplex::build(d);
  } catch (const Error& e) {
    if (msg) *msg = e.what();
    return e.code();
  }
  return ErrorCode::kInternal;
}

// The bi-infinite line with edges i -> i + 1.
class LineOracle : public NeighborOracle {
 public:
  std::vector<std::pair<std::string, bool>> neighbors(const std::string& v) const override {
    const long i = std::stol(v);
    return {{std::to_string(i - 1), false}, {std::to_string(i + 1), true}};
  }
};

}  // namespace

TEST_CASE("validation of explicit complexes") {
  const CubeComplex cube = CubeComplex::build(grid_complex(unit_cube(3)));
  CHECK(cube.size() == 8);
  CHECK(cube.dimension() == 3);
  CHECK(cube.cubes().size() == 7);

  ComplexData sq = grid_complex(unit_cube(2));
  sq.edges.pop_back();
  std::string msg;
  CHECK(build_error(sq, &msg) == ErrorCode::kInvalidComplex);
  CHECK(msg.find("face-closure violation") != std::string::npos);

  ComplexData no_face = grid_complex(unit_cube(3));
  no_face.cubes.erase(no_face.cubes.begin());
  CHECK(build_error(no_face, &msg) == ErrorCode::kInvalidComplex);
  CHECK(msg.find("face-closure violation") != std::string::npos);

  ComplexData flipped = grid_complex(unit_cube(2));
  std::swap(flipped.edges[0].first, flipped.edges[0].second);
  CHECK(build_error(flipped, &msg) == ErrorCode::kInvalidComplex);
  CHECK(msg.find("orientation violation") != std::string::npos);

  ComplexData dup = grid_complex(unit_cube(2));
  dup.cubes.push_back({dup.cubes[0][3], dup.cubes[0][1], dup.cubes[0][2], dup.cubes[0][0]});
  CHECK(build_error(dup, &msg) == ErrorCode::kInvalidComplex);
  CHECK(msg.find("duplicate cube") != std::string::npos);

  const CubeComplex fig = CubeComplex::build(figure_one());
  CHECK(fig.size() == 14);
  CHECK(fig.dimension() == 3);
}

TEST_CASE("close_faces completes a bare cube list") {
  ComplexData d;
  for (int m = 0; m < 8; ++m) d.labels.push_back("v" + std::to_string(m));
  d.cubes.push_back({0, 1, 2, 3, 4, 5, 6, 7});
  const CubeComplex c = CubeComplex::build(close_faces(d));
  CHECK(c.edges().size() == 12);
  CHECK(c.cubes().size() == 7);
  CHECK(hyperplanes(c).size() == 3);
}

TEST_CASE("Gromov link condition") {
  std::ifstream in(std::string(CREMONA_SOURCE_DIR) + "/data/octant-corner.json");
  REQUIRE(in);
  ComplexData d = complex_data_from_json(nlohmann::json::parse(in));
  const CubeComplex corner = CubeComplex::build(d);
  const GromovReport bad = check_gromov(corner);
  CHECK_FALSE(bad.flag);
  REQUIRE(bad.witness);
  CHECK(corner.label(*bad.witness) == "o");
  CHECK(bad.missing_simplex.size() == 3);
  CHECK(link(corner, *bad.witness).simplices.size() == 3);

  // Filling the corner with its 3-cube.
  const VertexId top = static_cast<VertexId>(d.labels.size());
  d.labels.push_back("xyz");
  const auto id = [&](const std::string& s) { return *corner.find(s); };
  d.cubes.push_back({id("o"), id("x"), id("y"), id("xy"), id("z"), id("xz"), id("yz"), top});
  const CubeComplex filled = CubeComplex::build(close_faces(d));
  CHECK(check_gromov(filled).flag);

  CHECK(check_gromov(CubeComplex::build(grid_complex(unit_cube(3)))).flag);
  CHECK(check_gromov(CubeComplex::build(figure_one())).flag);
}

TEST_CASE("hyperplanes and distances") {
  for (int k = 1; k <= 4; ++k) CHECK(hyperplanes(CubeComplex::build(grid_complex(unit_cube(k)))).size() == k);
  std::vector<Point> path;
  for (int i = 0; i <= 5; ++i) path.push_back({i});
  CHECK(hyperplanes(CubeComplex::build(grid_complex(path))).size() == 5);

  const CubeComplex fig = CubeComplex::build(figure_one());
  const auto hs = hyperplanes(fig);
  CHECK(hs.size() == 5);
  CHECK(static_cast<int>(hs.size()) == brute_force_classes(fig));

  const CubeComplex cube = CubeComplex::build(grid_complex(unit_cube(3)));
  CHECK(distance(hyperplanes(cube), 0, 7) == 3);
  CHECK(distance(cube, 0, 7) == 3);
  CHECK(distance(cube, 4, 4) == 0);

  // Tails of every hyperplane lie on its plus side.
  for (const auto& h : hs) {
    for (int e : h.edges) {
      CHECK(h.plus[fig.edges()[e].first]);
      CHECK_FALSE(h.plus[fig.edges()[e].second]);
    }
  }

  ComplexData two;
  two.labels = {"a", "b", "c"};
  two.edges = {{0, 1}};
  CHECK_THROWS_AS(hyperplanes(CubeComplex::build(two)), Error);
}

TEST_CASE("separating hyperplanes count the BFS distance on random CAT(0) complexes") {
  std::mt19937_64 rng(2024);
  int built = 0;
  while (built < 50) {
    std::optional<ComplexData> d;
    if (built % 2 == 0) {
      d = tree_product(rng, 1 + static_cast<int>(rng() % 3));
    } else {
      d = staircase(rng);
    }
    if (!d) continue;
    ++built;
    const CubeComplex c = CubeComplex::build(*d);
    CHECK(check_gromov(c).flag);
    const auto hs = hyperplanes(c);
    CHECK(static_cast<int>(hs.size()) == brute_force_classes(c));
    for (int trial = 0; trial < 10; ++trial) {
      const VertexId u = static_cast<VertexId>(rng() % c.size());
      const VertexId v = static_cast<VertexId>(rng() % c.size());
      CHECK(distance(hs, u, v) == bfs_distances(c, u)[v]);
    }
  }
}

TEST_CASE("hyperplane count is invariant under relabeling") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 10; ++trial) {
    const ComplexData d = tree_product(rng, 2);
    std::vector<VertexId> perm(d.labels.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    ComplexData e;
    e.labels.resize(d.labels.size());
    for (std::size_t i = 0; i < perm.size(); ++i) e.labels[perm[i]] = d.labels[i];
    for (const auto& [a, b] : d.edges) e.edges.push_back({perm[a], perm[b]});
    for (const auto& cube : d.cubes) {
      std::vector<VertexId> vs;
      for (VertexId v : cube) vs.push_back(perm[v]);
      e.cubes.push_back(vs);
    }
    CHECK(hyperplanes(CubeComplex::build(d)).size() == hyperplanes(CubeComplex::build(e)).size());
  }
}

TEST_CASE("geodesics") {
  const CubeComplex sq = CubeComplex::build(grid_complex(unit_cube(2)));
  CHECK(geodesics(sq, 0, 3, 100).paths.size() == 2);
  const CubeComplex cube = CubeComplex::build(grid_complex(unit_cube(3)));
  const auto g = geodesics(cube, 0, 7, 100);
  CHECK(g.paths.size() == 6);
  CHECK_FALSE(g.truncated);
  const auto t = geodesics(cube, 0, 7, 4);
  CHECK(t.paths.size() == 4);
  CHECK(t.truncated);

  // Geodesics cross distinct hyperplanes; longer walks repeat one.
  std::mt19937_64 rng(9);
  const CubeComplex fig = CubeComplex::build(figure_one());
  const auto hs = hyperplanes(fig);
  for (int trial = 0; trial < 20; ++trial) {
    const VertexId u = static_cast<VertexId>(rng() % fig.size());
    const VertexId v = static_cast<VertexId>(rng() % fig.size());
    for (const auto& p : geodesics(fig, u, v, 50).paths) {
      auto cs = crossed(fig, hs, p);
      std::sort(cs.begin(), cs.end());
      CHECK(std::adjacent_find(cs.begin(), cs.end()) == cs.end());
      CHECK(static_cast<int>(cs.size()) == distance(hs, u, v));
    }
    // A random walk from u to v that is longer than the distance.
    std::vector<VertexId> walk = {u};
    while (walk.size() < 30 && (walk.back() != v || walk.size() == 1)) {
      const auto& adj = fig.adjacent(walk.back());
      walk.push_back(adj[rng() % adj.size()].first);
    }
    if (walk.back() == v && static_cast<int>(walk.size()) - 1 > distance(hs, u, v)) {
      auto cs = crossed(fig, hs, walk);
      std::sort(cs.begin(), cs.end());
      CHECK(std::adjacent_find(cs.begin(), cs.end()) != cs.end());
    }
  }
}

TEST_CASE("JSON and DOT round trip") {
  const CubeComplex fig = CubeComplex::build(figure_one());
  const nlohmann::json j = complex_to_json(fig);
  const CubeComplex back = CubeComplex::build(complex_data_from_json(j));
  CHECK(back.size() == fig.size());
  CHECK(back.edges() == fig.edges());
  CHECK(back.cubes().size() == fig.cubes().size());
  const std::string dot = complex_to_dot(fig);
  CHECK(dot.find("digraph") == 0);
  CHECK(dot.find("H4") != std::string::npos);
  CHECK_THROWS_AS(complex_data_from_json(nlohmann::json::parse(R"({"vertices": [1]})")), Error);
}

TEST_CASE("classification of isometries") {
  const LineOracle line;
  const VertexIsometry shift{[](const std::string& v) { return std::to_string(std::stol(v) + 1); }};
  const IsometryReport lox = classify_isometry(line, shift, "0", 8);
  CHECK(lox.kind == IsometryKind::kLoxodromic);
  CHECK(lox.translation_length == 1);
  const int n = static_cast<int>(lox.displacements.size());
  for (int k = n / 2; k < n; ++k) CHECK(lox.displacements[k] == lox.displacements[n - 1] - (n - 1 - k));

  ComplexData edge;
  edge.labels = {"a", "b"};
  edge.edges = {{0, 1}};
  const CubeComplex e = CubeComplex::build(edge);
  const ExplicitOracle eo(e);
  const VertexIsometry swap{[](const std::string& v) { return v == "a" ? std::string("b") : std::string("a"); }};
  try {
    classify_isometry(eo, swap, "a", 4);
    FAIL("inversion accepted");
  } catch (const Error& err) {
    CHECK(err.code() == ErrorCode::kPrecondition);
    CHECK(std::string(err.what()).find("inverts") != std::string::npos);
  }

  // Swapping the coordinates of a square fixes two corners.
  const CubeComplex sq = CubeComplex::build(grid_complex(unit_cube(2)));
  const ExplicitOracle so(sq);
  const VertexIsometry flip{[](const std::string& v) { return std::string{v[2], ',', v[0]}; }};
  const IsometryReport ell = classify_isometry(so, flip, "1,0", 6);
  CHECK(ell.kind == IsometryKind::kElliptic);
  CHECK(ell.translation_length == 0);
  CHECK(ell.fixed_vertices.size() == 2);
  CHECK(classify_isometry(so, flip, "0,0", 3).fixed_vertex == "0,0");

  const VertexIsometry bad{[](const std::string& v) { return v == "0,0" ? std::string("1,1") : v; }};
  CHECK_THROWS_AS(classify_isometry(so, bad, "0,0", 2), Error);
  CHECK_THROWS_AS(oracle_distance(line, "0", "500", 100), Error);
}
