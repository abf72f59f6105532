#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "cremona/dyn.hpp"
#include "cremona/error.hpp"

using namespace cremona;

namespace {

ProjMap builtin(const std::string& name) { return *builtin_map(name); }

ProjMap random_linear(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
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

BubblePoint proper(std::vector<long> c) {
  return BubblePoint{normalize_point({Rational(c[0]), Rational(c[1]), Rational(c[2])}), {}};
}

std::vector<BubblePoint> sigma_points() { return base_points(builtin("sigma")).points(); }

// Every walk of exactly `left` steps from u that ends at v.
long count_walks(const CubeComplex& c, VertexId u, VertexId v, int left) {
  if (left == 0) return u == v ? 1 : 0;
  long total = 0;
  for (const auto& [w, e] : c.adjacent(u)) {
    (void)e;
    total += count_walks(c, w, v, left - 1);
  }
  return total;
}

}  // namespace

TEST_CASE("distance between marked surfaces") {
  const ProjMap s = builtin("sigma");
  const auto id = make_vertex(identity_map(2));
  CHECK(distance_vertices(id, act(s, id)) == 6);
  CHECK(distance_vertices(id, id) == 0);
  CHECK(distance_vertices(make_vertex(identity_map(2), {proper({1, 0, 0})}), id) == 1);
  CHECK(distance_vertices(id, act(builtin("henon"), id)) == 6);

  // Blowing up the base points of sigma on both sides gives one surface.
  const auto z = make_vertex(identity_map(2), sigma_points());
  CHECK(z.picard_rank() == 4);
  CHECK(vertex_equiv(z, act(s, z)));
  CHECK_FALSE(vertex_equiv(id, act(s, id)));
  // A linear marking fixes the unblown plane.
  std::mt19937_64 rng(7);
  CHECK(vertex_equiv(id, act(random_linear(rng), id)));
}

TEST_CASE("make_vertex closes points under parents") {
  const ProjMap h = builtin("henon");
  const auto chain = base_points(h).points();
  REQUIRE(chain.size() == 3);
  const auto v = make_vertex(identity_map(2), {chain.back()});
  CHECK(v.blown_points.size() == 3);
}

TEST_CASE("distance is symmetric and satisfies the triangle inequality") {
  std::mt19937_64 rng(11);
  std::vector<MarkedSurfaceVertex> vs;
  for (const auto* name : {"sigma", "henon", "jonq1", "jonq2", "hen2"}) {
    const ProjMap f = builtin(name);
    vs.push_back(act(f, make_vertex(identity_map(2))));
    vs.push_back(make_vertex(f, base_points(f.inverse()).points()));
  }
  vs.push_back(make_vertex(identity_map(2)));
  vs.push_back(make_vertex(random_linear(rng), sigma_points()));
  vs.push_back(make_vertex(compose(builtin("sigma"), random_linear(rng))));
  std::vector<std::vector<int>> d(vs.size(), std::vector<int>(vs.size()));
  for (std::size_t i = 0; i < vs.size(); ++i) {
    for (std::size_t j = 0; j < vs.size(); ++j) d[i][j] = distance_vertices(vs[i], vs[j]);
  }
  for (std::size_t i = 0; i < vs.size(); ++i) {
    CHECK(d[i][i] == 0);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      CHECK(d[i][j] == d[j][i]);
      CHECK(d[i][j] >= 0);
      for (std::size_t k = 0; k < vs.size(); ++k) CHECK(d[i][k] <= d[i][j] + d[j][k]);
    }
  }
}

TEST_CASE("balls around the plane") {
  const auto center = make_vertex(identity_map(2));
  const auto pts = sigma_points();
  CHECK(ball(center, 0, pts).complex.size() == 1);
  const Ball b1 = ball(center, 1, pts);
  CHECK(b1.complex.size() == 4);
  CHECK(b1.complex.edges().size() == 3);

  const Ball b = ball(center, 3, pts);
  CHECK(b.complex.size() == 18);
  CHECK(b.complex.edges().size() == 30);
  CHECK(b.complex.cubes().size() == 17);
  CHECK(b.complex.dimension() == 3);
  CHECK(check_gromov(b.complex).flag);
  CHECK(b.complex.label(0) == "{}");
  CHECK(b.picard_rank[0] == 4);
  // Edges point from the larger Picard rank to the smaller.
  for (const auto& [t, h] : b.complex.edges()) CHECK(b.picard_rank[t] == b.picard_rank[h] + 1);

  const auto image = b.find_state({});
  REQUIRE(image);
  // The center and the plane marked by sigma sit at distance 6.
  const ProjMap s = builtin("sigma");
  std::optional<VertexId> target;
  for (VertexId v = 0; v < b.complex.size(); ++v) {
    if (b.vertices[v] && b.picard_rank[v] == 1 && v != b.center_id &&
        vertex_equiv(*b.vertices[v], act(s, center))) {
      target = v;
    }
  }
  REQUIRE(target);
  CHECK(distance(b.complex, b.center_id, *target) == 6);
  CHECK(bfs_distances(b.complex, b.center_id)[*target] == 6);

  const GeodesicList g = geodesics(b.complex, b.center_id, *target, 10000);
  CHECK_FALSE(g.truncated);
  CHECK(static_cast<long>(g.paths.size()) == count_walks(b.complex, b.center_id, *target, 6));

  // Serialization keeps the complex and adds the marked surfaces.
  const auto j = ball_to_json(b);
  CHECK(CubeComplex::build(complex_data_from_json(j)).size() == 18);
  CHECK(j.contains("vertex_info"));
}

TEST_CASE("sigma acts on its ball with Z fixed") {
  const ProjMap s = builtin("sigma");
  const Ball b = ball(make_vertex(identity_map(2)), 3, sigma_points());
  const VertexIsometry a = ball_action(b, s);
  for (VertexId v = 0; v < b.complex.size(); ++v) {
    const auto w = b.complex.find(a.apply(b.complex.label(v)));
    REQUIRE(w);
    CHECK(a.apply(b.complex.label(*w)) == b.complex.label(v));  // sigma is an involution
    CHECK(b.picard_rank[*w] == b.picard_rank[v]);
  }
  const IsometryReport r = classify_isometry(ExplicitOracle(b.complex), a, b.complex.label(b.center_id), 4);
  CHECK(r.kind == IsometryKind::kElliptic);
  CHECK(r.displacements[0] == 6);
  CHECK(std::count(r.fixed_vertices.begin(), r.fixed_vertices.end(), "{}") == 1);
  // The fixed vertex blowing up all three base points: sigma lifts to an
  // automorphism there.
  REQUIRE(b.vertices[0]);
  CHECK(b.vertices[0]->blown_points.size() == 3);
  CHECK(distance_vertices(*b.vertices[0], act(s, *b.vertices[0])) == 0);

  // The Henon map does not lift to Z.
  CHECK_THROWS_AS(ball_action(b, builtin("henon")), Error);
}

TEST_CASE("mu") {
  const MuResult s = mu(builtin("sigma"), 6);
  REQUIRE(s.value);
  CHECK(*s.value == 0);
  CHECK(s.method == "fixed-vertex");
  REQUIRE(s.fixed_vertex);
  CHECK(s.fixed_vertex->blown_points.size() == 3);

  const MuResult h = mu(builtin("henon"), 5);
  CHECK(h.counts == std::vector<int>{3, 6, 9, 12, 15});
  REQUIRE(h.value);
  CHECK(*h.value == 3);

  const MuResult j = mu(builtin("jonq1"), 6);
  REQUIRE(j.value);
  CHECK(*j.value == 2);
  // Axis behavior: Bs(f^n) - mu n is eventually constant.
  CHECK(j.counts.back() - 2 * 6 == j.counts[3] - 2 * 4);

  std::mt19937_64 rng(3);
  const MuResult l = mu(random_linear(rng), 4);
  REQUIRE(l.value);
  CHECK(*l.value == 0);

  const MuResult x = mu(builtin("lox1"), 3);
  CHECK_FALSE(x.value);
  CHECK_FALSE(x.note.empty());
}

TEST_CASE("nu^1") {
  const NuResult h = nu1(builtin("henon"), 6);
  REQUIRE(h.value);
  CHECK(*h.value == 0);
  REQUIRE(h.orbits.size() == 1);
  CHECK(h.orbits[0].status == OrbitStatus::kAbsorbed);

  const NuResult j = nu1(builtin("jonq2"), 6);
  CHECK(j.counts == std::vector<int>{2, 3, 4, 5, 6, 7});
  REQUIRE(j.value);
  CHECK(*j.value == 1);
  // Orbit counts agree with factoring the Jacobian of f^n.
  for (const auto& [n, c] : j.direct) CHECK(c == j.counts[n - 1]);

  const NuResult s = nu1(builtin("sigma"), 6);
  CHECK(s.counts == std::vector<int>{3, 0, 3, 0, 3, 0});
  REQUIRE(s.value);
  CHECK(*s.value == 0);

  std::mt19937_64 rng(5);
  const NuResult l = nu1(random_linear(rng), 4);
  REQUIRE(l.value);
  CHECK(*l.value == 0);
}

TEST_CASE("degree growth classes") {
  CHECK(degree_growth_class({2, 1, 2, 1, 2, 1}) == DegreeClass::kBounded);
  CHECK(degree_growth_class({1, 1, 1, 1}) == DegreeClass::kBounded);
  CHECK(degree_growth_class({2, 3, 4, 5, 6, 7}) == DegreeClass::kLinear);
  CHECK(degree_growth_class({2, 5, 10, 17, 26, 37}) == DegreeClass::kQuadratic);
  CHECK(degree_growth_class({2, 4, 8, 16, 32, 64}) == DegreeClass::kExponential);
  CHECK(degree_growth_class({3, 8, 21, 55, 144}) == DegreeClass::kExponential);
  CHECK(degree_growth_class({2, 3, 5, 6, 6, 7, 9, 9}) == DegreeClass::kUndecided);
  CHECK(degree_growth_class({2}) == DegreeClass::kUndecided);
}

TEST_CASE("classification against the table") {
  const auto s = classify_map("sigma", builtin("sigma"), 6);
  CHECK(s.table_row == 1);
  CHECK(s.hyperbolic == Isometry::kElliptic);
  CHECK(s.blowup == Isometry::kElliptic);
  CHECK(s.blowup0 == Isometry::kElliptic);

  const auto j1 = classify_map("jonq1", builtin("jonq1"), 6);
  CHECK(j1.table_row == 2);
  CHECK(j1.blowup == Isometry::kLoxodromic);
  CHECK(j1.blowup0 == Isometry::kElliptic);

  const auto j2 = classify_map("jonq2", builtin("jonq2"), 6);
  CHECK(j2.table_row == 3);
  CHECK(j2.hyperbolic == Isometry::kParabolic);
  CHECK(j2.blowup0 == Isometry::kLoxodromic);

  const auto h = classify_map("hen2", builtin("hen2"), 6);
  CHECK(h.table_row == 6);
  CHECK(h.hyperbolic == Isometry::kLoxodromic);
  CHECK(h.blowup0 == Isometry::kElliptic);

  // mu = 0 never pairs with a loxodromic blow-up column.
  for (const auto* r : {&s, &j1, &j2, &h}) {
    if (r->mu.value && *r->mu.value == 0) CHECK(r->blowup == Isometry::kElliptic);
  }

  const auto json = report_to_json(j2);
  CHECK(json["mu"]["value"] == 2);
  CHECK(json["nu_f"]["value"] == 1);
  CHECK(json["degree_class"] == "linear");
  CHECK(json["provenance"]["iterations"] == 6);
  CHECK(json.dump() == report_to_json(classify_map("jonq2", builtin("jonq2"), 6)).dump());

  const auto m = classify_map("mon3", builtin("mon3"), 6);
  CHECK_FALSE(m.table_row);
  CHECK_FALSE(m.notes.empty());
}

TEST_CASE("degree bound from contracted curves") {
  const auto j = check_degree_bound(builtin("jonq2"), 8);
  CHECK(j.witness);
  CHECK(j.holds);
  CHECK(j.degrees.size() == 8);
  CHECK(j.exc_counts.size() == 8);
  for (std::size_t k = 0; k < 8; ++k) CHECK(3 * j.degrees[k] >= j.exc_counts[k]);

  const auto h = check_degree_bound(builtin("henon"), 5);
  CHECK_FALSE(h.witness);
  CHECK(h.holds);
  CHECK_FALSE(h.note.empty());

  std::mt19937_64 rng(9);
  CHECK_FALSE(check_degree_bound(random_linear(rng), 3).witness);
  CHECK(bound_to_json(j)["rows"].size() == 8);
}

TEST_CASE("base point counts are subadditive") {
  for (const auto* name : {"henon", "jonq1", "jonq2", "sigma"}) {
    const IterateRun run = iterates(builtin(name), 6);
    std::vector<int> b{0};
    for (const auto& g : run.iterates) b.push_back(base_points(g).total());
    for (int m = 1; m <= 3; ++m) {
      for (int n = 1; m + n <= 6; ++n) CHECK(b[m + n] <= b[m] + b[n]);
    }
  }
}

TEST_CASE("mu and nu are conjugation invariant") {
  std::mt19937_64 rng(17);
  for (const auto* name : {"jonq1", "jonq2", "sigma"}) {
    const ProjMap f = builtin(name);
    const auto mu0 = mu(f, 6).value;
    const auto nu0 = nu1(f, 6).value;
    for (int i = 0; i < 2; ++i) {
      const ProjMap g = conjugate(random_linear(rng), f);
      CHECK(mu(g, 6).value == mu0);
      CHECK(nu1(g, 6).value == nu0);
    }
  }
}
