#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "cremona/birmap.hpp"
#include "cremona/error.hpp"

using namespace cremona;

namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

ProjMap P2(const std::string& a, const std::string& b, const std::string& c) {
  return ProjMap(PolyTuple({Poly::parse(a, kXYZ), Poly::parse(b, kXYZ), Poly::parse(c, kXYZ)}));
}

ProjMap builtin(const std::string& name) { return *builtin_map(name); }

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

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
  // Product of random elementary matrices.
  IntMatrix m(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  std::uniform_int_distribution<std::size_t> idx(0, n - 1);
  std::uniform_int_distribution<int> c(-1, 1);
  for (int k = 0; k < 4; ++k) {
    const std::size_t i = idx(rng), j = idx(rng);
    if (i == j) continue;
    IntMatrix e(n, std::vector<long long>(n, 0));
    for (std::size_t t = 0; t < n; ++t) e[t][t] = 1;
    e[i][j] = c(rng);
    m = int_matrix_mul(m, e);
  }
  return m;
}

}  // namespace

TEST_CASE("homogenize") {
  CHECK(builtin("henon").coords() == P2("y*z", "y^2 + x*z", "z^2").coords());
  CHECK(builtin("jonq1").coords() == P2("x*y", "y*z", "z^2").coords());
  const std::vector<std::string> xy = {"x", "y"};
  const Poly one = Poly::constant(xy, 1);
  auto id = homogenize(make_affine_map(Poly::parse("x", xy), one, Poly::parse("y", xy), one));
  CHECK(is_identity(id));
}

TEST_CASE("composition and degree drops") {
  const ProjMap s = builtin("sigma");
  CHECK(is_identity(compose(s, s)));
  const ProjMap h = builtin("henon");
  CHECK(compose(h, h).degree() == 4);
  CHECK(compose(h, identity_map(2)) == h);
  CHECK(degree_sequence(h, 5) == std::vector<int>{2, 4, 8, 16, 32});
  CHECK(degree_sequence(builtin("jonq1"), 6) == std::vector<int>{2, 3, 4, 5, 6, 7});
  CHECK(degree_sequence(identity_map(2), 3) == std::vector<int>{1, 1, 1});
}

TEST_CASE("degree cap is reported") {
  try {
    degree_sequence(builtin("henon"), 10, 64);
    FAIL("expected degree cap");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kDegreeCap);
    CHECK(std::string(e.what()).find("n = 6") != std::string::npos);
  }
}

TEST_CASE("inverses") {
  for (const auto& name : {"sigma", "henon", "jonq1", "jonq2", "hen2", "mon3"}) {
    const ProjMap f = builtin(name);
    REQUIRE(f.has_inverse());
    CHECK(is_identity(compose(f, f.inverse())));
    CHECK(is_identity(compose(f.inverse(), f)));
  }
  CHECK_FALSE(builtin("lox1").has_inverse());
  try {
    with_inverse(builtin("lox1"));
    FAIL("expected inverse unavailable");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kInverseUnavailable);
  }
  try {
    with_inverse(builtin("henon"), builtin("henon"));
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCandidateRejected);
  }
  std::mt19937_64 rng(3);
  const ProjMap a = random_linear(rng);
  CHECK(is_identity(compose(a, a.inverse())));
  // No structural strategy applies to these; the linear solve finds them.
  for (const ProjMap& f : {compose(a, builtin("sigma")), compose(builtin("henon"), random_linear(rng)),
                           compose(builtin("sigma"), compose(random_linear(rng), builtin("sigma")))}) {
    const ProjMap bare(f.coords());
    const ProjMap g = with_inverse(bare);
    CHECK(is_identity(compose(g, g.inverse())));
  }
}

TEST_CASE("monomial maps") {
  CHECK(is_identity(monomial_map({{{1, 0}, {0, 1}}})));
  CHECK(monomial_map({{{0, 1}, {1, 0}}}).coords() == P2("y", "x", "z").coords());
  const ProjMap m3 = builtin("mon3");
  const auto vars = default_vars(4);
  const PolyTuple expect({Poly::parse("y*w", vars), Poly::parse("z*w", vars),
                          Poly::parse("x^2", vars), Poly::parse("x*w", vars)});
  CHECK(m3.coords() == expect);
  CHECK_THROWS_AS(monomial_map({{{2, 0}, {0, 1}}}), Error);

  const IntMatrix M = {{-1, 1, 0}, {-1, 0, 1}, {1, 0, 0}};
  // Matrix path and symbolic path agree.
  const auto sym = degree_sequence(m3, 8);
  for (int n = 1; n <= 8; ++n) CHECK(monomial_degree(int_matrix_pow(M, n)) == sym[n - 1]);
  CHECK(sym == std::vector<int>{2, 3, 4, 6, 9, 12, 17, 25});
}

TEST_CASE("monomial composition property") {
  std::mt19937_64 rng(5);
  for (std::size_t n : {2u, 3u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const IntMatrix a = random_unimodular(rng, n), b = random_unimodular(rng, n);
      const ProjMap lhs = monomial_map({int_matrix_mul(a, b)});
      const ProjMap rhs = compose(monomial_map({a}), monomial_map({b}));
      CHECK(lhs == rhs);
      CHECK(monomial_degree(int_matrix_mul(a, b)) == lhs.degree());
    }
  }
}

TEST_CASE("associativity on bundled families") {
  const ProjMap f = builtin("jonq2"), g = builtin("sigma"), h = builtin("henon");
  CHECK(compose(compose(f, g), h) == compose(f, compose(g, h)));
  CHECK(compose(f, g).degree() <= f.degree() * g.degree());
}

TEST_CASE("indeterminacy points") {
  auto s = indeterminacy_points(builtin("sigma"));
  CHECK_FALSE(s.irrational);
  CHECK(s.points.size() == 3);
  auto h = indeterminacy_points(builtin("henon"));
  REQUIRE(h.points.size() == 1);
  CHECK(h.points[0] == ProjPoint{Rational(1), Rational(0), Rational(0)});
  CHECK(indeterminacy_points(identity_map(2)).points.empty());
  // Irrational pair of base points: x^2 - 2 z^2 = y = 0 is the common zero locus.
  auto irr = indeterminacy_points(P2("x^2 - 2*z^2", "y*z", "x*y"));
  CHECK(irr.irrational);
}

TEST_CASE("indeterminacy points move with a linear conjugation") {
  std::mt19937_64 rng(17);
  const ProjMap s = builtin("sigma");
  for (int trial = 0; trial < 3; ++trial) {
    const ProjMap a = random_linear(rng);
    const ProjMap c = conjugate(a, s);
    const auto ind = indeterminacy_points(c);
    CHECK_FALSE(ind.irrational);
    CHECK(ind.points.size() == 3);
    // Each point maps under a^-1 to a coordinate point.
    const ProjMap ainv = a.inverse();
    for (const auto& p : ind.points) {
      ProjPoint q;
      for (const auto& e : ainv.coords().entries()) q.push_back(e.eval(p));
      q = normalize_point(q);
      int zeros = 0;
      for (const auto& c2 : q) zeros += c2 == 0 ? 1 : 0;
      CHECK(zeros == 2);
    }
  }
}
