#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <json.hpp>
#include <random>
#include <sstream>

#include "cremona/cli.hpp"
#include "cremona/error.hpp"

using namespace cremona;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

ErrorCode parse_error(const std::string& text) {
  try {
    parse_map_spec(text);
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error for " << text);
  return ErrorCode::kInternal;
}

std::string random_poly(std::mt19937_64& rng, int degree, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> coef(-3, 3);
  std::string s;
  for (int a = 0; a <= degree; ++a) {
    for (int b = 0; a + b <= degree; ++b) {
      const int c = coef(rng);
      if (c == 0) continue;
      const int e[3] = {a, b, degree - a - b};
      std::string t = std::to_string(c);
      for (std::size_t v = 0; v < vars.size(); ++v) {
        if (e[v] > 0) t += "*" + vars[v] + "^" + std::to_string(e[v]);
      }
      s += (s.empty() ? "" : " + ") + t;
    }
  }
  return s.empty() ? vars[0] + "^" + std::to_string(degree) : s;
}

}  // namespace

TEST_CASE("map specifications") {
  const MapSpec s = parse_map_spec("P2:[y*z : x*z : x*y]");
  const ProjMap f = map_from_spec(s);
  CHECK(f.degree() == 2);
  CHECK(f == *builtin_map("sigma"));
  CHECK(f.has_inverse());

  const ProjMap a = map_from_spec(parse_map_spec("A2:(y, y^2+x)"));
  CHECK(a.to_string() == "[y*z : x*z + y^2 : z^2]");

  CHECK(parse_map_spec(" henon ") == MapSpec{BuiltinRef{"henon"}});
  CHECK(map_from_spec(parse_map_spec("MON:3:[[-1,1,0],[-1,0,1],[1,0,0]]")) == *builtin_map("mon3"));
  CHECK(map_from_spec(parse_map_spec("A2:(x*y/(y+1), y)")).degree() == 2);
}

TEST_CASE("map specification errors") {
  try {
    parse_map_spec("P2:[x : y]");
    FAIL("accepted two coordinates");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kArity);
    CHECK(std::string(e.what()).find("expected 3 coordinates") != std::string::npos);
  }
  CHECK(parse_error("P2:[x : y : ]") == ErrorCode::kSyntax);
  CHECK(parse_error("P2:[x : y^2 : z]") == ErrorCode::kNotHomogeneous);
  CHECK(parse_error("A2:(x/(y-y), y)") == ErrorCode::kZeroInput);
  CHECK(parse_error("A2:(x, y, x)") == ErrorCode::kArity);
  CHECK(parse_error("MON:2:[[2,0],[0,1]]") == ErrorCode::kPrecondition);
  CHECK(parse_error("MON:2:[[1,0]]") == ErrorCode::kArity);
  CHECK(parse_error("nosuchmap") == ErrorCode::kSyntax);
  CHECK(parse_error("P2:[x : (y : z]") == ErrorCode::kSyntax);
  try {
    parse_map_spec("P2:[x : y* : z]");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("offset") != std::string::npos);
  }
}

TEST_CASE("printing and parsing round trip") {
  std::mt19937_64 rng(2024);
  const std::vector<std::string> xyz = {"x", "y", "z"}, xy = {"x", "y"};
  for (int i = 0; i < 40; ++i) {
    const int d = 1 + static_cast<int>(rng() % 3);
    MapSpec s;
    try {
      s = parse_map_spec("P2:[" + random_poly(rng, d, xyz) + " : " + random_poly(rng, d, xyz) + " : " +
                         random_poly(rng, d, xyz) + "]");
    } catch (const Error&) {
      continue;  // a common factor made the tuple degenerate
    }
    const std::string printed = map_spec_to_string(s);
    CHECK(parse_map_spec(printed) == s);
    CHECK(map_spec_to_string(parse_map_spec(printed)) == printed);
  }
  for (const auto* text : {"A2:(x*y, y + 1)", "A2:((x)/(y + 1), y^2 - x)", "MON:2:[[1,1],[0,1]]", "jonq2",
                           "P1:[x^2 : y^2]"}) {
    const MapSpec s = parse_map_spec(text);
    CHECK(parse_map_spec(map_spec_to_string(s)) == s);
  }
  for (const auto& name : builtin_names()) CHECK(map_spec_to_string(parse_map_spec(name)) == name);
}

TEST_CASE("subcommands") {
  const Run c = run({"classify", "henon", "-n", "6"});
  REQUIRE(c.code == 0);
  const auto j = nlohmann::json::parse(c.out);
  CHECK(j["degree_class"] == "exponential");
  CHECK(j["mu"]["value"] == 3);
  CHECK(j["nu_f"]["value"] == 0);

  CHECK(run({"degseq", "jonq2", "-n", "4"}).out == "n,deg\n1,2\n2,3\n3,4\n4,5\n");
  CHECK(nlohmann::json::parse(run({"degseq", "henon", "-n", "3", "--format", "json"}).out)["degrees"] ==
        nlohmann::json({2, 4, 8}));

  const Run b = run({"ball", "--map", "sigma", "--radius", "3", "--format", "dot"});
  REQUIRE(b.code == 0);
  CHECK(b.out.rfind("digraph", 0) == 0);
  CHECK(b.out.find("highlighted path of length 6") != std::string::npos);
  std::size_t bold = 0;
  for (std::size_t p = b.out.find("penwidth=3"); p != std::string::npos; p = b.out.find("penwidth=3", p + 1)) {
    ++bold;
  }
  CHECK(bold == 6);
  const auto bj = nlohmann::json::parse(run({"ball", "--map", "sigma"}).out);
  CHECK(bj["distance_to_image"] == 6);
  CHECK(bj["distance_of_markings"] == 6);

  const Run cat = run({"check-cat0", std::string(CREMONA_SOURCE_DIR) + "/data/octant-corner.json"});
  REQUIRE(cat.code == 0);
  const auto cj = nlohmann::json::parse(cat.out);
  CHECK(cj["flag"] == false);
  CHECK(cj["witness"] == "o");

  const auto bound = nlohmann::json::parse(run({"check-bound", "jonq2", "-n", "8"}).out);
  CHECK(bound["witness"] == true);
  CHECK(bound["holds"] == true);

  CHECK(nlohmann::json::parse(run({"mu", "jonq1", "-n", "5"}).out)["value"] == 2);
  CHECK(nlohmann::json::parse(run({"nu", "jonq2", "-n", "5"}).out)["value"] == 1);
  CHECK(nlohmann::json::parse(run({"base-points", "henon"}).out).dump().find("[1:0:0]") != std::string::npos);
  // Conjugating by a seeded linear map leaves mu unchanged.
  CHECK(nlohmann::json::parse(run({"mu", "jonq1", "-n", "5", "--conjugate", "--seed", "4"}).out)["value"] == 2);
}

TEST_CASE("exit codes") {
  CHECK(run({"mu", "P2:[x : y]"}).code == static_cast<int>(ErrorCode::kArity));
  CHECK(run({"mu", "P2:[x : y* : z]"}).code == static_cast<int>(ErrorCode::kSyntax));
  CHECK(run({"degseq", "henon", "-n", "12", "--degree-cap", "100"}).code == static_cast<int>(ErrorCode::kDegreeCap));
  CHECK(run({"check-cat0", "/nonexistent/complex.json"}).code == static_cast<int>(ErrorCode::kIo));
  CHECK(run({"mu", "henon", "-n", "0"}).code == 1);
  CHECK(run({"frobnicate"}).code == 1);
  CHECK(run({}).code == 1);
  CHECK(run({"--help"}).code == 0);
  const Run e = run({"mu", "P2:[x : y]"});
  CHECK(e.out.empty());
  CHECK(e.err.find("expected 3 coordinates") != std::string::npos);
}

TEST_CASE("outputs are deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"classify", "jonq2", "-n", "5"}, {"ball", "--map", "sigma"},
        {"ball", "--map", "sigma", "--format", "dot"}, {"base-points", "hen2"}}) {
    const Run a = run(args), b = run(args);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("environment overrides") {
  setenv("CREMONA_ITERS", "3", 1);
  CHECK(run({"degseq", "henon"}).out == "n,deg\n1,2\n2,4\n3,8\n");
  // Flags win over the environment.
  CHECK(run({"degseq", "henon", "-n", "2"}).out == "n,deg\n1,2\n2,4\n");
  unsetenv("CREMONA_ITERS");
}
