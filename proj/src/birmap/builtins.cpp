#include "cremona/birmap.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

ProjMap affine(const std::string& e1, const std::string& e2) {
  const std::vector<std::string> xy = {"x", "y"};
  const Poly one = Poly::constant(xy, 1);
  return homogenize(make_affine_map(Poly::parse(e1, xy), one, Poly::parse(e2, xy), one));
}

ProjMap projective(const std::vector<std::string>& coords) {
  const auto vars = default_vars(coords.size());
  std::vector<Poly> e;
  for (const auto& c : coords) e.push_back(Poly::parse(c, vars));
  return ProjMap(PolyTuple(std::move(e)));
}

}  // namespace

std::vector<std::string> builtin_names() {
  return {"sigma", "henon", "jonq1", "jonq2", "hen2", "lox1", "mon3"};
}

std::optional<ProjMap> builtin_map(const std::string& name) {
  if (name == "sigma") return with_inverse(projective({"y*z", "x*z", "x*y"}));
  if (name == "henon") return with_inverse(projective({"y*z", "y^2 + x*z", "z^2"}));
  if (name == "jonq1") return with_inverse(affine("x*y", "y"));
  if (name == "jonq2") return with_inverse(affine("x*y", "y + 1"));
  if (name == "hen2") return with_inverse(affine("y", "x + y^2"));
  // Generically two-to-one (see README): no inverse is attached.
  if (name == "lox1") return affine("x^2*y", "x*(y + 1)");
  if (name == "mon3") return monomial_map(MonomialMap{{{-1, 1, 0}, {-1, 0, 1}, {1, 0, 0}}});
  return std::nullopt;
}

}  // namespace cremona
