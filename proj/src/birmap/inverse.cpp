#include <map>

#include "cremona/birmap.hpp"
#include "cremona/error.hpp"
#include "cremona/linalg.hpp"

namespace cremona {
namespace {

const std::vector<std::string> kXY = {"x", "y"};

Poly dehomogenize(const Poly& p) {
  const Poly q = p.partial_eval(2, 1);
  std::vector<Term> terms;
  for (const auto& t : q.terms()) terms.push_back({{t.exps[0], t.exps[1]}, t.coeff});
  return Poly::from_terms(kXY, std::move(terms));
}

struct Fraction {
  Poly num, den;
};

Fraction reduced(const Poly& n, const Poly& d) {
  const Poly g = gcd(n, d);
  return {*exact_div(n, g), *exact_div(d, g)};
}

// Coefficients of p as a polynomial of degree <= 1 in var, or nullopt.
std::optional<std::pair<Poly, Poly>> linear_in(const Poly& p, std::size_t var) {
  if (p.degree_in(var) > 1) return std::nullopt;
  std::vector<Term> c1, c0;
  for (const auto& t : p.terms()) {
    Term u = t;
    u.exps[var] = 0;
    (t.exps[var] == 1 ? c1 : c0).push_back(std::move(u));
  }
  return std::make_pair(Poly::from_terms(p.vars(), std::move(c1)),
                        Poly::from_terms(p.vars(), std::move(c0)));
}

// p(t) with t = tn/td, multiplied through by td^m.
Poly substitute_fraction(const Poly& p, std::size_t t, const Fraction& f, int m) {
  Poly acc(kXY);
  for (const auto& term : p.terms()) {
    if (term.exps[1 - t] != 0) throw Error(ErrorCode::kInternal, "unexpected variable");
    const unsigned k = term.exps[t];
    acc += f.num.pow(k) * f.den.pow(static_cast<unsigned>(m) - k) * term.coeff;
  }
  return acc;
}

std::optional<ProjMap> triangular_inverse(const ProjMap& f) {
  if (f.dim() != 2) return std::nullopt;
  const Poly d = dehomogenize(f.coords()[2]);
  if (d.is_zero()) return std::nullopt;
  Fraction comp[2];
  for (int c = 0; c < 2; ++c) comp[c] = reduced(dehomogenize(f.coords()[c]), d);
  const Poly u = Poly::variable(kXY, 0), v = Poly::variable(kXY, 1);
  const Poly w[2] = {u, v};
  for (int c = 0; c < 2; ++c) {
    for (std::size_t t = 0; t < 2; ++t) {
      const std::size_t s = 1 - t;
      const Fraction& a = comp[c];
      if (a.num.depends_on(s) || a.den.depends_on(s)) continue;
      auto ln = linear_in(a.num, t), ld = linear_in(a.den, t);
      if (!ln || !ld) continue;
      // w_c = (p t + q)/(r t + e)  =>  t = (e w_c - q)/(p - r w_c).
      const Poly& p = ln->first;
      const Poly& q = ln->second;
      const Poly& r = ld->first;
      const Poly& e = ld->second;
      Fraction tf{e * w[c] - q, p - r * w[c]};
      if (tf.num.is_zero() || tf.den.is_zero()) continue;
      tf = reduced(tf.num, tf.den);
      const Fraction& b = comp[1 - c];
      auto bn = linear_in(b.num, s), bd = linear_in(b.den, s);
      if (!bn || !bd) continue;
      // w_o = (A s + B)/(C s + E) with A..E in Q[t]  =>  s = (E w_o - B)/(A - C w_o).
      const Poly* parts[4] = {&bn->first, &bn->second, &bd->first, &bd->second};
      int m = 0;
      for (const Poly* pp : parts) m = std::max(m, pp->degree_in(t));
      Poly h[4];
      for (int i = 0; i < 4; ++i) h[i] = substitute_fraction(*parts[i], t, tf, m);
      Fraction sf{h[3] * w[1 - c] - h[1], h[0] - h[2] * w[1 - c]};
      if (sf.num.is_zero() || sf.den.is_zero()) continue;
      Fraction xs = t == 0 ? tf : sf;
      Fraction ys = t == 0 ? sf : tf;
      try {
        ProjMap cand = homogenize(make_affine_map(xs.num, xs.den, ys.num, ys.den));
        ProjMap g = f;
        g.attach_inverse(cand);
        return g;
      } catch (const Error&) {
        continue;
      }
    }
  }
  return std::nullopt;
}

std::vector<Exponents> monomials_of_degree(int d) {
  std::vector<Exponents> out;
  for (int a = d; a >= 0; --a) {
    for (int b = d - a; b >= 0; --b) {
      out.push_back({static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(d - a - b)});
    }
  }
  return out;
}

// Plane maps only: G of degree d with G o f = h * id, found as the kernel
// of a linear system in the coefficients of G and h.
std::optional<ProjMap> inverse_by_linear_algebra(const ProjMap& f) {
  const int d = f.degree();
  if (f.dim() != 2 || d > 5) return std::nullopt;
  const auto& vars = f.vars();
  const auto g_mons = monomials_of_degree(d);
  const auto h_mons = monomials_of_degree(d * d - 1);
  const auto out_mons = monomials_of_degree(d * d);
  std::map<Exponents, std::size_t> row_of;
  for (std::size_t i = 0; i < out_mons.size(); ++i) row_of[out_mons[i]] = i;
  std::vector<Poly> images;
  for (const auto& m : g_mons) {
    Poly p = Poly::constant(vars, 1);
    for (int j = 0; j < 3; ++j) p *= f.coords()[j].pow(m[j]);
    images.push_back(std::move(p));
  }
  const std::size_t ng = g_mons.size(), nh = h_mons.size(), nr = out_mons.size();
  const std::size_t ncols = 3 * ng + nh;
  RatMatrix rows(3 * nr, std::vector<Rational>(ncols, Rational(0)));
  for (int i = 0; i < 3; ++i) {
    for (std::size_t k = 0; k < ng; ++k) {
      for (const auto& t : images[k].terms()) rows[i * nr + row_of.at(t.exps)][i * ng + k] += t.coeff;
    }
    for (std::size_t k = 0; k < nh; ++k) {
      Exponents e = h_mons[k];
      ++e[i];
      rows[i * nr + row_of.at(e)][3 * ng + k] -= 1;
    }
  }
  const auto ker = nullspace(std::move(rows), ncols);
  if (ker.size() != 1) return std::nullopt;
  std::vector<Poly> g;
  for (int i = 0; i < 3; ++i) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < ng; ++k) {
      if (ker[0][i * ng + k] != 0) terms.push_back({g_mons[k], ker[0][i * ng + k]});
    }
    g.push_back(Poly::from_terms(vars, std::move(terms)));
  }
  try {
    ProjMap out = f;
    out.attach_inverse(ProjMap(PolyTuple(std::move(g))));
    return out;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

ProjMap with_inverse(const ProjMap& f) {
  if (f.has_inverse()) return f;
  if (auto m = monomial_matrix_of(f)) {
    const long long det = int_determinant(*m);
    if (det == 1 || det == -1) {
      ProjMap g = f;
      g.attach_inverse(monomial_map(MonomialMap{int_matrix_inverse(*m)}));
      return g;
    }
  }
  if (f.degree() == 1) {
    std::vector<std::vector<Rational>> a(f.dim() + 1, std::vector<Rational>(f.dim() + 1));
    for (std::size_t i = 0; i <= f.dim(); ++i) {
      for (const auto& t : f.coords()[i].terms()) {
        for (std::size_t j = 0; j <= f.dim(); ++j) {
          if (t.exps[j] == 1) a[i][j] = t.coeff;
        }
      }
    }
    try {
      const ProjMap lin = linear_map(a);
      return lin;
    } catch (const Error&) {
      throw Error(ErrorCode::kInverseUnavailable, "linear map is singular: " + f.to_string());
    }
  }
  try {
    ProjMap g = f;
    g.attach_inverse(f);
    return g;
  } catch (const Error&) {
  }
  if (auto g = triangular_inverse(f)) return *g;
  if (auto g = inverse_by_linear_algebra(f)) return *g;
  throw Error(ErrorCode::kInverseUnavailable,
              "no inversion strategy applies to " + f.to_string());
}

ProjMap with_inverse(const ProjMap& f, const ProjMap& candidate) {
  ProjMap g = f;
  g.attach_inverse(candidate);
  return g;
}

}  // namespace cremona
