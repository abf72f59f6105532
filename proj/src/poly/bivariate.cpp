// Bivariate factorization over Q: specialize the second variable, factor
// the univariate image, lift the monic factors y-adically and recombine.

#include <algorithm>

#include "cremona/error.hpp"
#include "poly_internal.hpp"

namespace cremona::detail {
namespace {

using BiPoly = std::vector<UPolyQ>;  // index = power of y, entry = polynomial in x

BiPoly to_bipoly(const Poly& p, std::size_t ix, std::size_t iy) {
  BiPoly b;
  for (const auto& t : p.terms()) {
    const auto ex = t.exps[ix], ey = t.exps[iy];
    if (b.size() <= ey) b.resize(ey + 1);
    if (b[ey].size() <= ex) b[ey].resize(ex + 1, Rational(0));
    b[ey][ex] += t.coeff;
  }
  for (auto& u : b) trim(u);
  return b;
}

Poly from_bipoly(const BiPoly& b, const std::vector<std::string>& vars, std::size_t ix,
                 std::size_t iy) {
  std::vector<Term> terms;
  for (std::size_t j = 0; j < b.size(); ++j) {
    for (std::size_t i = 0; i < b[j].size(); ++i) {
      if (b[j][i] == 0) continue;
      Exponents e(vars.size(), 0);
      e[ix] = static_cast<std::uint32_t>(i);
      e[iy] = static_cast<std::uint32_t>(j);
      terms.push_back({std::move(e), b[j][i]});
    }
  }
  return Poly::from_terms(vars, std::move(terms));
}

UPolyQ uq_add(const UPolyQ& a, const UPolyQ& b) {
  UPolyQ r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  trim(r);
  return r;
}

UPolyQ uq_mod(const UPolyQ& a, const UPolyQ& m) {
  UPolyQ q, r;
  uq_divmod(a, m, q, r);
  return r;
}

// Product truncated below y^k.
BiPoly bi_mul_trunc(const BiPoly& a, const BiPoly& b, std::size_t k) {
  BiPoly r(std::min(k, a.size() + b.size()));
  for (std::size_t i = 0; i < a.size() && i < k; ++i) {
    if (a[i].empty()) continue;
    for (std::size_t j = 0; j < b.size() && i + j < k; ++j) {
      if (b[j].empty()) continue;
      r[i + j] = uq_add(r[i + j], uq_mul(a[i], b[j]));
    }
  }
  return r;
}

// [y^k] of the product of the factors, each truncated below y^(k+1).
UPolyQ product_coeff(const std::vector<BiPoly>& g, std::size_t k) {
  BiPoly acc{UPolyQ{Rational(1)}};
  for (const auto& gi : g) acc = bi_mul_trunc(acc, gi, k + 1);
  return k < acc.size() ? acc[k] : UPolyQ{};
}

Poly shift_var(const Poly& p, std::size_t var, const Rational& a) {
  std::vector<Poly> images;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    Poly v = Poly::variable(p.vars(), i);
    if (i == var) v += Poly::constant(p.vars(), a);
    images.push_back(std::move(v));
  }
  return p.substitute(images);
}

}  // namespace

UPolyQ uq_inverse_mod(const UPolyQ& a, const UPolyQ& m) {
  UPolyQ r0 = m, r1 = uq_mod(a, m), t0{}, t1{Rational(1)};
  while (!r1.empty()) {
    UPolyQ q, r;
    uq_divmod(r0, r1, q, r);
    UPolyQ t2 = uq_sub(t0, uq_mul(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error(ErrorCode::kInternal, "uq_inverse_mod: not coprime");
  const Rational inv = 1 / r0[0];
  for (auto& c : t0) c *= inv;
  return uq_mod(t0, m);
}

std::vector<Poly> factor_bivariate_squarefree(const Poly& s_in, std::size_t ix,
                                              std::size_t iy) {
  const auto& vars = s_in.vars();
  // Main variable: the one of smaller degree.
  if (s_in.degree_in(ix) > s_in.degree_in(iy)) std::swap(ix, iy);
  if (s_in.degree_in(ix) == 1) return {s_in};

  // Specialization y = a keeping the x-degree and squarefreeness.
  const int dx = s_in.degree_in(ix);
  const Poly lcx = [&] {
    std::vector<Term> terms;
    for (const auto& t : s_in.terms()) {
      if (static_cast<int>(t.exps[ix]) == dx) {
        Term u = t;
        u.exps[ix] = 0;
        terms.push_back(std::move(u));
      }
    }
    return Poly::from_terms(vars, std::move(terms));
  }();
  Rational a = 0;
  bool found = false;
  for (int trial = 0; trial < 400 && !found; ++trial) {
    a = (trial % 2 == 0) ? trial / 2 : -(trial + 1) / 2;
    if (lcx.partial_eval(iy, a).is_zero()) continue;
    const UPolyQ u = to_upoly(s_in.partial_eval(iy, a), ix);
    if (deg(uq_gcd(u, uq_derivative(u))) > 0) continue;
    found = true;
  }
  if (!found) throw Error(ErrorCode::kInternal, "no good specialization for bivariate factoring");

  Poly S = shift_var(s_in, iy, a);
  const UPolyQ u0 = to_upoly(S.partial_eval(iy, 0), ix);
  const auto zf = zassenhaus(uq_to_primitive_z(u0));
  if (zf.size() <= 1) return {s_in};

  const std::size_t K = static_cast<std::size_t>(S.degree_in(iy)) + 1;
  BiPoly Sb = to_bipoly(S, ix, iy);
  Sb.resize(K);
  // Leading coefficient in x as a polynomial in y and its inverse mod y^K.
  UPolyQ lc(K, Rational(0));
  for (std::size_t j = 0; j < Sb.size(); ++j) {
    if (static_cast<int>(Sb[j].size()) - 1 == dx) lc[j] = Sb[j].back();
  }
  UPolyQ inv(K, Rational(0));
  inv[0] = 1 / lc[0];
  for (std::size_t k = 1; k < K; ++k) {
    Rational acc = 0;
    for (std::size_t j = 1; j <= k; ++j) acc += lc[j] * inv[k - j];
    inv[k] = -acc * inv[0];
  }
  BiPoly F(K);
  for (std::size_t k = 0; k < K; ++k) {
    UPolyQ acc;
    for (std::size_t j = 0; j <= k; ++j) {
      if (inv[j] == 0 || Sb[k - j].empty()) continue;
      UPolyQ term = Sb[k - j];
      for (auto& c : term) c *= inv[j];
      acc = uq_add(acc, term);
    }
    F[k] = acc;
  }

  // Monic modular factors and partial-fraction cofactors.
  const std::size_t r = zf.size();
  std::vector<UPolyQ> u(r);
  for (std::size_t i = 0; i < r; ++i) {
    u[i].assign(zf[i].begin(), zf[i].end());
    const Rational l = 1 / u[i].back();
    for (auto& c : u[i]) c *= l;
  }
  std::vector<UPolyQ> sco(r);
  for (std::size_t i = 0; i < r; ++i) {
    UPolyQ prod{Rational(1)};
    for (std::size_t j = 0; j < r; ++j) {
      if (j != i) prod = uq_mul(prod, u[j]);
    }
    sco[i] = uq_inverse_mod(prod, u[i]);
  }
  std::vector<BiPoly> G(r);
  for (std::size_t i = 0; i < r; ++i) G[i] = BiPoly{u[i]};
  for (std::size_t k = 1; k < K; ++k) {
    const UPolyQ e = uq_sub(F[k], product_coeff(G, k));
    for (std::size_t i = 0; i < r; ++i) {
      G[i].resize(k + 1);
      if (!e.empty()) G[i][k] = uq_mod(uq_mul(sco[i], e), u[i]);
    }
  }

  // Recombination.
  std::vector<Poly> result;
  std::size_t sz = 1;
  while (2 * sz <= G.size()) {
    bool hit = false;
    const std::size_t n = G.size();
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      // Current leading coefficient of S in x as a polynomial in y.
      BiPoly cur = to_bipoly(S, ix, iy);
      const int cdx = S.degree_in(ix);
      UPolyQ clc;
      for (std::size_t j = 0; j < cur.size(); ++j) {
        if (static_cast<int>(cur[j].size()) - 1 == cdx) {
          if (clc.size() <= j) clc.resize(j + 1, Rational(0));
          clc[j] = cur[j].back();
        }
      }
      BiPoly cand;
      for (std::size_t j = 0; j < clc.size(); ++j) cand.push_back(UPolyQ{clc[j]});
      for (auto i : idx) cand = bi_mul_trunc(cand, G[i], K);
      Poly c = from_bipoly(cand, vars, ix, iy);
      if (!c.is_zero()) {
        const Poly cont = content_wrt(c, ix);
        if (auto cq = exact_div(c, cont)) c = *cq;
        if (auto q = exact_div(S, c)) {
          result.push_back(c);
          S = *q;
          std::vector<BiPoly> rest;
          for (std::size_t i = 0, k = 0; i < n; ++i) {
            if (k < sz && idx[k] == i) {
              ++k;
            } else {
              rest.push_back(std::move(G[i]));
            }
          }
          G = std::move(rest);
          hit = true;
          break;
        }
      }
      std::size_t k = sz;
      while (k > 0 && idx[k - 1] == n - sz + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < sz; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!hit) ++sz;
  }
  if (!S.is_constant()) result.push_back(S);
  for (auto& f : result) f = shift_var(f, iy, -a);
  return result;
}

}  // namespace cremona::detail
