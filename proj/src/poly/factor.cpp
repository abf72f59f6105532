#include <algorithm>
#include <map>

#include "cremona/error.hpp"
#include "poly_internal.hpp"

namespace cremona {
namespace detail {
namespace {

std::map<std::uint32_t, Poly> coeffs_in(const Poly& p, std::size_t var) {
  std::map<std::uint32_t, std::vector<Term>> groups;
  for (const auto& t : p.terms()) {
    Term u = t;
    u.exps[var] = 0;
    groups[t.exps[var]].push_back(std::move(u));
  }
  std::map<std::uint32_t, Poly> out;
  for (auto& [e, terms] : groups) out.emplace(e, Poly::from_terms(p.vars(), std::move(terms)));
  return out;
}

Poly quotient(const Poly& a, const Poly& b) {
  auto q = exact_div(a, b);
  if (!q) throw Error(ErrorCode::kInternal, "expected exact division during factoring");
  return *q;
}

std::vector<std::size_t> present_vars(const Poly& p) {
  std::vector<std::size_t> v;
  for (std::size_t i = 0; i < p.nvars(); ++i) {
    if (p.depends_on(i)) v.push_back(i);
  }
  return v;
}

// Kronecker substitution x_j -> y^(D^k) for the variables after the first two.
std::vector<Poly> factor_kronecker(const Poly& s, const std::vector<std::size_t>& used) {
  const auto& vars = s.vars();
  const std::size_t ix = used[0], iy = used[1];
  std::uint32_t D = 1;
  for (std::size_t k = 1; k < used.size(); ++k) {
    D = std::max<std::uint32_t>(D, static_cast<std::uint32_t>(s.degree_in(used[k])) + 1);
  }
  std::vector<std::uint64_t> weight(vars.size(), 0);
  std::uint64_t w = 1;
  for (std::size_t k = 1; k < used.size(); ++k) {
    weight[used[k]] = w;
    w *= D;
  }
  auto forward = [&](const Poly& p) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
      Exponents e(vars.size(), 0);
      e[ix] = t.exps[ix];
      std::uint64_t ey = 0;
      for (std::size_t k = 1; k < used.size(); ++k) ey += weight[used[k]] * t.exps[used[k]];
      e[iy] = static_cast<std::uint32_t>(ey);
      terms.push_back({std::move(e), t.coeff});
    }
    return Poly::from_terms(vars, std::move(terms));
  };
  auto backward = [&](const Poly& p) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
      Exponents e(vars.size(), 0);
      e[ix] = t.exps[ix];
      std::uint64_t ey = t.exps[iy];
      for (std::size_t k = 1; k < used.size(); ++k) {
        e[used[k]] = static_cast<std::uint32_t>(ey % D);
        ey /= D;
      }
      terms.push_back({std::move(e), t.coeff});
    }
    return Poly::from_terms(vars, std::move(terms));
  };
  const Poly b = forward(s);
  std::vector<Poly> pieces;
  for (const auto& f : factor_squarefree(b)) pieces.push_back(f);
  if (pieces.size() <= 1) return {s};

  std::vector<Poly> result;
  Poly rest = s;
  std::size_t sz = 1;
  while (2 * sz <= pieces.size()) {
    bool hit = false;
    const std::size_t n = pieces.size();
    std::vector<std::size_t> idx(sz);
    for (std::size_t i = 0; i < sz; ++i) idx[i] = i;
    while (true) {
      Poly prod = Poly::constant(vars, 1);
      for (auto i : idx) prod = prod * pieces[i];
      const Poly cand = backward(prod);
      if (!cand.is_constant()) {
        if (auto q = exact_div(rest, cand)) {
          result.push_back(cand);
          rest = *q;
          std::vector<Poly> keep;
          for (std::size_t i = 0, k = 0; i < n; ++i) {
            if (k < sz && idx[k] == i) {
              ++k;
            } else {
              keep.push_back(pieces[i]);
            }
          }
          pieces = std::move(keep);
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
  if (!rest.is_constant()) result.push_back(rest);
  return result;
}

// Yun's squarefree decomposition of p with respect to var; p must be
// primitive in var so that every factor involves var.
std::vector<std::pair<Poly, int>> squarefree_decomposition(const Poly& p, std::size_t var) {
  std::vector<std::pair<Poly, int>> out;
  const Poly dp = p.derivative(var);
  const Poly a0 = gcd(p, dp);
  Poly b = quotient(p, a0);
  Poly c = quotient(dp, a0);
  Poly d = c - b.derivative(var);
  int i = 1;
  while (!b.is_constant()) {
    const Poly a = gcd(b, d);
    if (!a.is_constant()) out.emplace_back(a, i);
    const Poly nb = quotient(b, a);
    c = quotient(d, a);
    d = c - nb.derivative(var);
    b = nb;
    ++i;
  }
  return out;
}

void factor_into(const Poly& p, int mult, std::vector<std::pair<Poly, int>>& out);

void factor_no_monomial(const Poly& p, int mult, std::vector<std::pair<Poly, int>>& out) {
  if (p.is_constant()) return;
  const auto used = present_vars(p);
  // Variable of smallest positive degree.
  std::size_t v = used.front();
  for (auto i : used) {
    if (p.degree_in(i) < p.degree_in(v)) v = i;
  }
  const Poly cont = content_wrt(p, v);
  if (!cont.is_constant()) factor_into(cont, mult, out);
  const Poly pp = cont.is_constant() ? p : quotient(p, cont);
  for (const auto& [s, m] : squarefree_decomposition(pp, v)) {
    for (const auto& f : factor_squarefree(s)) out.emplace_back(f, m * mult);
  }
}

void factor_into(const Poly& p, int mult, std::vector<std::pair<Poly, int>>& out) {
  const Exponents m = p.monomial_gcd();
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] > 0) {
      out.emplace_back(Poly::variable(p.vars(), i), static_cast<int>(m[i]) * mult);
    }
  }
  factor_no_monomial(p.divide_monomial(m), mult, out);
}

}  // namespace

Poly content_wrt(const Poly& p, std::size_t var) {
  Poly g(p.vars());
  for (const auto& [e, c] : coeffs_in(p, var)) {
    g = gcd(g, c);
    if (g.is_constant()) break;
  }
  return g;
}

std::vector<Poly> factor_squarefree(const Poly& s) {
  if (s.is_constant()) return {};
  const auto used = present_vars(s);
  const auto& vars = s.vars();
  if (used.size() == 1) {
    std::vector<Poly> out;
    for (const auto& z : zassenhaus(uq_to_primitive_z(to_upoly(s, used[0])))) {
      UPolyQ q(z.begin(), z.end());
      out.push_back(from_upoly(q, vars, used[0]));
    }
    return out;
  }
  // Split off content with respect to each variable first.
  for (auto v : used) {
    const Poly c = content_wrt(s, v);
    if (!c.is_constant()) {
      auto out = factor_squarefree(c);
      for (auto& f : factor_squarefree(quotient(s, c))) out.push_back(std::move(f));
      return out;
    }
  }
  // Linear in some variable and primitive there: irreducible.
  for (auto v : used) {
    if (s.degree_in(v) == 1) return {s};
  }
  if (s.is_homogeneous()) {
    const std::size_t t = used.back();
    const Poly g = s.partial_eval(t, 1);
    std::vector<std::pair<Poly, int>> parts;
    factor_into(g, 1, parts);
    std::vector<Poly> out;
    for (const auto& [f, m] : parts) {
      // Rehomogenize with t.
      const int d = f.total_degree();
      std::vector<Term> terms;
      for (const auto& term : f.terms()) {
        Term h = term;
        int td = 0;
        for (auto e : h.exps) td += static_cast<int>(e);
        h.exps[t] += static_cast<std::uint32_t>(d - td);
        terms.push_back(std::move(h));
      }
      Poly hf = Poly::from_terms(vars, std::move(terms));
      for (int k = 0; k < m; ++k) out.push_back(hf);
    }
    return out;
  }
  if (used.size() == 2) return factor_bivariate_squarefree(s, used[0], used[1]);
  return factor_kronecker(s, used);
}

}  // namespace detail

Factorization factor_q(const Poly& p) {
  if (p.is_zero()) throw Error(ErrorCode::kZeroInput, "cannot factor the zero polynomial");
  Factorization result;
  result.unit = p.leading().coeff;
  std::vector<std::pair<Poly, int>> raw;
  detail::factor_into(p, 1, raw);
  std::vector<std::pair<Poly, int>> merged;
  for (auto& [f, m] : raw) {
    Poly g = f.monic();
    auto it = std::find_if(merged.begin(), merged.end(),
                           [&](const auto& e) { return e.first == g; });
    if (it == merged.end()) {
      merged.emplace_back(std::move(g), m);
    } else {
      it->second += m;
    }
  }
  std::sort(merged.begin(), merged.end(), [](const auto& a, const auto& b) {
    if (a.first.total_degree() != b.first.total_degree()) {
      return a.first.total_degree() < b.first.total_degree();
    }
    return a.first.to_string() < b.first.to_string();
  });
  result.factors = std::move(merged);
  return result;
}

}  // namespace cremona
