// Multivariate gcd over Q by dense modular interpolation: images mod
// word-size primes are computed recursively by evaluating the last variable,
// combined by Chinese remaindering and confirmed by trial division.

#include <algorithm>
#include <map>

#include "cremona/error.hpp"
#include "poly_internal.hpp"

namespace cremona {
namespace {

using detail::UPolyP;
using SP = std::map<Exponents, std::uint64_t>;  // lex order, variable 0 most significant

void sp_add_term(SP& a, const Exponents& e, std::uint64_t c, std::uint64_t p) {
  if (c == 0) return;
  auto [it, inserted] = a.try_emplace(e, c);
  if (!inserted) {
    it->second = (it->second + c) % p;
    if (it->second == 0) a.erase(it);
  }
}

SP sp_scale(const SP& a, std::uint64_t c, std::uint64_t p) {
  SP r;
  if (c == 0) return r;
  for (const auto& [e, v] : a) r.emplace_hint(r.end(), e, v * c % p);
  return r;
}

SP sp_mul(const SP& a, const SP& b, std::uint64_t p) {
  SP r;
  Exponents e;
  for (const auto& [ea, ca] : a) {
    for (const auto& [eb, cb] : b) {
      e = ea;
      for (std::size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
      sp_add_term(r, e, ca * cb % p, p);
    }
  }
  return r;
}

SP sp_sub(const SP& a, const SP& b, std::uint64_t p) {
  SP r = a;
  for (const auto& [e, c] : b) sp_add_term(r, e, p - c, p);
  return r;
}

// Exact quotient a / b mod p; false when b does not divide a.
bool sp_divide(SP a, const SP& b, std::uint64_t p, SP& q) {
  q.clear();
  if (b.empty()) return false;
  const auto& [lb, lc] = *b.rbegin();
  const std::uint64_t inv = detail::mod_inv(lc, p);
  Exponents e;
  while (!a.empty()) {
    const auto [la, ca] = *a.rbegin();
    e = la;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] < lb[i]) return false;
      e[i] -= lb[i];
    }
    const std::uint64_t c = ca * inv % p;
    q.emplace(e, c);
    Exponents t;
    for (const auto& [eb, cb] : b) {
      t = eb;
      for (std::size_t i = 0; i < t.size(); ++i) t[i] += e[i];
      sp_add_term(a, t, p - cb * c % p, p);
    }
  }
  return true;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint32_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

SP sp_eval(const SP& a, std::size_t var, std::uint64_t alpha, std::uint64_t p) {
  SP r;
  for (const auto& [e, c] : a) {
    Exponents f = e;
    f[var] = 0;
    sp_add_term(r, f, c * pow_mod(alpha, e[var], p) % p, p);
  }
  return r;
}

int sp_degree(const SP& a, std::size_t var) {
  int d = -1;
  for (const auto& [e, c] : a) d = std::max(d, static_cast<int>(e[var]));
  return d;
}

UPolyP sp_to_univariate(const SP& a, std::size_t var) {
  UPolyP u;
  for (const auto& [e, c] : a) {
    if (u.size() <= e[var]) u.resize(e[var] + 1, 0);
    u[e[var]] = c;
  }
  detail::trim(u);
  return u;
}

SP univariate_to_sp(const UPolyP& u, std::size_t nvars, std::size_t var) {
  SP r;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Exponents e(nvars, 0);
    e[var] = static_cast<std::uint32_t>(i);
    r.emplace(std::move(e), u[i]);
  }
  return r;
}

// Coefficients of a in Z_p[y] (y = var), keyed by the remaining exponents.
std::map<Exponents, UPolyP> split_by_var(const SP& a, std::size_t var) {
  std::map<Exponents, UPolyP> groups;
  for (const auto& [e, c] : a) {
    Exponents key = e;
    key[var] = 0;
    auto& u = groups[key];
    if (u.size() <= e[var]) u.resize(e[var] + 1, 0);
    u[e[var]] = c;
  }
  for (auto& [k, u] : groups) detail::trim(u);
  return groups;
}

UPolyP content_in(const SP& a, std::size_t var, std::uint64_t p) {
  UPolyP g;
  for (const auto& [k, u] : split_by_var(a, var)) {
    g = detail::up_gcd(g, u, p);
    if (g.size() == 1) break;
  }
  return g;
}

// gcd of a and b mod p in variables 0..k-1, monic in lex order.
SP gcd_mod_p(const SP& a, const SP& b, std::size_t k, std::uint64_t p, std::mt19937_64& rng) {
  const std::size_t n = a.empty() ? b.begin()->first.size() : a.begin()->first.size();
  if (a.empty()) return sp_scale(b, b.empty() ? 0 : detail::mod_inv(b.rbegin()->second, p), p);
  if (b.empty()) return sp_scale(a, detail::mod_inv(a.rbegin()->second, p), p);
  if (k == 1) {
    UPolyP g = detail::up_gcd(sp_to_univariate(a, 0), sp_to_univariate(b, 0), p);
    return univariate_to_sp(g, n, 0);
  }
  const std::size_t y = k - 1;
  const UPolyP ca = content_in(a, y, p);
  const UPolyP cb = content_in(b, y, p);
  const UPolyP c = detail::up_gcd(ca, cb, p);
  SP A, B;
  sp_divide(a, univariate_to_sp(ca, n, y), p, A);
  sp_divide(b, univariate_to_sp(cb, n, y), p, B);
  if (sp_degree(A, y) <= 0 && sp_degree(B, y) <= 0) {
    SP g = gcd_mod_p(A, B, k - 1, p, rng);
    return sp_mul(g, univariate_to_sp(c, n, y), p);
  }
  const auto la = split_by_var(A, y).rbegin()->second;
  const auto lb = split_by_var(B, y).rbegin()->second;
  const UPolyP gamma = detail::up_gcd(la, lb, p);
  const int bound = (static_cast<int>(gamma.size()) - 1) +
                    std::min(sp_degree(A, y), sp_degree(B, y)) + 1;

  std::uniform_int_distribution<std::uint64_t> dist(1, p - 1);
  SP G;  // interpolant
  UPolyP q{1};
  int points = 0;
  Exponents lead;
  const SP ca_sp = univariate_to_sp(c, n, y);
  for (int attempt = 0; attempt < 4 * bound + 64; ++attempt) {
    const std::uint64_t alpha = dist(rng);
    const std::uint64_t ga = [&] {
      std::uint64_t v = 0;
      for (std::size_t i = gamma.size(); i-- > 0;) v = (v * alpha + gamma[i]) % p;
      return v;
    }();
    if (ga == 0) continue;
    std::uint64_t qa = 0;
    for (std::size_t i = q.size(); i-- > 0;) qa = (qa * alpha + q[i]) % p;
    if (points > 0 && qa == 0) continue;
    SP img = gcd_mod_p(sp_eval(A, y, alpha, p), sp_eval(B, y, alpha, p), k - 1, p, rng);
    img = sp_scale(img, ga, p);  // monic image times gamma(alpha)
    const Exponents il = img.rbegin()->first;
    if (points > 0 && il > lead) continue;  // unlucky evaluation
    if (points == 0 || il < lead) {
      G = univariate_to_sp(UPolyP{1}, n, y);
      G = sp_mul(G, img, p);
      q = {p - alpha % p, 1};
      lead = il;
      points = 1;
    } else {
      // Newton step: G += (img - G(alpha)) * q(y) / q(alpha).
      SP diff = sp_sub(img, sp_eval(G, y, alpha, p), p);
      if (!diff.empty()) {
        diff = sp_scale(diff, detail::mod_inv(qa, p), p);
        G = [&] {
          SP r = G;
          for (const auto& [e, v] : sp_mul(diff, univariate_to_sp(q, n, y), p)) {
            sp_add_term(r, e, v, p);
          }
          return r;
        }();
      }
      q = detail::up_mul(q, UPolyP{p - alpha % p, 1}, p);
      ++points;
    }
    if (points >= bound) {
      SP H;
      sp_divide(G, univariate_to_sp(content_in(G, y, p), n, y), p, H);
      SP qa1, qb1;
      if (sp_divide(A, H, p, qa1) && sp_divide(B, H, p, qb1)) {
        SP r = sp_mul(H, ca_sp, p);
        return sp_scale(r, detail::mod_inv(r.rbegin()->second, p), p);
      }
    }
  }
  throw Error(ErrorCode::kInternal, "modular gcd did not converge");
}

// Integer-coefficient primitive version of p as exponent -> Integer.
std::map<Exponents, Integer> integer_terms(const Poly& p) {
  const Rational c = p.content();
  std::map<Exponents, Integer> r;
  for (const auto& t : p.terms()) {
    Rational v = t.coeff / c;
    r.emplace(t.exps, v.get_num());
  }
  return r;
}

SP reduce_mod(const std::map<Exponents, Integer>& a, std::uint64_t p) {
  SP r;
  for (const auto& [e, c] : a) {
    const std::uint64_t v = mpz_fdiv_ui(c.get_mpz_t(), p);
    if (v != 0) r.emplace(e, v);
  }
  return r;
}

Poly monic_grlex(const Poly& p) { return p.monic(); }

}  // namespace

Poly gcd(const Poly& a_in, const Poly& b_in) {
  if (a_in.is_zero()) return monic_grlex(b_in);
  if (b_in.is_zero()) return monic_grlex(a_in);
  if (a_in.vars() != b_in.vars()) {
    throw Error(ErrorCode::kVariableMismatch, "variable-list mismatch in gcd");
  }
  const auto& vars = a_in.vars();
  const std::size_t nv = vars.size();

  // Monomial part separately.
  const Exponents ma = a_in.monomial_gcd(), mb = b_in.monomial_gcd();
  Exponents m(nv);
  for (std::size_t i = 0; i < nv; ++i) m[i] = std::min(ma[i], mb[i]);
  const Poly mono = Poly::monomial(vars, m, 1);
  const Poly a = a_in.divide_monomial(ma);
  const Poly b = b_in.divide_monomial(mb);
  if (a.is_constant() || b.is_constant()) return mono;
  if (a == b || a.monic() == b.monic()) return mono * a.monic();

  // Compact variable list: only variables present in a or b, original order.
  std::vector<std::size_t> used;
  for (std::size_t i = 0; i < nv; ++i) {
    if (a.depends_on(i) || b.depends_on(i)) used.push_back(i);
  }
  std::vector<std::string> cvars;
  std::vector<std::size_t> to_compact(nv, 0);
  for (std::size_t j = 0; j < used.size(); ++j) {
    cvars.push_back(vars[used[j]]);
    to_compact[used[j]] = j;
  }
  const Poly A = a.remap(cvars, to_compact);
  const Poly B = b.remap(cvars, to_compact);
  const std::size_t k = cvars.size();

  const auto ai = integer_terms(A), bi = integer_terms(B);
  // Leading coefficients in lex order (the map order).
  Integer gamma;
  mpz_gcd(gamma.get_mpz_t(), ai.rbegin()->second.get_mpz_t(), bi.rbegin()->second.get_mpz_t());

  std::mt19937_64 rng(0x9cd1);
  std::map<Exponents, Integer> acc;
  Integer modulus = 0;
  Exponents lead;
  for (std::size_t pi = 0; pi < 400; ++pi) {
    const std::uint64_t p = detail::nth_prime(pi);
    if (mpz_divisible_ui_p(gamma.get_mpz_t(), p)) continue;
    SP img = gcd_mod_p(reduce_mod(ai, p), reduce_mod(bi, p), k, p, rng);
    const Exponents il = img.rbegin()->first;
    if (std::all_of(il.begin(), il.end(), [](auto e) { return e == 0; })) return mono;
    img = sp_scale(img, mpz_fdiv_ui(gamma.get_mpz_t(), p), p);
    if (modulus != 0 && il > lead) continue;
    if (modulus == 0 || il < lead) {
      acc.clear();
      for (const auto& [e, c] : img) acc.emplace(e, Integer(static_cast<unsigned long>(c)));
      modulus = static_cast<unsigned long>(p);
      lead = il;
    } else {
      Integer minv;
      const Integer P(static_cast<unsigned long>(p));
      mpz_invert(minv.get_mpz_t(), modulus.get_mpz_t(), P.get_mpz_t());
      std::map<Exponents, Integer> next;
      auto combine = [&](const Exponents& e, const Integer& old, std::uint64_t cp) {
        Integer d = Integer(static_cast<unsigned long>(cp)) - old;
        d *= minv;
        mpz_fdiv_r(d.get_mpz_t(), d.get_mpz_t(), P.get_mpz_t());
        next.emplace(e, old + modulus * d);
      };
      for (const auto& [e, c] : acc) {
        auto it = img.find(e);
        combine(e, c, it == img.end() ? 0 : it->second);
      }
      for (const auto& [e, c] : img) {
        if (!acc.count(e)) combine(e, Integer(0), c);
      }
      acc = std::move(next);
      modulus *= static_cast<unsigned long>(p);
    }
    // Symmetric reconstruction and trial division.
    std::vector<Term> terms;
    const Integer half = modulus / 2;
    for (const auto& [e, c] : acc) {
      Integer v = c;
      if (v > half) v -= modulus;
      if (v != 0) terms.push_back({e, Rational(v)});
    }
    Poly cand = Poly::from_terms(cvars, std::move(terms));
    if (cand.is_zero()) continue;
    cand = cand.primitive();
    if (divides(cand, A) && divides(cand, B)) {
      std::vector<std::size_t> back(k);
      for (std::size_t j = 0; j < k; ++j) back[j] = used[j];
      return mono * cand.remap(vars, back).monic();
    }
  }
  throw Error(ErrorCode::kInternal, "gcd: prime supply exhausted");
}

}  // namespace cremona
