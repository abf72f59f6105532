#include <algorithm>
#include <map>

#include "cremona/error.hpp"
#include "poly_internal.hpp"

namespace cremona::detail {

UPolyQ to_upoly(const Poly& p, std::size_t var) {
  UPolyQ u;
  for (const auto& t : p.terms()) {
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (i != var && t.exps[i] != 0) {
        throw Error(ErrorCode::kInternal, "to_upoly: polynomial is not univariate");
      }
    }
    const auto e = t.exps[var];
    if (u.size() <= e) u.resize(e + 1);
    u[e] += t.coeff;
  }
  trim(u);
  return u;
}

Poly from_upoly(const UPolyQ& u, const std::vector<std::string>& vars, std::size_t var) {
  std::vector<Term> terms;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (u[i] == 0) continue;
    Exponents e(vars.size(), 0);
    e[var] = static_cast<std::uint32_t>(i);
    terms.push_back({std::move(e), u[i]});
  }
  return Poly::from_terms(vars, std::move(terms));
}

void trim(UPolyQ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
void trim(UPolyZ& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
void trim(UPolyP& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}
int deg(const UPolyQ& a) { return static_cast<int>(a.size()) - 1; }
int deg(const UPolyP& a) { return static_cast<int>(a.size()) - 1; }

UPolyQ uq_mul(const UPolyQ& a, const UPolyQ& b) {
  if (a.empty() || b.empty()) return {};
  UPolyQ r(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

UPolyQ uq_sub(const UPolyQ& a, const UPolyQ& b) {
  UPolyQ r(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

void uq_divmod(const UPolyQ& a, const UPolyQ& b, UPolyQ& q, UPolyQ& r) {
  if (b.empty()) throw Error(ErrorCode::kZeroInput, "univariate division by zero");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, Rational(0));
  const Rational inv = 1 / b.back();
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const Rational c = r.back() * inv;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    r.pop_back();
    trim(r);
  }
  trim(q);
}

UPolyQ uq_gcd(UPolyQ a, UPolyQ b) {
  trim(a);
  trim(b);
  // Work on primitive integer versions to keep coefficient growth down.
  while (!b.empty()) {
    UPolyQ q, r;
    uq_divmod(a, b, q, r);
    a = std::move(b);
    b = r.empty() ? r : UPolyQ();
    if (!r.empty()) {
      UPolyZ z = uq_to_primitive_z(r);
      b.assign(z.begin(), z.end());
    }
  }
  if (a.empty()) return a;
  const Rational inv = 1 / a.back();
  for (auto& c : a) c *= inv;
  return a;
}

UPolyQ uq_derivative(const UPolyQ& a) {
  UPolyQ r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * static_cast<unsigned long>(i));
  trim(r);
  return r;
}

Rational uq_eval(const UPolyQ& a, const Rational& x) {
  Rational acc = 0;
  for (std::size_t i = a.size(); i-- > 0;) acc = acc * x + a[i];
  return acc;
}

UPolyZ uq_to_primitive_z(const UPolyQ& a) {
  Integer den = 1, num = 0;
  for (const auto& c : a) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  UPolyZ z;
  z.reserve(a.size());
  for (const auto& c : a) {
    Integer v = c.get_num() * (den / c.get_den());
    z.push_back(num == 0 ? v : Integer(v / num));
  }
  trim(z);
  if (!z.empty() && z.back() < 0) {
    for (auto& c : z) c = -c;
  }
  return z;
}

std::vector<Rational> uq_rational_roots(const UPolyQ& a) {
  UPolyQ sf = a;
  trim(sf);
  if (sf.size() <= 1) return {};
  // Squarefree part, then linear factors over Z.
  const UPolyQ g = uq_gcd(sf, uq_derivative(sf));
  if (g.size() > 1) {
    UPolyQ q, r;
    uq_divmod(sf, g, q, r);
    sf = q;
  }
  std::vector<Rational> roots;
  UPolyZ z = uq_to_primitive_z(sf);
  // Roots at zero are split off first.
  if (z.front() == 0) {
    roots.emplace_back(0);
    z.erase(z.begin());
  }
  if (z.size() > 1) {
    for (const auto& f : zassenhaus(z)) {
      if (f.size() == 2) {
        Rational r(-f[0], f[1]);
        r.canonicalize();
        roots.push_back(r);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

// ---- arithmetic mod p ----

std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(p), nr = static_cast<std::int64_t>(a % p);
  while (nr != 0) {
    const std::int64_t q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  if (r != 1) throw Error(ErrorCode::kInternal, "mod_inv of non-unit");
  if (t < 0) t += static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(t);
}

UPolyP up_reduce(const UPolyZ& a, std::uint64_t p) {
  UPolyP r(a.size());
  const Integer P(static_cast<unsigned long>(p));
  for (std::size_t i = 0; i < a.size(); ++i) {
    Integer m;
    mpz_fdiv_r(m.get_mpz_t(), a[i].get_mpz_t(), P.get_mpz_t());
    r[i] = m.get_ui();
  }
  trim(r);
  return r;
}

UPolyP up_mul(const UPolyP& a, const UPolyP& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  UPolyP r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  trim(r);
  return r;
}

UPolyP up_sub(const UPolyP& a, const UPolyP& b, std::uint64_t p) {
  UPolyP r(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] = (r[i] + p - b[i]) % p;
  trim(r);
  return r;
}

void up_divmod(const UPolyP& a, const UPolyP& b, std::uint64_t p, UPolyP& q, UPolyP& r) {
  if (b.empty()) throw Error(ErrorCode::kZeroInput, "division by zero mod p");
  r = a;
  trim(r);
  q.assign(r.size() >= b.size() ? r.size() - b.size() + 1 : 0, 0);
  const std::uint64_t inv = mod_inv(b.back(), p);
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    const std::uint64_t c = r.back() * inv % p;
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) {
      r[shift + i] = (r[shift + i] + p - c * b[i] % p) % p;
    }
    trim(r);
  }
  trim(q);
}

UPolyP up_mod(const UPolyP& a, const UPolyP& b, std::uint64_t p) {
  UPolyP q, r;
  up_divmod(a, b, p, q, r);
  return r;
}

UPolyP up_monic(const UPolyP& a, std::uint64_t p) {
  if (a.empty()) return a;
  const std::uint64_t inv = mod_inv(a.back(), p);
  UPolyP r(a);
  for (auto& c : r) c = c * inv % p;
  return r;
}

UPolyP up_gcd(UPolyP a, UPolyP b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    UPolyP r = up_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return up_monic(a, p);
}

UPolyP up_derivative(const UPolyP& a, std::uint64_t p) {
  UPolyP r;
  for (std::size_t i = 1; i < a.size(); ++i) r.push_back(a[i] * (i % p) % p);
  trim(r);
  return r;
}

UPolyP up_xgcd(const UPolyP& a, const UPolyP& b, std::uint64_t p, UPolyP& s, UPolyP& t) {
  UPolyP r0 = a, r1 = b, s0{1}, s1{}, t0{}, t1{1};
  trim(r0);
  trim(r1);
  while (!r1.empty()) {
    UPolyP q, r;
    up_divmod(r0, r1, p, q, r);
    UPolyP s2 = up_sub(s0, up_mul(q, s1, p), p);
    UPolyP t2 = up_sub(t0, up_mul(q, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.empty()) {
    s = {};
    t = {};
    return r0;
  }
  const std::uint64_t inv = mod_inv(r0.back(), p);
  for (auto& c : s0) c = c * inv % p;
  for (auto& c : t0) c = c * inv % p;
  s = s0;
  t = t0;
  return up_monic(r0, p);
}

UPolyP up_powmod(UPolyP base, Integer e, const UPolyP& m, std::uint64_t p) {
  UPolyP result{1};
  base = up_mod(base, m, p);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = up_mod(up_mul(result, base, p), m, p);
    e >>= 1;
    if (e > 0) base = up_mod(up_mul(base, base, p), m, p);
  }
  return result;
}

namespace {

void equal_degree_split(const UPolyP& f, int d, std::uint64_t p, std::mt19937_64& rng,
                        std::vector<UPolyP>& out) {
  if (deg(f) == d) {
    out.push_back(f);
    return;
  }
  Integer pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
  const Integer e = (pd - 1) / 2;
  std::uniform_int_distribution<std::uint64_t> dist(0, p - 1);
  while (true) {
    UPolyP a(static_cast<std::size_t>(deg(f)));
    for (auto& c : a) c = dist(rng);
    trim(a);
    if (deg(a) < 1) continue;
    UPolyP g = up_gcd(a, f, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree_split(g, d, p, rng, out);
      UPolyP q, r;
      up_divmod(f, g, p, q, r);
      equal_degree_split(q, d, p, rng, out);
      return;
    }
    UPolyP b = up_powmod(a, e, f, p);
    b = up_sub(b, UPolyP{1}, p);
    g = up_gcd(b, f, p);
    if (deg(g) > 0 && deg(g) < deg(f)) {
      equal_degree_split(g, d, p, rng, out);
      UPolyP q, r;
      up_divmod(f, g, p, q, r);
      equal_degree_split(up_monic(q, p), d, p, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<UPolyP> up_factor_squarefree(const UPolyP& f_in, std::uint64_t p,
                                         std::mt19937_64& rng) {
  std::vector<UPolyP> out;
  UPolyP f = up_monic(f_in, p);
  if (deg(f) <= 0) return out;
  const UPolyP x{0, 1};
  UPolyP h = x;
  int d = 0;
  while (2 * (d + 1) <= deg(f)) {
    ++d;
    h = up_powmod(h, Integer(static_cast<unsigned long>(p)), f, p);
    UPolyP g = up_gcd(up_sub(h, x, p), f, p);
    if (deg(g) > 0) {
      equal_degree_split(g, d, p, rng, out);
      UPolyP q, r;
      up_divmod(f, g, p, q, r);
      f = up_monic(q, p);
      h = up_mod(h, f, p);
    }
  }
  if (deg(f) > 0) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

bool is_probable_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  auto mulmod = [n](std::uint64_t a, std::uint64_t b) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
  };
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = 1, b = a % n, e = d;
    while (e) {
      if (e & 1U) x = mulmod(x, b);
      b = mulmod(b, b);
      e >>= 1U;
    }
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t nth_prime(std::size_t n) {
  static std::vector<std::uint64_t> cache;
  std::uint64_t candidate = cache.empty() ? (1ULL << 31) : cache.back();
  while (cache.size() <= n) {
    --candidate;
    if (is_probable_prime(candidate)) cache.push_back(candidate);
  }
  return cache[n];
}

}  // namespace cremona::detail
