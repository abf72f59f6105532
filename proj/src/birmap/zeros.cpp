// Rational common zeros of plane polynomial systems. The x-coordinates of
// the zeros are the roots of the gcd of several resultants, which is
// computed modulo primes; candidate roots are recovered by rational
// reconstruction and then confirmed exactly. Comparing the number of
// distinct roots of that gcd with the number of confirmed x-coordinates
// detects zeros that are not defined over Q.

#include <algorithm>
#include <random>
#include <set>

#include "../poly/poly_internal.hpp"
#include "cremona/birmap.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

using detail::UPolyP;

const std::vector<std::string> kXY = {"x", "y"};

std::uint64_t reduce_rational(const Rational& q, std::uint64_t p) {
  const std::uint64_t n = mpz_fdiv_ui(q.get_num_mpz_t(), p);
  const std::uint64_t d = mpz_fdiv_ui(q.get_den_mpz_t(), p);
  return n * detail::mod_inv(d, p) % p;
}

bool reducible_mod(const Poly& a, std::uint64_t p) {
  for (const auto& t : a.terms()) {
    if (mpz_divisible_ui_p(t.coeff.get_den_mpz_t(), p)) return false;
  }
  return true;
}

// Dense coefficients mod p: c[j] is the coefficient of y^j as a polynomial in x.
std::vector<UPolyP> dense_mod(const Poly& a, std::uint64_t p) {
  std::vector<UPolyP> c(static_cast<std::size_t>(std::max(0, a.degree_in(1))) + 1);
  for (const auto& t : a.terms()) {
    auto& u = c[t.exps[1]];
    if (u.size() <= t.exps[0]) u.resize(t.exps[0] + 1, 0);
    u[t.exps[0]] = (u[t.exps[0]] + reduce_rational(t.coeff, p)) % p;
  }
  return c;
}

UPolyP eval_in_x(const std::vector<UPolyP>& c, std::uint64_t x, std::uint64_t p) {
  UPolyP out(c.size(), 0);
  for (std::size_t j = 0; j < c.size(); ++j) {
    std::uint64_t v = 0;
    for (std::size_t i = c[j].size(); i-- > 0;) v = (v * x + c[j][i]) % p;
    out[j] = v;
  }
  detail::trim(out);
  return out;
}

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1;
  b %= p;
  while (e) {
    if (e & 1U) r = r * b % p;
    b = b * b % p;
    e >>= 1U;
  }
  return r;
}

std::uint64_t resultant_mod(UPolyP a, UPolyP b, std::uint64_t p) {
  if (a.empty() || b.empty()) return 0;
  std::uint64_t res = 1;
  while (detail::deg(b) > 0) {
    const UPolyP r = detail::up_mod(a, b, p);
    if (r.empty()) return 0;
    const int da = detail::deg(a), db = detail::deg(b), dr = detail::deg(r);
    if ((da % 2 == 1) && (db % 2 == 1)) res = (p - res) % p;
    res = res * pow_mod(b.back(), static_cast<std::uint64_t>(da - dr), p) % p;
    a = b;
    b = r;
  }
  return res * pow_mod(b[0], static_cast<std::uint64_t>(detail::deg(a)), p) % p;
}

// Polynomial of degree <= n through the points (xs[i], ys[i]).
UPolyP interpolate(const std::vector<std::uint64_t>& xs, std::vector<std::uint64_t> ys,
                   std::uint64_t p) {
  const std::size_t n = xs.size();
  // Newton divided differences in place.
  for (std::size_t k = 1; k < n; ++k) {
    for (std::size_t i = n - 1; i >= k; --i) {
      const std::uint64_t num = (ys[i] + p - ys[i - 1]) % p;
      const std::uint64_t den = (xs[i] + p - xs[i - k]) % p;
      ys[i] = num * detail::mod_inv(den, p) % p;
    }
  }
  UPolyP acc{ys[n - 1]};
  for (std::size_t i = n - 1; i-- > 0;) {
    acc = detail::up_mul(acc, UPolyP{(p - xs[i]) % p, 1}, p);
    if (acc.empty()) acc = {0};
    acc[0] = (acc[0] + ys[i]) % p;
    detail::trim(acc);
  }
  return acc;
}

std::optional<Rational> rational_reconstruct(const Integer& r, const Integer& m) {
  // Half-extended Euclid: find a/b = r mod m with |a|, b <= sqrt(m/2).
  Integer bound;
  mpz_sqrt(bound.get_mpz_t(), Integer(m / 2).get_mpz_t());
  Integer r0 = m, r1 = r, t0 = 0, t1 = 1;
  while (r1 > bound) {
    const Integer q = r0 / r1;
    Integer tmp = r0 - q * r1;
    r0 = r1;
    r1 = tmp;
    tmp = t0 - q * t1;
    t0 = t1;
    t1 = tmp;
  }
  if (t1 == 0 || abs(t1) > bound) return std::nullopt;
  Rational out(r1, t1);
  out.canonicalize();
  return out;
}

struct ModularData {
  std::uint64_t p;
  UPolyP gcd_res;  // squarefree
  std::vector<std::uint64_t> roots;
};

}  // namespace

AffineZeros common_zeros_2d(const std::vector<Poly>& polys_in, std::size_t ix, std::size_t iy) {
  AffineZeros out;
  std::vector<Poly> polys;
  for (const auto& p : polys_in) {
    if (p.is_zero()) continue;
    if (p.is_constant()) return out;
    // Move to the variable list {x, y}.
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
      for (std::size_t k = 0; k < t.exps.size(); ++k) {
        if (k != ix && k != iy && t.exps[k] != 0) {
          throw Error(ErrorCode::kInternal, "common_zeros_2d: unexpected variable");
        }
      }
      terms.push_back({{t.exps[ix], t.exps[iy]}, t.coeff});
    }
    polys.push_back(Poly::from_terms(kXY, std::move(terms)));
  }
  if (polys.empty()) throw Error(ErrorCode::kInternal, "common zero locus is the whole plane");
  Poly g(kXY);
  for (const auto& p : polys) g = gcd(g, p);
  if (!g.is_constant()) {
    throw Error(ErrorCode::kInternal, "positive-dimensional common zero locus: " + g.to_string());
  }

  std::mt19937_64 rng(0xC0FFEE);
  std::uniform_int_distribution<int> coef(1, 97);
  auto combo = [&]() {
    Poly a(kXY);
    for (const auto& p : polys) a += p * Rational(coef(rng));
    return a;
  };
  // Random combinations and a shear making both monic-degree in y.
  constexpr int kRounds = 3;
  std::vector<std::pair<Poly, Poly>> pairs;
  Rational shear = 0;
  for (int attempt = 0; attempt < 50 && pairs.size() < kRounds; ++attempt) {
    Poly a = combo(), b = combo();
    if (a.total_degree() < 1 || b.total_degree() < 1) continue;
    pairs.emplace_back(std::move(a), std::move(b));
  }
  if (polys.size() == 2) {
    pairs.assign(1, {polys[0], polys[1]});
  }
  for (int s = 0; s < 200; ++s) {
    shear = (s % 2 == 0) ? s / 2 : -(s + 1) / 2;
    bool ok = true;
    for (const auto& [a, b] : pairs) {
      const std::vector<Rational> pt = {shear, Rational(1)};
      for (const Poly* q : {&a, &b}) {
        const Poly top = q->homogeneous_part(q->total_degree());
        if (top.eval(pt) == 0) ok = false;
      }
    }
    if (ok) break;
  }
  // x = x' + shear*y.
  const std::vector<Poly> shear_img = {
      Poly::variable(kXY, 0) + Poly::variable(kXY, 1) * shear, Poly::variable(kXY, 1)};
  std::vector<std::pair<Poly, Poly>> sheared;
  for (const auto& [a, b] : pairs) sheared.emplace_back(a.substitute(shear_img), b.substitute(shear_img));
  std::vector<Poly> sheared_polys;
  for (const auto& p : polys) sheared_polys.push_back(p.substitute(shear_img));

  std::vector<ModularData> mods;
  for (std::size_t pi = 0; mods.size() < 2 && pi < 40; ++pi) {
    const std::uint64_t p = detail::nth_prime(pi);
    bool good = true;
    for (const auto& [a, b] : sheared) {
      if (!reducible_mod(a, p) || !reducible_mod(b, p)) good = false;
      if (good && (reduce_rational(a.homogeneous_part(a.total_degree()).eval(
                                       std::vector<Rational>{Rational(0), Rational(1)}),
                                   p) == 0 ||
                   reduce_rational(b.homogeneous_part(b.total_degree()).eval(
                                       std::vector<Rational>{Rational(0), Rational(1)}),
                                   p) == 0)) {
        good = false;
      }
    }
    if (!good) continue;
    UPolyP acc;
    bool zero_res = false;
    for (const auto& [a, b] : sheared) {
      const auto da = dense_mod(a, p), db = dense_mod(b, p);
      const std::size_t n = static_cast<std::size_t>(a.total_degree() * b.total_degree()) + 1;
      std::vector<std::uint64_t> xs(n), ys(n);
      for (std::size_t j = 0; j < n; ++j) {
        xs[j] = j + 1;
        ys[j] = resultant_mod(eval_in_x(da, xs[j], p), eval_in_x(db, xs[j], p), p);
      }
      UPolyP r = interpolate(xs, ys, p);
      if (r.empty()) {
        zero_res = true;
        break;
      }
      acc = detail::up_gcd(acc, r, p);
    }
    if (zero_res) continue;
    // Squarefree part.
    const UPolyP d = detail::up_gcd(acc, detail::up_derivative(acc, p), p);
    UPolyP sf, rem;
    detail::up_divmod(acc, d, p, sf, rem);
    sf = detail::up_monic(sf, p);
    ModularData md{p, sf, {}};
    if (detail::deg(sf) > 0) {
      std::mt19937_64 frng(pi + 1);
      for (const auto& fac : detail::up_factor_squarefree(sf, p, frng)) {
        if (detail::deg(fac) == 1) md.roots.push_back((p - fac[0]) % p);
      }
    }
    mods.push_back(std::move(md));
  }
  if (mods.empty()) throw Error(ErrorCode::kInternal, "no usable prime for elimination");
  const auto& m0 = mods.front();

  // Candidate x'-values: reconstruction from one prime, then from pairs.
  std::set<Rational> tried;
  std::set<Rational> confirmed_x;
  std::set<std::pair<Rational, Rational>> points;
  auto test_x = [&](const Rational& x0) {
    if (!tried.insert(x0).second) return;
    detail::UPolyQ h;
    for (const auto& q : sheared_polys) {
      const detail::UPolyQ u = detail::to_upoly(q.partial_eval(0, x0), 1);
      h = detail::uq_gcd(h, u);
    }
    if (h.size() <= 1) return;
    confirmed_x.insert(x0);
    const auto roots = detail::uq_rational_roots(h);
    detail::UPolyQ sf, rem;
    detail::uq_divmod(h, detail::uq_gcd(h, detail::uq_derivative(h)), sf, rem);
    if (static_cast<int>(roots.size()) < detail::deg(sf)) out.irrational = true;
    for (const auto& y0 : roots) points.emplace(x0 + shear * y0, y0);
  };
  for (const auto r : m0.roots) {
    if (auto q = rational_reconstruct(Integer(static_cast<unsigned long>(r)),
                                      Integer(static_cast<unsigned long>(m0.p)))) {
      test_x(*q);
    }
  }
  const int expected = detail::deg(m0.gcd_res);
  if (static_cast<int>(confirmed_x.size()) < expected && mods.size() > 1) {
    const auto& m1 = mods[1];
    const Integer P0(static_cast<unsigned long>(m0.p)), P1(static_cast<unsigned long>(m1.p));
    Integer inv;
    mpz_invert(inv.get_mpz_t(), P0.get_mpz_t(), P1.get_mpz_t());
    for (const auto r0 : m0.roots) {
      for (const auto r1 : m1.roots) {
        Integer t = (Integer(static_cast<unsigned long>(r1)) - r0) * inv;
        mpz_fdiv_r(t.get_mpz_t(), t.get_mpz_t(), P1.get_mpz_t());
        const Integer r = Integer(static_cast<unsigned long>(r0)) + P0 * t;
        if (auto q = rational_reconstruct(r, P0 * P1)) test_x(*q);
      }
    }
  }
  int min_expected = expected;
  for (const auto& md : mods) min_expected = std::min(min_expected, detail::deg(md.gcd_res));
  if (static_cast<int>(confirmed_x.size()) < min_expected) out.irrational = true;
  out.points.assign(points.begin(), points.end());
  return out;
}

ProjPoint normalize_point(ProjPoint p) {
  for (std::size_t i = p.size(); i-- > 0;) {
    if (p[i] != 0) {
      const Rational s = 1 / p[i];
      for (auto& c : p) c *= s;
      return p;
    }
  }
  throw Error(ErrorCode::kZeroInput, "the zero vector is not a projective point");
}

std::string point_to_string(const ProjPoint& p) {
  std::string s = "[";
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ":";
    s += p[i].get_str();
  }
  return s + "]";
}

IndeterminacyLocus indeterminacy_points(const ProjMap& f) {
  if (f.dim() != 2) throw Error(ErrorCode::kPrecondition, "indeterminacy_points needs a map of P^2");
  IndeterminacyLocus out;
  std::set<ProjPoint> pts;
  // Chart z = 1.
  std::vector<Poly> chart;
  for (const auto& c : f.coords().entries()) chart.push_back(c.partial_eval(2, 1));
  const AffineZeros az = common_zeros_2d(chart, 0, 1);
  out.irrational = az.irrational;
  for (const auto& [x, y] : az.points) pts.insert({x, y, Rational(1)});
  // Line z = 0.
  Poly g(f.vars());
  for (const auto& c : f.coords().entries()) g = gcd(g, c.partial_eval(2, 0));
  if (g.is_zero()) throw Error(ErrorCode::kInternal, "coordinates share the factor z");
  if (!g.is_constant()) {
    for (const auto& [fac, mult] : factor_q(g).factors) {
      if (fac.total_degree() != 1) {
        out.irrational = true;
        continue;
      }
      Rational a = 0, b = 0;
      for (const auto& t : fac.terms()) {
        if (t.exps[0] == 1) a = t.coeff;
        if (t.exps[1] == 1) b = t.coeff;
      }
      pts.insert(normalize_point({b, -a, Rational(0)}));
    }
  }
  out.points.assign(pts.begin(), pts.end());
  return out;
}

}  // namespace cremona
