// Univariate factorization over Z: modular factorization, Hensel lifting
// and recombination of lifted factors by trial division.

#include <algorithm>

#include "cremona/error.hpp"
#include "poly_internal.hpp"

namespace cremona::detail {
namespace {

UPolyZ zmul(const UPolyZ& a, const UPolyZ& b) {
  if (a.empty() || b.empty()) return {};
  UPolyZ r(a.size() + b.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

void zreduce(UPolyZ& a, const Integer& m) {
  for (auto& c : a) mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  trim(a);
}

void zsymmetric(UPolyZ& a, const Integer& m) {
  const Integer half = m / 2;
  for (auto& c : a) {
    mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
    if (c > half) c -= m;
  }
  trim(a);
}

UPolyZ from_p(const UPolyP& a) {
  UPolyZ r;
  r.reserve(a.size());
  for (auto c : a) r.emplace_back(static_cast<unsigned long>(c));
  return r;
}

// Lifts f = g0*h0 mod p (g0 monic, coprime to h0) to f = G*H mod pk.
void hensel_pair(const UPolyZ& f, const UPolyP& g0, const UPolyP& h0, std::uint64_t p,
                 const Integer& pk, UPolyZ& G, UPolyZ& H) {
  UPolyP s, t;
  up_xgcd(g0, h0, p, s, t);
  G = from_p(g0);
  H = from_p(h0);
  H.back() = f.back();
  Integer m(static_cast<unsigned long>(p));
  while (m < pk) {
    UPolyZ diff = zmul(G, H);
    diff.resize(std::max(diff.size(), f.size()), Integer(0));
    for (std::size_t i = 0; i < diff.size(); ++i) {
      diff[i] = (i < f.size() ? f[i] : Integer(0)) - diff[i];
    }
    trim(diff);
    for (auto& c : diff) {
      if (!mpz_divisible_p(c.get_mpz_t(), m.get_mpz_t())) {
        throw Error(ErrorCode::kInternal, "Hensel lifting lost congruence");
      }
      c /= m;
    }
    const UPolyP e = up_reduce(diff, p);
    const UPolyP dg = up_mod(up_mul(t, e, p), g0, p);
    UPolyP dh, rem;
    up_divmod(up_sub(e, up_mul(dg, h0, p), p), g0, p, dh, rem);
    UPolyZ dgz = from_p(dg), dhz = from_p(dh);
    G.resize(std::max(G.size(), dgz.size()), Integer(0));
    H.resize(std::max(H.size(), dhz.size()), Integer(0));
    for (std::size_t i = 0; i < dgz.size(); ++i) G[i] += m * dgz[i];
    for (std::size_t i = 0; i < dhz.size(); ++i) H[i] += m * dhz[i];
    m *= static_cast<unsigned long>(p);
    zreduce(G, pk);
    zreduce(H, pk);
  }
}

void hensel_all(const UPolyZ& f, const std::vector<UPolyP>& facs, std::size_t lo,
                std::size_t hi, std::uint64_t p, const Integer& pk, std::vector<UPolyZ>& out) {
  if (hi - lo == 1) {
    Integer inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), pk.get_mpz_t());
    UPolyZ g = f;
    for (auto& c : g) c *= inv;
    zreduce(g, pk);
    out.push_back(std::move(g));
    return;
  }
  const std::size_t mid = lo + (hi - lo) / 2;
  UPolyP g0{1}, h0{1};
  for (std::size_t i = lo; i < mid; ++i) g0 = up_mul(g0, facs[i], p);
  for (std::size_t i = mid; i < hi; ++i) h0 = up_mul(h0, facs[i], p);
  const UPolyP lc = up_reduce(UPolyZ{f.back()}, p);
  h0 = up_mul(h0, lc, p);
  UPolyZ G, H;
  hensel_pair(f, g0, h0, p, pk, G, H);
  hensel_all(G, facs, lo, mid, p, pk, out);
  hensel_all(H, facs, mid, hi, p, pk, out);
}

// Exact quotient a / b over Z, or false.
bool zdivide(const UPolyZ& a, const UPolyZ& b, UPolyZ& q) {
  UPolyZ r = a;
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Integer(0));
  while (r.size() >= b.size()) {
    const std::size_t shift = r.size() - b.size();
    if (!mpz_divisible_p(r.back().get_mpz_t(), b.back().get_mpz_t())) return false;
    const Integer c = r.back() / b.back();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i) r[shift + i] -= c * b[i];
    if (r.back() != 0) return false;
    trim(r);
  }
  trim(q);
  return r.empty();
}

UPolyZ zprimitive(UPolyZ a) {
  Integer g = 0;
  for (const auto& c : a) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  if (g > 1) {
    for (auto& c : a) c /= g;
  }
  if (!a.empty() && a.back() < 0) {
    for (auto& c : a) c = -c;
  }
  return a;
}

}  // namespace

std::vector<UPolyZ> zassenhaus(const UPolyZ& f_in) {
  UPolyZ f = f_in;
  trim(f);
  if (f.size() <= 2) return {f};
  const std::size_t n = f.size() - 1;

  // Pick among a few good primes the one giving the fewest modular factors.
  std::mt19937_64 rng(0x5eed);
  std::vector<UPolyP> best;
  std::uint64_t best_p = 0;
  int good = 0;
  for (std::size_t i = 0; good < 5 && i < 200; ++i) {
    const std::uint64_t p = nth_prime(i);
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), p)) continue;
    const UPolyP fp = up_reduce(f, p);
    if (deg(up_gcd(fp, up_derivative(fp, p), p)) > 0) continue;
    ++good;
    auto facs = up_factor_squarefree(fp, p, rng);
    if (best_p == 0 || facs.size() < best.size()) {
      best = std::move(facs);
      best_p = p;
    }
    if (best.size() == 1) return {f};
  }
  if (best_p == 0) throw Error(ErrorCode::kInternal, "no good prime for factorization");

  // Coefficient bound for factors of lc*f.
  Integer norm2 = 0;
  for (const auto& c : f) norm2 += c * c;
  Integer norm;
  mpz_sqrt(norm.get_mpz_t(), norm2.get_mpz_t());
  norm += 1;
  Integer bound = norm * abs(f.back());
  bound <<= static_cast<mp_bitcnt_t>(n + 1);
  Integer pk(static_cast<unsigned long>(best_p));
  while (pk <= bound) pk *= static_cast<unsigned long>(best_p);

  std::vector<UPolyZ> lifted;
  hensel_all(f, best, 0, best.size(), best_p, pk, lifted);

  std::vector<UPolyZ> result;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    const std::size_t r = lifted.size();
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      UPolyZ g{f.back()};
      for (auto i : idx) {
        g = zmul(g, lifted[i]);
        zreduce(g, pk);
      }
      zsymmetric(g, pk);
      bool plausible = true;
      if (f.front() != 0 && g.front() != 0) {
        const Integer target = f.front() * f.back();
        plausible = mpz_divisible_p(target.get_mpz_t(), g.front().get_mpz_t()) != 0;
      }
      UPolyZ q;
      if (plausible) {
        UPolyZ gp = zprimitive(g);
        if (zdivide(f, gp, q)) {
          result.push_back(gp);
          f = q;
          std::vector<UPolyZ> rest;
          for (std::size_t i = 0, k = 0; i < r; ++i) {
            if (k < s && idx[k] == i) {
              ++k;
            } else {
              rest.push_back(std::move(lifted[i]));
            }
          }
          lifted = std::move(rest);
          found = true;
          break;
        }
      }
      // Next combination.
      std::size_t k = s;
      while (k > 0 && idx[k - 1] == r - s + k - 1) --k;
      if (k == 0) break;
      ++idx[k - 1];
      for (std::size_t j = k; j < s; ++j) idx[j] = idx[j - 1] + 1;
    }
    if (!found) ++s;
  }
  if (f.size() > 1) result.push_back(zprimitive(f));
  return result;
}

}  // namespace cremona::detail
