#pragma once

// Helpers shared by the gcd and factorization code. Dense univariate
// polynomials are stored lowest coefficient first with no trailing zeros.

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona::detail {

struct ExponentsHash {
  std::size_t operator()(const Exponents& e) const noexcept {
    std::size_t h = 1469598103934665603ULL;
    for (auto x : e) {
      h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    }
    return h;
  }
};

using UPolyQ = std::vector<Rational>;
using UPolyZ = std::vector<Integer>;
using UPolyP = std::vector<std::uint64_t>;

// Univariate view of p in variable var; every other variable must be absent.
UPolyQ to_upoly(const Poly& p, std::size_t var);
Poly from_upoly(const UPolyQ& u, const std::vector<std::string>& vars, std::size_t var);

void trim(UPolyQ& a);
void trim(UPolyZ& a);
void trim(UPolyP& a);
int deg(const UPolyQ& a);
int deg(const UPolyP& a);

UPolyQ uq_mul(const UPolyQ& a, const UPolyQ& b);
UPolyQ uq_sub(const UPolyQ& a, const UPolyQ& b);
void uq_divmod(const UPolyQ& a, const UPolyQ& b, UPolyQ& q, UPolyQ& r);
UPolyQ uq_gcd(UPolyQ a, UPolyQ b);  // monic
UPolyQ uq_derivative(const UPolyQ& a);
Rational uq_eval(const UPolyQ& a, const Rational& x);
// Rational roots of a nonzero polynomial, without multiplicity, sorted.
std::vector<Rational> uq_rational_roots(const UPolyQ& a);

// Primitive integer polynomial proportional to a, positive leading coeff.
UPolyZ uq_to_primitive_z(const UPolyQ& a);

// Arithmetic modulo a prime p < 2^31.
std::uint64_t mod_inv(std::uint64_t a, std::uint64_t p);
UPolyP up_reduce(const UPolyZ& a, std::uint64_t p);
UPolyP up_mul(const UPolyP& a, const UPolyP& b, std::uint64_t p);
UPolyP up_sub(const UPolyP& a, const UPolyP& b, std::uint64_t p);
void up_divmod(const UPolyP& a, const UPolyP& b, std::uint64_t p, UPolyP& q, UPolyP& r);
UPolyP up_mod(const UPolyP& a, const UPolyP& b, std::uint64_t p);
UPolyP up_gcd(UPolyP a, UPolyP b, std::uint64_t p);  // monic
UPolyP up_monic(const UPolyP& a, std::uint64_t p);
UPolyP up_derivative(const UPolyP& a, std::uint64_t p);
// Extended gcd: s*a + t*b = g (monic).
UPolyP up_xgcd(const UPolyP& a, const UPolyP& b, std::uint64_t p, UPolyP& s, UPolyP& t);
UPolyP up_powmod(UPolyP base, Integer e, const UPolyP& m, std::uint64_t p);

// Monic irreducible factors of a squarefree monic polynomial mod p.
std::vector<UPolyP> up_factor_squarefree(const UPolyP& f, std::uint64_t p,
                                         std::mt19937_64& rng);

// Irreducible factors over Z of a squarefree primitive polynomial of degree
// at least one with positive leading coefficient.
std::vector<UPolyZ> zassenhaus(const UPolyZ& f);

// Primes below 2^31 in descending order, generated on demand.
std::uint64_t nth_prime(std::size_t n);

bool is_probable_prime(std::uint64_t n);

// Inverse of a modulo m over Q (gcd(a, m) must be 1).
UPolyQ uq_inverse_mod(const UPolyQ& a, const UPolyQ& m);

// gcd of the coefficients of p viewed as a polynomial in var.
Poly content_wrt(const Poly& p, std::size_t var);

// Irreducible factors of a squarefree polynomial in exactly the two
// variables ix and iy, primitive with respect to both.
std::vector<Poly> factor_bivariate_squarefree(const Poly& s, std::size_t ix, std::size_t iy);

// Irreducible factors over Q of a squarefree polynomial without monomial
// factors (any number of variables).
std::vector<Poly> factor_squarefree(const Poly& s);

}  // namespace cremona::detail
