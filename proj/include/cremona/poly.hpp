#pragma once

// Exact sparse multivariate polynomials over the rationals.
//
// Terms are kept sorted in descending graded-lexicographic order with the
// variable order given by the variable list, so two polynomials over the
// same variables are equal iff their term vectors are equal.

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cremona {

using Integer = mpz_class;
using Rational = mpq_class;

std::string to_string(const Rational& q);

using Exponents = std::vector<std::uint32_t>;

struct Term {
  Exponents exps;
  Rational coeff;
};

// Descending graded-lex: returns true when a sorts before b.
bool grlex_greater(const Exponents& a, const Exponents& b);

class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static Poly constant(std::vector<std::string> vars, const Rational& c);
  static Poly variable(std::vector<std::string> vars, std::size_t index);
  static Poly monomial(std::vector<std::string> vars, Exponents exps,
                       const Rational& c = 1);
  // Collects like terms, drops zeros and sorts.
  static Poly from_terms(std::vector<std::string> vars, std::vector<Term> terms);
  static Poly parse(const std::string& text, const std::vector<std::string>& vars);

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t nvars() const { return vars_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rational constant_term() const;
  // -1 for the zero polynomial.
  int total_degree() const;
  int degree_in(std::size_t var) const;
  int min_degree_in(std::size_t var) const;
  bool is_homogeneous() const;
  bool depends_on(std::size_t var) const { return degree_in(var) > 0; }
  const Term& leading() const { return terms_.front(); }

  Rational eval(std::span<const Rational> point) const;
  // Substitutes values for a subset of variables; other variables stay.
  Poly partial_eval(std::size_t var, const Rational& value) const;
  // images[i] replaces variable i; all images share one variable list,
  // which becomes the variable list of the result.
  Poly substitute(std::span<const Poly> images) const;
  Poly derivative(std::size_t var) const;
  Poly pow(unsigned e) const;
  // Homogeneous component of the given total degree.
  Poly homogeneous_part(int degree) const;
  // Lowest total degree among the terms (order at the origin); -1 for zero.
  int order() const;

  // Same terms over a renamed or re-embedded variable list. `mapping[i]` is
  // the index in `new_vars` of old variable i.
  Poly remap(std::vector<std::string> new_vars,
             std::span<const std::size_t> mapping) const;

  Poly operator-() const;
  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  friend Poly operator*(const Rational& c, Poly a) { return a *= c; }
  friend bool operator==(const Poly& a, const Poly& b);

  // Positive rational c with this/c having coprime integer coefficients.
  Rational content() const;
  // Divided by the leading coefficient (zero stays zero).
  Poly monic() const;
  // Divided by content, sign fixed so the leading coefficient is positive.
  Poly primitive() const;
  // Exponentwise minimum over all terms.
  Exponents monomial_gcd() const;
  Poly divide_monomial(const Exponents& m) const;

  std::string to_string() const;

 private:
  void check_same_vars(const Poly& o, const char* op) const;

  std::vector<std::string> vars_;
  std::vector<Term> terms_;
};

// Exact quotient when b divides a, nullopt otherwise.
std::optional<Poly> exact_div(const Poly& a, const Poly& b);
bool divides(const Poly& b, const Poly& a);

// Normalized gcd over Q (monic; zero only when both inputs are zero).
Poly gcd(const Poly& a, const Poly& b);

class PolyTuple {
 public:
  PolyTuple() = default;
  explicit PolyTuple(std::vector<Poly> entries);

  const std::vector<Poly>& entries() const { return entries_; }
  const Poly& operator[](std::size_t i) const { return entries_[i]; }
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& vars() const;
  bool is_homogeneous() const;
  int degree() const;  // max total degree of the entries
  std::string to_string() const;
  friend bool operator==(const PolyTuple& a, const PolyTuple& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Poly> entries_;
};

Poly mul(const Poly& p, const Poly& q);
// Each entry of f with its variables replaced by the entries of g.
PolyTuple compose_tuple(const PolyTuple& f, const PolyTuple& g);
// Divides by the gcd of the entries, including rational content; the first
// nonzero entry ends with a positive leading coefficient.
PolyTuple primitive_tuple(const PolyTuple& t);
Poly jacobian_det(const PolyTuple& t);

struct Factorization {
  Rational unit;
  std::vector<std::pair<Poly, int>> factors;  // monic irreducible, sorted

  Poly expand(const std::vector<std::string>& vars) const;
};

Factorization factor_q(const Poly& p);

// Default variable names: x,y,z,w for up to four variables, x0..x9 beyond.
std::vector<std::string> default_vars(std::size_t n);

}  // namespace cremona
