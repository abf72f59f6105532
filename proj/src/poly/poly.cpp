#include "cremona/poly.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "cremona/error.hpp"
#include "poly_internal.hpp"

namespace cremona {

std::string to_string(const Rational& q) { return q.get_str(); }

bool grlex_greater(const Exponents& a, const Exponents& b) {
  std::uint64_t da = 0, db = 0;
  for (auto e : a) da += e;
  for (auto e : b) db += e;
  if (da != db) return da > db;
  return a > b;
}

std::vector<std::string> default_vars(std::size_t n) {
  if (n <= 4) {
    static const char* kNames[] = {"x", "y", "z", "w"};
    return {kNames, kNames + n};
  }
  std::vector<std::string> v;
  for (std::size_t i = 0; i < n; ++i) v.push_back("x" + std::to_string(i));
  return v;
}

Poly Poly::constant(std::vector<std::string> vars, const Rational& c) {
  Poly p(std::move(vars));
  if (c != 0) p.terms_.push_back({Exponents(p.nvars(), 0), c});
  return p;
}

Poly Poly::variable(std::vector<std::string> vars, std::size_t index) {
  Exponents e(vars.size(), 0);
  e.at(index) = 1;
  return monomial(std::move(vars), std::move(e), 1);
}

Poly Poly::monomial(std::vector<std::string> vars, Exponents exps, const Rational& c) {
  Poly p(std::move(vars));
  if (exps.size() != p.nvars()) {
    throw Error(ErrorCode::kVariableMismatch, "monomial arity does not match variables");
  }
  if (c != 0) p.terms_.push_back({std::move(exps), c});
  return p;
}

Poly Poly::from_terms(std::vector<std::string> vars, std::vector<Term> terms) {
  Poly p(std::move(vars));
  std::sort(terms.begin(), terms.end(),
            [](const Term& a, const Term& b) { return grlex_greater(a.exps, b.exps); });
  for (auto& t : terms) {
    if (t.exps.size() != p.nvars()) {
      throw Error(ErrorCode::kVariableMismatch, "term arity does not match variables");
    }
    if (!p.terms_.empty() && p.terms_.back().exps == t.exps) {
      p.terms_.back().coeff += t.coeff;
    } else {
      if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
      p.terms_.push_back(std::move(t));
    }
  }
  if (!p.terms_.empty() && p.terms_.back().coeff == 0) p.terms_.pop_back();
  return p;
}

bool Poly::is_constant() const {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_[0].exps.begin(), terms_[0].exps.end(),
                      [](auto e) { return e == 0; }));
}

Rational Poly::constant_term() const {
  if (terms_.empty()) return 0;
  const auto& last = terms_.back();
  for (auto e : last.exps) {
    if (e != 0) return 0;
  }
  return last.coeff;
}

int Poly::total_degree() const {
  if (terms_.empty()) return -1;
  std::uint64_t d = 0;
  for (auto e : terms_.front().exps) d += e;
  return static_cast<int>(d);
}

int Poly::degree_in(std::size_t var) const {
  int d = terms_.empty() ? -1 : 0;
  for (const auto& t : terms_) d = std::max(d, static_cast<int>(t.exps[var]));
  return d;
}

int Poly::min_degree_in(std::size_t var) const {
  if (terms_.empty()) return -1;
  int d = static_cast<int>(terms_.front().exps[var]);
  for (const auto& t : terms_) d = std::min(d, static_cast<int>(t.exps[var]));
  return d;
}

bool Poly::is_homogeneous() const {
  if (terms_.empty()) return true;
  const int d = total_degree();
  for (const auto& t : terms_) {
    std::uint64_t s = 0;
    for (auto e : t.exps) s += e;
    if (static_cast<int>(s) != d) return false;
  }
  return true;
}

int Poly::order() const {
  if (terms_.empty()) return -1;
  std::uint64_t s = 0;
  for (auto e : terms_.back().exps) s += e;
  return static_cast<int>(s);
}

Poly Poly::homogeneous_part(int degree) const {
  Poly r(vars_);
  for (const auto& t : terms_) {
    std::uint64_t s = 0;
    for (auto e : t.exps) s += e;
    if (static_cast<int>(s) == degree) r.terms_.push_back(t);
  }
  return r;
}

Rational Poly::eval(std::span<const Rational> point) const {
  if (point.size() != nvars()) {
    throw Error(ErrorCode::kArity, "evaluation point has wrong arity");
  }
  Rational acc = 0;
  for (const auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.exps[i] == 0) continue;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), point[i].get_num_mpz_t(), t.exps[i]);
      mpz_pow_ui(pw.get_den_mpz_t(), point[i].get_den_mpz_t(), t.exps[i]);
      v *= pw;
    }
    acc += v;
  }
  return acc;
}

Poly Poly::partial_eval(std::size_t var, const Rational& value) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  std::map<std::uint32_t, Rational> powers;
  for (const auto& t : terms_) {
    Term nt{t.exps, t.coeff};
    const auto e = t.exps[var];
    nt.exps[var] = 0;
    if (e > 0) {
      auto it = powers.find(e);
      if (it == powers.end()) {
        Rational pw;
        mpz_pow_ui(pw.get_num_mpz_t(), value.get_num_mpz_t(), e);
        mpz_pow_ui(pw.get_den_mpz_t(), value.get_den_mpz_t(), e);
        it = powers.emplace(e, pw).first;
      }
      nt.coeff *= it->second;
    }
    out.push_back(std::move(nt));
  }
  return from_terms(vars_, std::move(out));
}

Poly Poly::substitute(std::span<const Poly> images) const {
  if (images.size() != nvars()) {
    throw Error(ErrorCode::kArity, "substitution arity mismatch");
  }
  std::vector<std::string> out_vars =
      images.empty() ? vars_ : images.front().vars();
  for (const auto& im : images) {
    if (im.vars() != out_vars) {
      throw Error(ErrorCode::kVariableMismatch, "substitution images use different variables");
    }
  }
  // Horner-free scheme with cached powers; fine at the sizes used here.
  std::vector<std::vector<Poly>> cache(nvars());
  auto power = [&](std::size_t i, std::uint32_t e) -> const Poly& {
    auto& c = cache[i];
    if (c.empty()) c.push_back(Poly::constant(out_vars, 1));
    while (c.size() <= e) c.push_back(c.back() * images[i]);
    return c[e];
  };
  Poly result(out_vars);
  std::vector<Term> acc;
  for (const auto& t : terms_) {
    Poly prod = Poly::constant(out_vars, t.coeff);
    for (std::size_t i = 0; i < nvars(); ++i) {
      if (t.exps[i] > 0) prod = prod * power(i, t.exps[i]);
    }
    for (auto& term : prod.terms_) acc.push_back(std::move(term));
  }
  return from_terms(out_vars, std::move(acc));
}

Poly Poly::derivative(std::size_t var) const {
  std::vector<Term> out;
  for (const auto& t : terms_) {
    if (t.exps[var] == 0) continue;
    Term nt{t.exps, t.coeff * t.exps[var]};
    nt.exps[var] -= 1;
    out.push_back(std::move(nt));
  }
  return from_terms(vars_, std::move(out));
}

Poly Poly::pow(unsigned e) const {
  Poly result = constant(vars_, 1);
  Poly base = *this;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

Poly Poly::remap(std::vector<std::string> new_vars,
                 std::span<const std::size_t> mapping) const {
  std::vector<Term> out;
  out.reserve(terms_.size());
  for (const auto& t : terms_) {
    Term nt{Exponents(new_vars.size(), 0), t.coeff};
    for (std::size_t i = 0; i < nvars(); ++i) nt.exps[mapping[i]] += t.exps[i];
    out.push_back(std::move(nt));
  }
  return from_terms(std::move(new_vars), std::move(out));
}

void Poly::check_same_vars(const Poly& o, const char* op) const {
  if (vars_ != o.vars_) {
    throw Error(ErrorCode::kVariableMismatch,
                std::string("variable-list mismatch in ") + op);
  }
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& t : r.terms_) t.coeff = -t.coeff;
  return r;
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.is_zero()) return *this;
  if (is_zero() && vars_.empty()) vars_ = o.vars_;
  check_same_vars(o, "addition");
  std::vector<Term> merged;
  merged.reserve(terms_.size() + o.terms_.size());
  std::size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() ||
        (i < terms_.size() && grlex_greater(terms_[i].exps, o.terms_[j].exps))) {
      merged.push_back(std::move(terms_[i++]));
    } else if (i == terms_.size() || grlex_greater(o.terms_[j].exps, terms_[i].exps)) {
      merged.push_back(o.terms_[j++]);
    } else {
      Rational c = terms_[i].coeff + o.terms_[j].coeff;
      if (c != 0) merged.push_back({std::move(terms_[i].exps), c});
      ++i;
      ++j;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) { return *this += -o; }

Poly operator*(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) {
    Poly z(a.vars_.empty() ? b.vars_ : a.vars_);
    return z;
  }
  a.check_same_vars(b, "multiplication");
  if (a.terms_.size() == 1 || b.terms_.size() == 1) {
    const Poly& single = a.terms_.size() == 1 ? a : b;
    const Poly& other = a.terms_.size() == 1 ? b : a;
    const Term& s = single.terms_.front();
    Poly r(a.vars_);
    r.terms_.reserve(other.terms_.size());
    for (const auto& t : other.terms_) {
      Term nt{t.exps, t.coeff * s.coeff};
      for (std::size_t i = 0; i < nt.exps.size(); ++i) nt.exps[i] += s.exps[i];
      r.terms_.push_back(std::move(nt));
    }
    return r;  // multiplying by a monomial preserves the order
  }
  std::unordered_map<Exponents, Rational, detail::ExponentsHash> acc;
  acc.reserve(a.terms_.size() * b.terms_.size() / 2 + 1);
  Exponents e(a.nvars());
  Rational prod;
  for (const auto& ta : a.terms_) {
    for (const auto& tb : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ta.exps[i] + tb.exps[i];
      mpq_mul(prod.get_mpq_t(), ta.coeff.get_mpq_t(), tb.coeff.get_mpq_t());
      auto [it, inserted] = acc.try_emplace(e, prod);
      if (!inserted) it->second += prod;
    }
  }
  std::vector<Term> terms;
  terms.reserve(acc.size());
  for (auto& [k, v] : acc) {
    if (v != 0) terms.push_back({k, std::move(v)});
  }
  std::sort(terms.begin(), terms.end(),
            [](const Term& x, const Term& y) { return grlex_greater(x.exps, y.exps); });
  Poly r(a.vars_);
  r.terms_ = std::move(terms);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.coeff *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  if (a.is_zero()) return true;
  if (a.vars_ != b.vars_) return false;
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    if (a.terms_[i].exps != b.terms_[i].exps || a.terms_[i].coeff != b.terms_[i].coeff) {
      return false;
    }
  }
  return true;
}

Rational Poly::content() const {
  if (terms_.empty()) return 1;
  Integer num = 0, den = 1;
  for (const auto& t : terms_) {
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(num, den);
  c.canonicalize();
  return c;
}

Poly Poly::monic() const {
  if (terms_.empty()) return *this;
  Rational inv = 1 / terms_.front().coeff;
  return *this * inv;
}

Poly Poly::primitive() const {
  if (terms_.empty()) return *this;
  Rational c = content();
  if (terms_.front().coeff < 0) c = -c;
  return *this * Rational(1 / c);
}

Exponents Poly::monomial_gcd() const {
  if (terms_.empty()) return Exponents(nvars(), 0);
  Exponents m = terms_.front().exps;
  for (const auto& t : terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = std::min(m[i], t.exps[i]);
  }
  return m;
}

Poly Poly::divide_monomial(const Exponents& m) const {
  Poly r = *this;
  for (auto& t : r.terms_) {
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (t.exps[i] < m[i]) throw Error(ErrorCode::kInternal, "monomial does not divide");
      t.exps[i] -= m[i];
    }
  }
  // Dividing by a monomial keeps grlex order.
  return r;
}

std::string Poly::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& t : terms_) {
    Rational c = t.coeff;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    bool has_var = false;
    for (auto e : t.exps) has_var = has_var || e > 0;
    bool wrote = false;
    if (c != 1 || !has_var) {
      os << c.get_str();
      wrote = true;
    }
    for (std::size_t i = 0; i < t.exps.size(); ++i) {
      if (t.exps[i] == 0) continue;
      if (wrote) os << "*";
      os << vars_[i];
      if (t.exps[i] > 1) os << "^" << t.exps[i];
      wrote = true;
    }
  }
  return os.str();
}

std::optional<Poly> exact_div(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw Error(ErrorCode::kZeroInput, "division by zero polynomial");
  if (a.is_zero()) return Poly(b.vars());
  if (a.vars() != b.vars()) {
    throw Error(ErrorCode::kVariableMismatch, "variable-list mismatch in division");
  }
  if (a.total_degree() < b.total_degree()) return std::nullopt;
  const std::size_t n = a.nvars();
  for (std::size_t v = 0; v < n; ++v) {
    if (a.degree_in(v) < b.degree_in(v)) return std::nullopt;
  }
  auto cmp = [](const Exponents& x, const Exponents& y) { return grlex_greater(x, y); };
  std::map<Exponents, Rational, decltype(cmp)> rem(cmp);
  for (const auto& t : a.terms()) rem.emplace(t.exps, t.coeff);
  const Term& lb = b.leading();
  const Rational inv_lb = 1 / lb.coeff;
  std::vector<Term> quotient;
  Exponents q(n);
  while (!rem.empty()) {
    auto it = rem.begin();
    for (std::size_t i = 0; i < n; ++i) {
      if (it->first[i] < lb.exps[i]) return std::nullopt;
      q[i] = it->first[i] - lb.exps[i];
    }
    Rational qc = it->second * inv_lb;
    for (const auto& tb : b.terms()) {
      Exponents e(n);
      for (std::size_t i = 0; i < n; ++i) e[i] = tb.exps[i] + q[i];
      auto [pos, inserted] = rem.try_emplace(std::move(e), 0);
      pos->second -= qc * tb.coeff;
      if (pos->second == 0) rem.erase(pos);
    }
    quotient.push_back({q, qc});
  }
  return Poly::from_terms(a.vars(), std::move(quotient));
}

bool divides(const Poly& b, const Poly& a) { return exact_div(a, b).has_value(); }

PolyTuple::PolyTuple(std::vector<Poly> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) return;
  // Zero entries constructed without variables adopt the shared list.
  std::vector<std::string> vars;
  for (const auto& e : entries_) {
    if (!e.vars().empty()) {
      vars = e.vars();
      break;
    }
  }
  for (auto& e : entries_) {
    if (e.vars().empty() && e.is_zero()) e = Poly(vars);
    if (e.vars() != vars) {
      throw Error(ErrorCode::kVariableMismatch, "tuple entries use different variables");
    }
  }
}

const std::vector<std::string>& PolyTuple::vars() const {
  static const std::vector<std::string> kEmpty;
  return entries_.empty() ? kEmpty : entries_.front().vars();
}

bool PolyTuple::is_homogeneous() const {
  int d = -1;
  for (const auto& e : entries_) {
    if (e.is_zero()) continue;
    if (!e.is_homogeneous()) return false;
    if (d >= 0 && e.total_degree() != d) return false;
    d = e.total_degree();
  }
  return true;
}

int PolyTuple::degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.total_degree());
  return d;
}

std::string PolyTuple::to_string() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) s += " : ";
    s += entries_[i].to_string();
  }
  return s + "]";
}

Poly mul(const Poly& p, const Poly& q) { return p * q; }

PolyTuple compose_tuple(const PolyTuple& f, const PolyTuple& g) {
  if (f.vars().size() != g.size()) {
    throw Error(ErrorCode::kArity, "compose_tuple: arity mismatch (" +
                                       std::to_string(f.vars().size()) + " variables vs " +
                                       std::to_string(g.size()) + " entries)");
  }
  std::vector<Poly> out;
  out.reserve(f.size());
  for (const auto& e : f.entries()) out.push_back(e.substitute(g.entries()));
  return PolyTuple(std::move(out));
}

PolyTuple primitive_tuple(const PolyTuple& t) {
  Poly g(t.vars());
  for (const auto& e : t.entries()) {
    g = gcd(g, e);
  }
  if (g.is_zero()) throw Error(ErrorCode::kZeroInput, "primitive_tuple of the zero tuple");
  std::vector<Poly> out;
  out.reserve(t.size());
  for (const auto& e : t.entries()) {
    auto q = exact_div(e, g);
    if (!q) throw Error(ErrorCode::kInternal, "gcd does not divide tuple entry");
    out.push_back(std::move(*q));
  }
  // Rational content across the whole tuple.
  Integer num = 0, den = 1;
  for (const auto& e : out) {
    for (const auto& term : e.terms()) {
      mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), term.coeff.get_num_mpz_t());
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), term.coeff.get_den_mpz_t());
    }
  }
  Rational scale(den, num);
  scale.canonicalize();
  for (const auto& e : out) {
    if (!e.is_zero()) {
      if (e.leading().coeff < 0) scale = -scale;
      break;
    }
  }
  for (auto& e : out) e *= scale;
  return PolyTuple(std::move(out));
}

Poly jacobian_det(const PolyTuple& t) {
  const std::size_t n = t.size();
  if (n == 0 || t.vars().size() != n) {
    throw Error(ErrorCode::kArity, "jacobian_det needs as many entries as variables");
  }
  std::vector<std::vector<Poly>> m(n, std::vector<Poly>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = t[i].derivative(j);
  }
  // Fraction-free Bareiss elimination with exact polynomial division.
  const auto& vars = t.vars();
  Poly prev = Poly::constant(vars, 1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t r = k + 1;
      while (r < n && m[r][k].is_zero()) ++r;
      if (r == n) return Poly(vars);
      std::swap(m[k], m[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Poly num = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        auto q = exact_div(num, prev);
        if (!q) throw Error(ErrorCode::kInternal, "Bareiss step not exact");
        m[i][j] = std::move(*q);
      }
      m[i][k] = Poly(vars);
    }
    prev = m[k][k];
  }
  Poly det = m[n - 1][n - 1];
  if (sign < 0) det = -det;
  return det;
}

Poly Factorization::expand(const std::vector<std::string>& vars) const {
  Poly r = Poly::constant(vars, unit);
  for (const auto& [f, e] : factors) r = r * f.pow(static_cast<unsigned>(e));
  return r;
}

}  // namespace cremona
