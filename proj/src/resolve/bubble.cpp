#include <algorithm>
#include <map>

#include "cremona/error.hpp"
#include "cremona/resolve.hpp"
#include "resolve_internal.hpp"

namespace cremona {

const std::vector<std::string>& local_vars() {
  static const std::vector<std::string> uv = {"u", "v"};
  return uv;
}

BubblePoint BubblePoint::parent() const {
  if (steps.empty()) throw Error(ErrorCode::kPrecondition, "proper point has no parent");
  BubblePoint p = *this;
  p.steps.pop_back();
  return p;
}

BubblePoint BubblePoint::child(BlowStep s) const {
  BubblePoint c = *this;
  if (s.chart_b) s.t0 = 0;
  c.steps.push_back(s);
  return c;
}

bool BubblePoint::is_infinitely_near_to(const BubblePoint& a) const {
  if (root != a.root || a.steps.size() >= steps.size()) return false;
  return std::equal(a.steps.begin(), a.steps.end(), steps.begin());
}

std::string BubblePoint::to_string() const {
  std::string s = point_to_string(root);
  for (const auto& st : steps) s += st.chart_b ? " > B" : " > A(" + cremona::to_string(st.t0) + ")";
  return s;
}

bool operator<(const BubblePoint& a, const BubblePoint& b) {
  if (a.root != b.root) {
    return std::lexicographical_compare(a.root.begin(), a.root.end(), b.root.begin(), b.root.end());
  }
  const std::size_t n = std::min(a.steps.size(), b.steps.size());
  for (std::size_t i = 0; i < n; ++i) {
    const BlowStep& x = a.steps[i];
    const BlowStep& y = b.steps[i];
    if (x.chart_b != y.chart_b) return !x.chart_b;
    if (x.t0 != y.t0) return x.t0 < y.t0;
  }
  return a.steps.size() < b.steps.size();
}

int root_chart_index(const ProjPoint& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  throw Error(ErrorCode::kPrecondition, "zero point");
}

Chart standard_chart(int root_index) {
  const auto& uv = local_vars();
  std::vector<Poly> s;
  int next = 0;
  for (int i = 0; i < 3; ++i) {
    s.push_back(i == root_index ? Poly::constant(uv, 1) : Poly::variable(uv, next++));
  }
  return Chart{root_index, 0, PolyTuple(std::move(s))};
}

namespace detail {

namespace {

// p with variable var replaced by var + c (Taylor shift per coefficient).
Poly shift_var(const Poly& p, std::size_t var, const Rational& c) {
  if (c == 0) return p;
  std::map<Exponents, std::vector<Rational>> groups;
  for (const auto& t : p.terms()) {
    Exponents rest = t.exps;
    rest[var] = 0;
    auto& coeffs = groups[rest];
    if (coeffs.size() <= t.exps[var]) coeffs.resize(t.exps[var] + 1, Rational(0));
    coeffs[t.exps[var]] = t.coeff;
  }
  std::vector<Term> out;
  for (auto& [rest, a] : groups) {
    const std::size_t n = a.size();
    for (std::size_t i = 0; i + 1 < n; ++i) {
      for (std::size_t j = n - 1; j > i; --j) a[j - 1] += c * a[j];
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (a[k] == 0) continue;
      Exponents e = rest;
      e[var] = static_cast<unsigned>(k);
      out.push_back({std::move(e), a[k]});
    }
  }
  return Poly::from_terms(p.vars(), std::move(out));
}

// u^i v^j -> u^(i + ku j) v^(j + kv i) for the two blow-up charts.
Poly shear(const Poly& p, unsigned ku, unsigned kv) {
  std::vector<Term> out;
  out.reserve(p.size());
  for (const auto& t : p.terms()) {
    Exponents e = {t.exps[0] + ku * t.exps[1], t.exps[1] + kv * t.exps[0]};
    out.push_back({std::move(e), t.coeff});
  }
  return Poly::from_terms(p.vars(), std::move(out));
}

}  // namespace

Poly shift(const Poly& p, const Rational& a, const Rational& b) {
  return shift_var(shift_var(p, 0, a), 1, b);
}

Poly chart_a(const Poly& p) { return shear(p, 1, 0); }

Poly chart_b(const Poly& p) { return shear(p, 0, 1); }

Poly divide_power(const Poly& p, std::size_t var, int k) {
  if (k == 0 || p.is_zero()) return p;
  Exponents m(p.nvars(), 0);
  m[var] = static_cast<unsigned>(k);
  return p.divide_monomial(m);
}

Poly dehomogenize_at(const Poly& f, const ProjPoint& root) {
  const int r = root_chart_index(root);
  Rational center[2];
  std::size_t other[2];
  int next = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != r) {
      other[next] = static_cast<std::size_t>(i);
      center[next++] = root[i];
    }
  }
  std::vector<Term> terms;
  for (const auto& t : f.terms()) terms.push_back({{t.exps[other[0]], t.exps[other[1]]}, t.coeff});
  return shift(Poly::from_terms(local_vars(), std::move(terms)), center[0], center[1]);
}

Poly strict_step(const Poly& g, const BlowStep& s) {
  const int m = g.order();
  if (s.chart_b) return divide_power(chart_b(g), 1, m);
  return shift(divide_power(chart_a(g), 0, m), 0, s.t0);
}

std::vector<std::pair<int, int>> curves_through(const BubblePoint& q) {
  // (height of the ancestor whose exceptional curve passes through q, local
  // axis: 0 for {u = 0}, 1 for {v = 0}).
  std::vector<std::pair<int, int>> cur;
  for (int h = 0; h < q.height(); ++h) {
    const BlowStep& s = q.steps[h];
    std::vector<std::pair<int, int>> next;
    if (s.chart_b) {
      next.push_back({h, 1});
      for (auto [a, axis] : cur) {
        if (axis == 0) next.push_back({a, 0});
      }
    } else {
      next.push_back({h, 0});
      for (auto [a, axis] : cur) {
        if (axis == 1 && s.t0 == 0) next.push_back({a, 1});
      }
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

std::pair<Chart, Chart> blow_up_point(const Chart& c, const std::pair<Rational, Rational>& p) {
  std::vector<Poly> a, b;
  for (const auto& e : c.substitution.entries()) {
    const Poly s = detail::shift(e, p.first, p.second);
    a.push_back(detail::chart_a(s));
    b.push_back(detail::chart_b(s));
  }
  return {Chart{c.root_index, c.blowups + 1, PolyTuple(std::move(a))},
          Chart{c.root_index, c.blowups + 1, PolyTuple(std::move(b))}};
}

Chart chart_at(const BubblePoint& q) {
  const int r = root_chart_index(q.root);
  Chart c = standard_chart(r);
  std::pair<Rational, Rational> center;
  int next = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != r) (next++ == 0 ? center.first : center.second) = q.root[i];
  }
  for (const auto& s : q.steps) {
    auto [a, b] = blow_up_point(c, center);
    c = s.chart_b ? std::move(b) : std::move(a);
    center = {Rational(0), s.chart_b ? Rational(0) : s.t0};
  }
  std::vector<Poly> e;
  for (const auto& p : c.substitution.entries()) e.push_back(detail::shift(p, center.first, center.second));
  c.substitution = PolyTuple(std::move(e));
  return c;
}

PolyTuple local_system(const ProjMap& f, const BubblePoint& q) {
  const Chart c = chart_at(q);
  const PolyTuple g = compose_tuple(f.coords(), c.substitution);
  Poly d = g[0];
  for (std::size_t i = 1; i < g.size(); ++i) d = gcd(d, g[i]);
  std::vector<Poly> e;
  for (const auto& p : g.entries()) e.push_back(*exact_div(p, d));
  return PolyTuple(std::move(e));
}

std::vector<int> curve_multiplicities(const Poly& c, const BubblePoint& q) {
  Poly g = detail::dehomogenize_at(c, q.root);
  std::vector<int> out;
  for (const auto& s : q.steps) {
    out.push_back(g.is_zero() ? 0 : g.order());
    g = detail::strict_step(g, s);
  }
  out.push_back(g.is_zero() ? 0 : g.order());
  return out;
}

std::vector<std::vector<int>> proximity(const std::vector<BubblePoint>& pts) {
  std::vector<std::vector<int>> out(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    for (auto [h, axis] : detail::curves_through(pts[i])) {
      (void)axis;
      BubblePoint anc = pts[i];
      anc.steps.resize(static_cast<std::size_t>(h));
      const auto it = std::find(pts.begin(), pts.end(), anc);
      if (it == pts.end()) throw Error(ErrorCode::kPrecondition, "point set is not closed under parents");
      out[i].push_back(static_cast<int>(it - pts.begin()));
    }
  }
  return out;
}

}  // namespace cremona
