#include <algorithm>

#include "cremona/error.hpp"
#include "cremona/resolve.hpp"
#include "resolve_internal.hpp"

namespace cremona {
namespace {

using Series = std::vector<Rational>;  // truncated power series in t

struct PrecisionLost {};

const std::vector<std::string>& t_var() {
  static const std::vector<std::string> t = {"t"};
  return t;
}

Series to_series(const Poly& p, std::size_t prec) {
  Series s(prec, Rational(0));
  for (const auto& term : p.terms()) {
    if (term.exps[0] < prec) s[term.exps[0]] = term.coeff;
  }
  return s;
}

int series_order(const Series& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] != 0) return static_cast<int>(i);
  }
  return -1;
}

Series series_mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.size(), b.size());
  Series c(n, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series series_inverse(const Series& a) {
  Series b(a.size(), Rational(0));
  b[0] = 1 / a[0];
  for (std::size_t n = 1; n < a.size(); ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n; ++k) acc += a[k] * b[n - k];
    b[n] = -acc * b[0];
  }
  return b;
}

// num / den where den has order k; the result loses k terms of precision.
Series series_div(const Series& num, const Series& den, int k) {
  const Series n(num.begin() + k, num.end());
  const Series d(den.begin() + k, den.end());
  return series_mul(n, series_inverse(d));
}

std::vector<BubblePoint> chain_at_precision(const std::vector<Poly>& arc, int length,
                                            std::size_t prec) {
  int k0 = -1;
  for (const auto& p : arc) {
    if (p.is_zero()) continue;
    const int o = p.min_degree_in(0);
    if (k0 < 0 || o < k0) k0 = o;
  }
  if (k0 < 0) throw Error(ErrorCode::kPrecondition, "arc is identically zero");
  std::vector<Series> s;
  for (const auto& p : arc) {
    Exponents m(1, static_cast<unsigned>(k0));
    s.push_back(to_series(p.is_zero() ? p : p.divide_monomial(m), prec));
  }
  ProjPoint root;
  for (const auto& c : s) root.push_back(c[0]);
  root = normalize_point(root);
  const int r = root_chart_index(root);
  const Series inv = series_inverse(s[r]);
  Series ab[2];
  int next = 0;
  for (int i = 0; i < 3; ++i) {
    if (i == r) continue;
    ab[next] = series_mul(s[i], inv);
    ab[next][0] -= root[i];
    ++next;
  }
  std::vector<BubblePoint> out = {BubblePoint{root, {}}};
  while (static_cast<int>(out.size()) < length) {
    const int oa = series_order(ab[0]), ob = series_order(ab[1]);
    if (oa < 0 && ob < 0) throw PrecisionLost{};
    if (oa >= 0 && (ob < 0 || oa <= ob)) {
      Series slope = series_div(ab[1], ab[0], oa);
      if (slope.empty()) throw PrecisionLost{};
      const Rational t0 = slope[0];
      slope[0] = 0;
      ab[0].resize(slope.size());
      ab[1] = std::move(slope);
      out.push_back(out.back().child(BlowStep{false, t0}));
    } else {
      Series ratio = series_div(ab[0], ab[1], ob);
      if (ratio.empty()) throw PrecisionLost{};
      ab[1].resize(ratio.size());
      ab[0] = std::move(ratio);
      out.push_back(out.back().child(BlowStep{true, 0}));
    }
  }
  return out;
}

// Images of the ambient coordinates along (u, v) = (t, c t).
std::vector<Poly> curvette(const PolyTuple& subst, const Rational& c) {
  const Poly t = Poly::variable(t_var(), 0);
  const Poly img[2] = {t, t * c};
  std::vector<Poly> out;
  for (const auto& e : subst.entries()) out.push_back(e.substitute(img));
  return out;
}

std::vector<Poly> apply_map(const ProjMap& f, const std::vector<Poly>& arc) {
  std::vector<Poly> out;
  for (const auto& e : f.coords().entries()) out.push_back(e.substitute(arc));
  return out;
}

int leading_run_in(const std::vector<BubblePoint>& chain, const BasePointTree& base) {
  int m = 0;
  while (m < static_cast<int>(chain.size()) && base.contains(chain[m])) ++m;
  return m;
}

std::vector<ProjPoint> rational_points_on(const Poly& q, const ProjMap& f, std::size_t want) {
  std::vector<ProjPoint> out;
  const std::vector<std::string> yv = {"y"};
  auto consider = [&](ProjPoint p) {
    bool smooth = false, defined = false;
    for (int j = 0; j < 3; ++j) smooth = smooth || q.derivative(j).eval(p) != 0;
    for (const auto& c : f.coords().entries()) defined = defined || c.eval(p) != 0;
    p = normalize_point(p);
    if (smooth && defined && std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  for (int chart = 2; chart >= 0 && out.size() < want; --chart) {
    const int ia = (chart + 1) % 3, iy = (chart + 2) % 3;
    for (int k = 0; k < 40 && out.size() < want; ++k) {
      const Rational a = (k % 2 == 0 ? 1 : -1) * Rational((k + 1) / 2);
      Poly g = q.partial_eval(chart, 1).partial_eval(ia, a);
      std::vector<Term> terms;
      for (const auto& t : g.terms()) terms.push_back({{t.exps[iy]}, t.coeff});
      g = Poly::from_terms(yv, std::move(terms));
      std::vector<Rational> ys;
      if (g.is_zero()) {
        ys = {Rational(0), Rational(1), Rational(-1)};
      } else if (!g.is_constant()) {
        for (const auto& [fac, e] : factor_q(g).factors) {
          (void)e;
          if (fac.total_degree() == 1) {
            Rational c1, c0;
            for (const auto& t : fac.terms()) (t.exps[0] == 1 ? c1 : c0) = t.coeff;
            ys.push_back(-c0 / c1);
          }
        }
      }
      for (const auto& y : ys) {
        ProjPoint p(3);
        p[chart] = 1;
        p[ia] = a;
        p[iy] = y;
        consider(p);
      }
    }
  }
  return out;
}

}  // namespace

std::vector<BubblePoint> arc_chain(const std::vector<Poly>& arc, int length) {
  if (arc.size() != 3) throw Error(ErrorCode::kArity, "plane arcs have three coordinates");
  for (std::size_t prec = 64; prec <= 8192; prec *= 2) {
    try {
      return chain_at_precision(arc, length, prec);
    } catch (const PrecisionLost&) {
    }
  }
  throw Error(ErrorCode::kBudgetExceeded, "arc chain needs more than 8192 series terms");
}

BubblePoint transport(const ProjMap& h, const BubblePoint& q, const BasePointTree* base_h,
                      const BasePointTree* base_hinv) {
  BasePointTree bh, bhinv;
  if (base_h == nullptr) {
    bh = base_points(h);
    base_h = &bh;
  }
  if (base_hinv == nullptr) {
    bhinv = base_points(h.inverse());
    base_hinv = &bhinv;
  }
  if (base_h->contains(q)) {
    throw Error(ErrorCode::kPrecondition, q.to_string() + " is a base point of " + h.to_string());
  }
  int j0 = 0;
  while (j0 <= q.height()) {
    BubblePoint a = q;
    a.steps.resize(static_cast<std::size_t>(j0));
    if (!base_h->contains(a)) break;
    ++j0;
  }
  const int k = q.height();
  const auto arc = apply_map(h, curvette(chart_at(q).substitution, Rational(3, 7)));
  const auto chain = arc_chain(arc, k - j0 + base_hinv->total() + 2);
  const int m = leading_run_in(chain, *base_hinv);
  return chain[static_cast<std::size_t>(m + k - j0)];
}

BubblePoint contracted_curve_image(const ProjMap& f, const Poly& q, const BasePointTree* base_finv) {
  if (!contracts_curve(f, q)) {
    throw Error(ErrorCode::kPrecondition, q.to_string() + " is not contracted by " + f.to_string());
  }
  BasePointTree b;
  if (base_finv == nullptr) {
    b = base_points(f.inverse());
    base_finv = &b;
  }
  const auto pts = rational_points_on(q, f, 3);
  if (pts.empty()) throw Error(ErrorCode::kUnreachable, "no rational point found on " + q.to_string());
  std::vector<BubblePoint> images;
  for (const auto& p : pts) {
    int j = 0;
    while (q.derivative(j).eval(p) == 0) ++j;
    const Poly t = Poly::variable(t_var(), 0);
    std::vector<Poly> arc;
    for (int i = 0; i < 3; ++i) arc.push_back(Poly::constant(t_var(), p[i]) + (i == j ? t : Poly(t_var())));
    const auto chain = arc_chain(apply_map(f, arc), base_finv->total() + 2);
    const int m = leading_run_in(chain, *base_finv);
    if (m == 0) throw Error(ErrorCode::kInternal, "contracted curve image is not a base point of the inverse");
    images.push_back(chain[static_cast<std::size_t>(m - 1)]);
  }
  // Majority over the sampled points guards against a special sample.
  for (const auto& im : images) {
    if (std::count(images.begin(), images.end(), im) * 2 > static_cast<long>(images.size())) return im;
  }
  return images.front();
}

}  // namespace cremona
