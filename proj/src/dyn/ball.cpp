#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "cremona/dyn.hpp"
#include "cremona/error.hpp"
#include "cremona/linalg.hpp"

namespace cremona {
namespace {

using Class = std::vector<long long>;

const std::vector<std::string>& xyz() {
  static const std::vector<std::string> v = default_vars(3);
  return v;
}

long long dot(const Class& a, const Class& b) {
  long long s = a[0] * b[0];
  for (std::size_t i = 1; i < a.size(); ++i) s -= a[i] * b[i];
  return s;
}

Class axpy(Class a, long long k, const Class& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += k * b[i];
  return a;
}

Class canonical_class(std::size_t n) {
  Class k(n + 1, 1);
  k[0] = -3;
  return k;
}

// Orthogonal projection away from the classes contracted so far.
Class project(const Class& c, const std::vector<Class>& ehat) {
  Class p = c;
  for (const auto& e : ehat) p = axpy(p, dot(c, e), e);
  return p;
}

Poly normalize_curve(const Poly& p) { return p.primitive().monic(); }

Poly linear_form(const Rational& a, const Rational& b, const Rational& c) {
  const auto& v = xyz();
  return Poly::variable(v, 0) * a + Poly::variable(v, 1) * b + Poly::variable(v, 2) * c;
}

// Line through two distinct points: the cross product of their coordinates.
Poly line_through(const ProjPoint& p, const ProjPoint& q) {
  return linear_form(p[1] * q[2] - p[2] * q[1], p[2] * q[0] - p[0] * q[2], p[0] * q[1] - p[1] * q[0]);
}

// Line through the root of a height-one point in its direction.
Poly tangent_line(const BubblePoint& q) {
  const ProjPoint& p = q.root;
  const int r = root_chart_index(p);
  int o[2], next = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != r) o[next++] = i;
  }
  // Local coordinates a = x_o0 - p_o0 x_r, b = x_o1 - p_o1 x_r.
  Rational ca[3] = {0, 0, 0}, cb[3] = {0, 0, 0};
  ca[o[0]] = 1;
  ca[r] = -p[o[0]];
  cb[o[1]] = 1;
  cb[r] = -p[o[1]];
  const BlowStep& s = q.steps.front();
  if (s.chart_b) return linear_form(ca[0], ca[1], ca[2]);
  return linear_form(cb[0] - s.t0 * ca[0], cb[1] - s.t0 * ca[1], cb[2] - s.t0 * ca[2]);
}

std::vector<Exponents> monomials(int d) {
  std::vector<Exponents> out;
  for (int a = d; a >= 0; --a) {
    for (int b = d - a; b >= 0; --b) {
      out.push_back({static_cast<unsigned>(a), static_cast<unsigned>(b), static_cast<unsigned>(d - a - b)});
    }
  }
  return out;
}

// Forms of degree d with multiplicity >= mult[i] at the proper points pts[i].
std::vector<Poly> forms_with_multiplicities(int d, const std::vector<ProjPoint>& pts,
                                            const std::vector<int>& mult) {
  const auto mons = monomials(d);
  RatMatrix rows;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (mult[i] <= 0) continue;
    // All partial derivatives of order mult - 1 vanish (Euler gives the rest).
    for (const auto& alpha : monomials(mult[i] - 1)) {
      std::vector<Rational> row;
      for (const auto& m : mons) {
        Poly t = Poly::from_terms(xyz(), {{m, Rational(1)}});
        for (int j = 0; j < 3; ++j) {
          for (unsigned k = 0; k < alpha[j]; ++k) t = t.derivative(j);
        }
        row.push_back(t.eval(pts[i]));
      }
      rows.push_back(std::move(row));
    }
  }
  std::vector<Poly> out;
  for (const auto& v : nullspace(std::move(rows), mons.size())) {
    std::vector<Term> terms;
    for (std::size_t k = 0; k < mons.size(); ++k) {
      if (v[k] != 0) terms.push_back({mons[k], v[k]});
    }
    out.push_back(Poly::from_terms(xyz(), std::move(terms)));
  }
  return out;
}

struct State {
  std::vector<int> ids;      // sorted
  std::vector<Class> ehat;   // projected classes in contraction order
  std::vector<std::pair<int, Class>> contractible;
};

std::string state_label(const std::vector<int>& ids, const std::vector<BallCurve>& curves) {
  std::vector<std::string> names;
  for (int i : ids) names.push_back(curves[i].name);
  std::sort(names.begin(), names.end());
  std::string s = "{";
  for (std::size_t i = 0; i < names.size(); ++i) s += (i ? ", " : "") + names[i];
  return s + "}";
}

std::vector<BallCurve> candidate_curves(const std::vector<BubblePoint>& pts) {
  const std::size_t n = pts.size();
  const auto prox = proximity(pts);
  std::vector<BallCurve> out;
  for (std::size_t i = 0; i < n; ++i) {
    Class c(n + 1, 0);
    c[1 + i] = 1;
    for (std::size_t j = 0; j < n; ++j) {
      if (std::find(prox[j].begin(), prox[j].end(), static_cast<int>(i)) != prox[j].end()) c[1 + j] -= 1;
    }
    out.push_back(BallCurve{"E" + pts[i].to_string(), static_cast<int>(i), std::nullopt, c});
  }
  std::vector<ProjPoint> proper;
  for (const auto& p : pts) {
    if (p.height() == 0) proper.push_back(p.root);
  }
  std::set<Poly, std::function<bool(const Poly&, const Poly&)>> plane(
      [](const Poly& a, const Poly& b) { return a.to_string() < b.to_string(); });
  for (std::size_t i = 0; i < proper.size(); ++i) {
    for (std::size_t j = i + 1; j < proper.size(); ++j) plane.insert(normalize_curve(line_through(proper[i], proper[j])));
  }
  for (const auto& p : pts) {
    if (p.height() >= 1) {
      BubblePoint q = p;
      q.steps.resize(1);
      plane.insert(normalize_curve(tangent_line(q)));
    }
  }
  if (proper.size() >= 5) {
    std::vector<int> pick(5);
    std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t start, std::size_t k) {
      if (k == 5) {
        std::vector<ProjPoint> five;
        for (int i : pick) five.push_back(proper[i]);
        const auto sys = forms_with_multiplicities(2, five, std::vector<int>(5, 1));
        if (sys.size() == 1 && factor_q(sys[0]).factors.size() == 1) plane.insert(normalize_curve(sys[0]));
        return;
      }
      for (std::size_t i = start; i < proper.size(); ++i) {
        pick[k] = static_cast<int>(i);
        choose(i + 1, k + 1);
      }
    };
    choose(0, 0);
  }
  for (const auto& q : plane) {
    Class c(n + 1, 0);
    c[0] = q.total_degree();
    for (std::size_t i = 0; i < n; ++i) c[1 + i] = -curve_multiplicities(q, pts[i]).back();
    if (dot(c, c) >= 0) continue;
    out.push_back(BallCurve{"C(" + q.to_string() + ")", -1, q, c});
  }
  return out;
}

}  // namespace

std::optional<VertexId> Ball::find_state(const std::vector<int>& ids) const {
  std::vector<int> key = ids;
  std::sort(key.begin(), key.end());
  for (std::size_t v = 0; v < states.size(); ++v) {
    if (states[v] == key) return static_cast<VertexId>(v);
  }
  return std::nullopt;
}

Ball ball(const MarkedSurfaceVertex& center, int radius, const std::vector<BubblePoint>& universe,
          std::size_t budget) {
  if (radius < 0) throw Error(ErrorCode::kPrecondition, "radius must be nonnegative");
  Ball b{center, {}, {}, {}, {}, {}, 0, {}};
  {
    std::vector<BubblePoint> all = center.blown_points;
    all.insert(all.end(), universe.begin(), universe.end());
    b.points = make_vertex(center.marking, all).blown_points;
  }
  const std::size_t n = b.points.size();
  b.curves = candidate_curves(b.points);
  const Class kz = canonical_class(n);

  std::vector<bool> in_center(n, false);
  for (const auto& p : center.blown_points) {
    in_center[std::find(b.points.begin(), b.points.end(), p) - b.points.begin()] = true;
  }
  auto blown_count = [&](const std::vector<int>& ids) {
    int c = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (in_center[i]) continue;
      if (!std::binary_search(ids.begin(), ids.end(), static_cast<int>(i))) ++c;
    }
    return c;
  };

  // Exceptional curves have ids 0..n-1, matching the point indices.
  std::map<std::vector<int>, std::size_t> index;
  std::vector<State> states = {State{}};
  index[{}] = 0;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (states.size() > budget) {
      throw Error(ErrorCode::kBudgetExceeded, "ball has more than " + std::to_string(budget) + " states");
    }
    for (std::size_t c = 0; c < b.curves.size(); ++c) {
      if (std::binary_search(states[s].ids.begin(), states[s].ids.end(), static_cast<int>(c))) continue;
      const Class p = project(b.curves[c].cls, states[s].ehat);
      if (dot(p, p) != -1 || dot(kz, p) != -1) continue;
      states[s].contractible.push_back({static_cast<int>(c), p});
      std::vector<int> ids = states[s].ids;
      ids.insert(std::upper_bound(ids.begin(), ids.end(), static_cast<int>(c)), static_cast<int>(c));
      if (index.count(ids)) continue;
      State next;
      next.ids = ids;
      next.ehat = states[s].ehat;
      next.ehat.push_back(p);
      index[ids] = states.size();
      states.push_back(std::move(next));
    }
  }

  // Keep states within the radius; order by Picard rank, then label.
  std::vector<std::size_t> kept;
  for (std::size_t s = 0; s < states.size(); ++s) {
    if (blown_count(states[s].ids) <= radius) kept.push_back(s);
  }
  std::vector<std::string> labels(states.size());
  for (std::size_t s : kept) labels[s] = state_label(states[s].ids, b.curves);
  std::sort(kept.begin(), kept.end(), [&](std::size_t x, std::size_t y) {
    if (states[x].ids.size() != states[y].ids.size()) return states[x].ids.size() < states[y].ids.size();
    return labels[x] < labels[y];
  });
  std::map<std::size_t, VertexId> vid;
  ComplexData data;
  for (std::size_t s : kept) {
    vid[s] = static_cast<VertexId>(data.labels.size());
    data.labels.push_back(labels[s]);
    b.states.push_back(states[s].ids);
    b.picard_rank.push_back(static_cast<int>(1 + n - states[s].ids.size()));
  }
  auto vertex_of = [&](std::vector<int> ids) -> std::optional<VertexId> {
    std::sort(ids.begin(), ids.end());
    const auto it = index.find(ids);
    if (it == index.end()) throw Error(ErrorCode::kInternal, "contraction state missing from the ball");
    const auto v = vid.find(it->second);
    if (v == vid.end()) return std::nullopt;
    return v->second;
  };
  for (std::size_t s : kept) {
    const auto& cs = states[s].contractible;
    for (const auto& [c, p] : cs) {
      (void)p;
      std::vector<int> ids = states[s].ids;
      ids.push_back(c);
      if (auto w = vertex_of(ids)) data.edges.push_back({vid[s], *w});
    }
    // Pairwise disjoint contractible curves span cubes.
    std::vector<int> pick;
    std::function<void(std::size_t)> extend = [&](std::size_t start) {
      if (pick.size() >= 2) {
        std::vector<VertexId> cube;
        for (std::uint32_t m = 0; m < (1u << pick.size()); ++m) {
          std::vector<int> ids = states[s].ids;
          for (std::size_t k = 0; k < pick.size(); ++k) {
            if (m & (1u << k)) ids.push_back(cs[pick[k]].first);
          }
          const auto w = vertex_of(ids);
          if (!w) return;
          cube.push_back(*w);
        }
        data.cubes.push_back(std::move(cube));
      }
      for (std::size_t i = start; i < cs.size(); ++i) {
        bool disjoint = true;
        for (int k : pick) disjoint = disjoint && dot(cs[k].second, cs[i].second) == 0;
        if (!disjoint) continue;
        pick.push_back(static_cast<int>(i));
        extend(i + 1);
        pick.pop_back();
      }
    };
    extend(0);
  }
  b.complex = CubeComplex::build(std::move(data));

  // Present vertices over P^2: contracting exceptional curves only gives a
  // blow-up of the center's plane; a rank-one model with proper points is
  // the plane mapped by the linear system of its hyperplane class.
  bool all_proper = true;
  for (const auto& p : b.points) all_proper = all_proper && p.height() == 0;
  for (std::size_t v = 0; v < b.states.size(); ++v) {
    const auto& ids = b.states[v];
    std::optional<MarkedSurfaceVertex> mv;
    if (std::all_of(ids.begin(), ids.end(), [&](int c) { return b.curves[c].exceptional >= 0; })) {
      std::vector<BubblePoint> kept_pts;
      for (std::size_t i = 0; i < n; ++i) {
        if (!std::binary_search(ids.begin(), ids.end(), static_cast<int>(i))) kept_pts.push_back(b.points[i]);
      }
      mv = MarkedSurfaceVertex{center.marking, kept_pts};
    } else if (b.picard_rank[v] == 1 && all_proper) {
      const State& st = states[index.at(ids)];
      Class h(n + 1, 0);
      h[0] = 1;
      h = project(h, st.ehat);
      long long k = 1;
      while (k * k < dot(h, h)) ++k;
      if (k * k == dot(h, h)) {
        std::vector<int> mult;
        std::vector<ProjPoint> roots;
        for (std::size_t i = 0; i < n; ++i) {
          roots.push_back(b.points[i].root);
          mult.push_back(static_cast<int>(-h[1 + i] / k));
        }
        const auto sys = forms_with_multiplicities(static_cast<int>(h[0] / k), roots, mult);
        if (sys.size() == 3) {
          try {
            const ProjMap m = with_inverse(ProjMap(PolyTuple(sys)));
            mv = make_vertex(compose(center.marking, m.inverse()));
          } catch (const Error&) {
          }
        }
      }
    }
    b.vertices.push_back(std::move(mv));
  }
  const std::vector<int> center_ids = [&] {
    std::vector<int> ids;
    for (std::size_t i = 0; i < n; ++i) {
      if (!in_center[i]) ids.push_back(static_cast<int>(i));
    }
    return ids;
  }();
  const auto c = b.find_state(center_ids);
  if (!c) throw Error(ErrorCode::kInternal, "center is not a state of the ball");
  b.center_id = *c;
  return b;
}

nlohmann::json ball_to_json(const Ball& b) {
  nlohmann::json j = complex_to_json(b.complex);
  j["center"] = b.complex.label(b.center_id);
  nlohmann::json pts = nlohmann::json::array();
  for (const auto& p : b.points) pts.push_back(p.to_string());
  j["blown_up"] = pts;
  nlohmann::json info = nlohmann::json::array();
  for (int v = 0; v < b.complex.size(); ++v) {
    nlohmann::json e = {{"label", b.complex.label(v)}, {"picard_rank", b.picard_rank[v]}};
    if (b.vertices[v]) {
      e["marking"] = b.vertices[v]->marking.to_string();
      nlohmann::json bp = nlohmann::json::array();
      for (const auto& p : b.vertices[v]->blown_points) bp.push_back(p.to_string());
      e["blown_points"] = bp;
    }
    info.push_back(e);
  }
  j["vertex_info"] = info;
  return j;
}

namespace {

// Points of the plane curve {q = 0} of degree <= 2, avoiding `avoid`.
std::vector<ProjPoint> sample_curve(const Poly& q, const std::vector<ProjPoint>& known, std::size_t want,
                                    const std::vector<ProjPoint>& avoid) {
  std::vector<ProjPoint> out;
  auto consider = [&](ProjPoint p) {
    if (std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; })) return;
    p = normalize_point(p);
    if (std::find(avoid.begin(), avoid.end(), p) != avoid.end()) return;
    if (std::find(out.begin(), out.end(), p) == out.end()) out.push_back(p);
  };
  if (q.total_degree() == 1) {
    RatMatrix row(1, std::vector<Rational>(3, Rational(0)));
    for (const auto& t : q.terms()) {
      for (int i = 0; i < 3; ++i) {
        if (t.exps[i] == 1) row[0][i] = t.coeff;
      }
    }
    const auto ker = nullspace(row, 3);
    for (int s = 1; out.size() < want && s < 200; ++s) {
      ProjPoint p(3);
      for (int i = 0; i < 3; ++i) p[i] = ker[0][i] + Rational(s) * ker[1][i];
      consider(p);
    }
    return out;
  }
  ProjPoint p0;
  for (const auto& k : known) {
    if (q.eval(k) == 0) p0 = k;
  }
  if (p0.empty()) throw Error(ErrorCode::kInternal, "no known point on " + q.to_string());
  Rational grad[3];
  for (int i = 0; i < 3; ++i) grad[i] = q.derivative(i).eval(p0);
  for (int s = 1; out.size() < want && s < 200; ++s) {
    const ProjPoint d = {Rational(1), Rational(s), Rational(s * s + 3)};
    const Rational qd = q.eval(d);
    if (qd == 0) continue;
    const Rational t = -(grad[0] * d[0] + grad[1] * d[1] + grad[2] * d[2]) / qd;
    ProjPoint p(3);
    for (int i = 0; i < 3; ++i) p[i] = p0[i] + t * d[i];
    consider(p);
  }
  return out;
}

}  // namespace

VertexIsometry ball_action(const Ball& b, const ProjMap& f) {
  const ProjMap g = conjugate(b.center.marking.inverse(), with_inverse(f));
  const MarkedSurfaceVertex z = make_vertex(identity_map(2), b.points);
  if (distance_vertices(z, act(g, z)) != 0) {
    throw Error(ErrorCode::kPrecondition,
                f.to_string() + " does not lift to an automorphism of the blown-up surface");
  }
  const BasePointTree bg = base_points(g), bginv = base_points(g.inverse());
  std::vector<ProjPoint> roots;
  for (const auto& p : b.points) roots.push_back(p.root);

  auto plane_curve_through = [&](const std::vector<ProjPoint>& imgs) {
    for (std::size_t c = 0; c < b.curves.size(); ++c) {
      if (!b.curves[c].plane) continue;
      const Poly& q = *b.curves[c].plane;
      if (std::all_of(imgs.begin(), imgs.end(), [&](const ProjPoint& p) { return q.eval(p) == 0; })) {
        return static_cast<int>(c);
      }
    }
    return -1;
  };
  auto exceptional_at = [&](const BubblePoint& p) {
    const auto it = std::find(b.points.begin(), b.points.end(), p);
    return it == b.points.end() ? -1 : static_cast<int>(it - b.points.begin());
  };

  std::vector<int> perm(b.curves.size(), -1);
  for (std::size_t c = 0; c < b.curves.size(); ++c) {
    const BallCurve& cv = b.curves[c];
    if (cv.plane) {
      if (contracts_curve(g, *cv.plane)) {
        perm[c] = exceptional_at(contracted_curve_image(g, *cv.plane, &bginv));
        continue;
      }
      std::vector<ProjPoint> imgs;
      for (const auto& p : sample_curve(*cv.plane, roots, 8, roots)) {
        ProjPoint q;
        for (const auto& e : g.coords().entries()) q.push_back(e.eval(p));
        if (std::any_of(q.begin(), q.end(), [](const Rational& x) { return x != 0; })) {
          imgs.push_back(normalize_point(q));
        }
      }
      perm[c] = imgs.size() >= 6 ? plane_curve_through(imgs) : -1;
      continue;
    }
    // General points of an exceptional curve.
    const BubblePoint& p = b.points[cv.exceptional];
    std::vector<ProjPoint> imgs;
    int parent_hit = -2;
    for (int k = 0, found = 0; found < 6 && k < 40; ++k) {
      const BlowStep s{false, Rational(2 * k + 3, 7 * k + 11)};
      const BubblePoint q = p.child(s);
      if (exceptional_at(q) >= 0) continue;
      const BubblePoint y = transport(g, q, &bg, &bginv);
      ++found;
      if (y.height() > 0) {
        const int e = exceptional_at(y.parent());
        if (parent_hit != -2 && parent_hit != e) parent_hit = -1;
        if (parent_hit == -2) parent_hit = e;
      } else {
        imgs.push_back(y.root);
      }
    }
    if (!imgs.empty() && parent_hit != -2) {
      perm[c] = -1;
    } else if (parent_hit != -2) {
      perm[c] = parent_hit;
    } else {
      perm[c] = plane_curve_through(imgs);
    }
  }

  std::map<std::string, std::vector<int>> by_label;
  for (int v = 0; v < b.complex.size(); ++v) by_label[b.complex.label(v)] = b.states[v];
  std::vector<std::string> labels;
  for (int v = 0; v < b.complex.size(); ++v) labels.push_back(b.complex.label(v));
  return VertexIsometry{[by_label, perm, labels, states = b.states, curves = b.curves](const std::string& label) {
    const auto it = by_label.find(label);
    if (it == by_label.end()) throw Error(ErrorCode::kPrecondition, "unknown ball vertex " + label);
    std::vector<int> img;
    for (int c : it->second) {
      if (perm[c] < 0) {
        throw Error(ErrorCode::kPrecondition, "the image of " + curves[c].name + " leaves the ball");
      }
      img.push_back(perm[c]);
    }
    std::sort(img.begin(), img.end());
    for (std::size_t v = 0; v < states.size(); ++v) {
      if (states[v] == img) return labels[v];
    }
    throw Error(ErrorCode::kPrecondition, "image of " + label + " lies outside the ball");
  }};
}

}  // namespace cremona
