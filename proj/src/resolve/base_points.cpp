#include <algorithm>

#include "cremona/error.hpp"
#include "cremona/resolve.hpp"
#include "resolve_internal.hpp"

namespace cremona {
namespace {

int min_order(const std::vector<Poly>& g) {
  int m = -1;
  for (const auto& p : g) {
    if (p.is_zero()) continue;
    const int o = p.order();
    if (m < 0 || o < m) m = o;
  }
  return m;
}

bool all_vanish_at_origin(const std::vector<Poly>& g) {
  for (const auto& p : g) {
    if (p.constant_term() != 0) return false;
  }
  return true;
}

// Rational roots of a univariate polynomial in v; throws on irrational roots.
std::vector<Rational> slopes(const Poly& r, const BubblePoint& at) {
  std::vector<Rational> out;
  if (r.is_zero() || r.is_constant()) return out;
  for (const auto& [f, e] : factor_q(r).factors) {
    (void)e;
    if (f.degree_in(1) != 1) {
      throw Error(ErrorCode::kIrrationalBaseLocus,
                  "base points over " + at.to_string() + " are not defined over Q");
    }
    Rational c1, c0;
    for (const auto& t : f.terms()) (t.exps[1] == 1 ? c1 : c0) = t.coeff;
    out.push_back(-c0 / c1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

class Builder {
 public:
  Builder(int cap, long long degree) : cap_(cap), d2_(degree * degree) {}

  // `above` is the sum of squared multiplicities of the strict ancestors.
  void add(int parent, BubblePoint q, std::vector<Poly> g, long long above = 0) {
    if (q.height() > cap_) {
      throw Error(ErrorCode::kHeightCap, "base point tree exceeds height cap " +
                                             std::to_string(cap_) + " at " + q.to_string());
    }
    const int idx = static_cast<int>(tree_.nodes.size());
    BaseNode node;
    node.point = q;
    node.parent = parent;
    node.multiplicity = min_order(g);
    const long long m = node.multiplicity;
    for (auto [h, axis] : detail::curves_through(q)) {
      (void)axis;
      node.proximate_to.push_back(ancestor_index(parent, q.height() - 1, h));
    }
    tree_.nodes.push_back(std::move(node));
    if (parent >= 0) tree_.nodes[parent].children.push_back(idx);
    // Two general members of the net meet in d^2 points, so the squared
    // multiplicities of all base points sum to at most d^2. Terms of order
    // above m + (d^2 - sum of squares so far) cannot reach the order-m
    // parts at any later point of this subtree.
    const long long budget = std::max(m, m + d2_ - above - m * m);
    for (auto& p : g) p = truncate(p, budget);
    expand(idx, q, g, above + m * m);
  }

  BasePointTree take() { return std::move(tree_); }

 private:
  int ancestor_index(int node, int node_height, int h) const {
    while (node_height > h) {
      node = tree_.nodes[node].parent;
      --node_height;
    }
    return node;
  }

  static Poly truncate(const Poly& p, long long order) {
    if (p.total_degree() <= order) return p;
    std::vector<Term> keep;
    for (const auto& t : p.terms()) {
      if (static_cast<long long>(t.exps[0]) + t.exps[1] <= order) keep.push_back(t);
    }
    return Poly::from_terms(p.vars(), std::move(keep));
  }

  void expand(int idx, const BubblePoint& q, const std::vector<Poly>& g, long long above) {
    const int m = tree_.nodes[idx].multiplicity;
    std::vector<Poly> ha, hb;
    Poly r;
    for (const auto& p : g) {
      ha.push_back(detail::divide_power(detail::chart_a(p), 0, m));
      hb.push_back(detail::divide_power(detail::chart_b(p), 1, m));
      const Poly on_e = ha.back().partial_eval(0, 0);
      r = r.nvars() == 0 ? on_e : gcd(r, on_e);
    }
    for (const Rational& t0 : slopes(r, q)) {
      std::vector<Poly> next;
      for (const auto& p : ha) next.push_back(detail::shift(p, 0, t0));
      add(idx, q.child(BlowStep{false, t0}), std::move(next), above);
    }
    if (all_vanish_at_origin(hb)) add(idx, q.child(BlowStep{true, 0}), std::move(hb), above);
  }

  int cap_;
  long long d2_;
  BasePointTree tree_;
};

}  // namespace

std::vector<int> BasePointTree::roots() const {
  std::vector<int> out;
  for (int i = 0; i < total(); ++i) {
    if (nodes[i].parent < 0) out.push_back(i);
  }
  return out;
}

int BasePointTree::max_height() const {
  int h = -1;
  for (const auto& n : nodes) h = std::max(h, n.point.height());
  return h;
}

bool BasePointTree::contains(const BubblePoint& q) const {
  return std::any_of(nodes.begin(), nodes.end(), [&](const BaseNode& n) { return n.point == q; });
}

std::vector<BubblePoint> BasePointTree::points() const {
  std::vector<BubblePoint> out;
  for (const auto& n : nodes) out.push_back(n.point);
  return out;
}

BasePointTree base_points(const ProjMap& f, int height_cap) {
  if (f.dim() != 2) throw Error(ErrorCode::kPrecondition, "base points need a map of the plane");
  const IndeterminacyLocus ind = indeterminacy_points(f);
  if (ind.irrational) {
    throw Error(ErrorCode::kIrrationalBaseLocus,
                "indeterminacy points of " + f.to_string() + " are not all defined over Q");
  }
  Builder b(height_cap, f.degree());
  for (const auto& p : ind.points) {
    std::vector<Poly> g;
    for (const auto& c : f.coords().entries()) g.push_back(detail::dehomogenize_at(c, p));
    if (!all_vanish_at_origin(g)) throw Error(ErrorCode::kInternal, "indeterminacy point is not a common zero");
    b.add(-1, BubblePoint{p, {}}, std::move(g));
  }
  return b.take();
}

nlohmann::json base_tree_to_json(const BasePointTree& t) {
  static const char* kChart[3] = {"x=1", "y=1", "z=1"};
  nlohmann::json nodes = nlohmann::json::array();
  for (int i = 0; i < t.total(); ++i) {
    const BaseNode& n = t.nodes[i];
    nlohmann::json steps = nlohmann::json::array();
    for (const auto& s : n.point.steps) steps.push_back(s.chart_b ? "B" : "A(" + to_string(s.t0) + ")");
    nlohmann::json coords = nlohmann::json::array();
    if (n.point.height() == 0) {
      for (const auto& c : n.point.root) coords.push_back(to_string(c));
    } else {
      const BlowStep& s = n.point.steps.back();
      coords = {"0", s.chart_b ? "0" : to_string(s.t0)};
    }
    nodes.push_back({{"id", i},
                     {"parent", n.parent < 0 ? nlohmann::json(nullptr) : nlohmann::json(n.parent)},
                     {"height", n.point.height()},
                     {"root", point_to_string(n.point.root)},
                     {"chart", kChart[root_chart_index(n.point.root)]},
                     {"steps", steps},
                     {"coordinates", coords},
                     {"multiplicity", n.multiplicity},
                     {"proximate_to", n.proximate_to},
                     {"children", n.children}});
  }
  return {{"total", t.total()}, {"max_height", t.max_height()}, {"nodes", nodes}};
}

StabilityReport is_algebraically_stable(const ProjMap& f, int n, int degree_cap, int height_cap) {
  const IterateRun run = iterates(f, n, degree_cap);
  if (run.capped) {
    throw Error(ErrorCode::kDegreeCap, "degree cap " + std::to_string(degree_cap) +
                                           " reached after n = " +
                                           std::to_string(run.iterates.size()));
  }
  StabilityReport rep;
  for (const auto& g : run.iterates) rep.counts.push_back(base_points(g, height_cap).total());
  for (std::size_t k = 0; k < rep.counts.size(); ++k) {
    if (rep.counts[k] != static_cast<int>(k + 1) * rep.counts[0]) {
      rep.stable = false;
      rep.first_violation = static_cast<int>(k + 1);
      break;
    }
  }
  return rep;
}

}  // namespace cremona
