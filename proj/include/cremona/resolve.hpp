#pragma once

// Points infinitely near the plane, encoded as a proper point plus a
// sequence of blow-up directions, and the base-point trees of plane maps.
//
// Local coordinates at a proper point p = [p0:p1:p2] live in the first
// standard chart with a nonzero coordinate, scanning z, then y, then x,
// centered at p. Blowing up the origin of local coordinates (a, b) gives
// chart A with (a, b) = (s, s*t) and chart B with (a, b) = (s*t, t). A
// point on the exceptional curve is either (0, t0) in chart A (the
// direction of slope t0) or the origin of chart B (the direction a = 0).
// Local coordinates at the new point are chart coordinates recentered.

#include <json.hpp>
#include <string>
#include <vector>

#include "cremona/birmap.hpp"

namespace cremona {

constexpr int kDefaultHeightCap = 64;

struct BlowStep {
  bool chart_b = false;  // false: chart A at slope t0; true: origin of chart B
  Rational t0 = 0;

  friend bool operator==(const BlowStep& a, const BlowStep& b) {
    return a.chart_b == b.chart_b && a.t0 == b.t0;
  }
};

struct BubblePoint {
  ProjPoint root;               // normalized proper point
  std::vector<BlowStep> steps;  // empty for proper points

  int height() const { return static_cast<int>(steps.size()); }
  BubblePoint parent() const;  // requires height() > 0
  BubblePoint child(BlowStep s) const;
  bool is_infinitely_near_to(const BubblePoint& ancestor) const;
  std::string to_string() const;

  friend bool operator==(const BubblePoint& a, const BubblePoint& b) {
    return a.root == b.root && a.steps == b.steps;
  }
  friend bool operator<(const BubblePoint& a, const BubblePoint& b);
};

// Index of the coordinate set to 1 in the chart of a proper point.
int root_chart_index(const ProjPoint& p);

// Affine chart: ambient homogeneous coordinates as polynomials in the two
// local variables {u, v}.
struct Chart {
  int root_index = 2;  // standard chart {x_root_index = 1}
  int blowups = 0;
  PolyTuple substitution;
};

Chart standard_chart(int root_index);
// Both charts of the blow-up of c at p, recentered at p first.
std::pair<Chart, Chart> blow_up_point(const Chart& c, const std::pair<Rational, Rational>& p);
// Chart whose local coordinates are centered at q.
Chart chart_at(const BubblePoint& q);

// The map f written in the local coordinates at q, with the common factor
// of the components removed.
PolyTuple local_system(const ProjMap& f, const BubblePoint& q);

struct BaseNode {
  BubblePoint point;
  int parent = -1;
  std::vector<int> children;
  int multiplicity = 0;            // multiplicity of the linear system at the point
  std::vector<int> proximate_to;   // indices of earlier nodes whose exceptional curves pass here
};

struct BasePointTree {
  std::vector<BaseNode> nodes;  // parents before children; roots in coordinate order
  int total() const { return static_cast<int>(nodes.size()); }
  std::vector<int> roots() const;
  int max_height() const;
  bool contains(const BubblePoint& q) const;
  std::vector<BubblePoint> points() const;
};

BasePointTree base_points(const ProjMap& f, int height_cap = kDefaultHeightCap);
nlohmann::json base_tree_to_json(const BasePointTree& t);

// Proximity among an arbitrary finite set of bubble points closed under
// parents: result[i] lists the j whose exceptional curve passes through
// point i (its parent and possibly one more ancestor).
std::vector<std::vector<int>> proximity(const std::vector<BubblePoint>& pts);

// Multiplicities of the strict transforms of the plane curve {c = 0} at the
// points of q's chain: result[k] is the multiplicity at the ancestor of
// height k (result.back() at q).
std::vector<int> curve_multiplicities(const Poly& c, const BubblePoint& q);

struct ExcComponents {
  std::vector<std::pair<Poly, int>> components;  // irreducible factors of the Jacobian
  int count() const { return static_cast<int>(components.size()); }
};

// True when f maps the irreducible curve {q = 0} to a point.
bool contracts_curve(const ProjMap& f, const Poly& q);
ExcComponents exc_components(const ProjMap& f);

struct StabilityReport {
  bool stable = true;
  int first_violation = 0;  // 0 when stable
  std::vector<int> counts;  // Bs(f^n) for n = 1..N
};
StabilityReport is_algebraically_stable(const ProjMap& f, int n,
                                        int degree_cap = kDefaultDegreeCap,
                                        int height_cap = kDefaultHeightCap);

// Image of the bubble point q under h when q is not a base point of h. The
// inverse of h must be attached. `base_h` and `base_hinv` may be supplied
// to avoid recomputation.
BubblePoint transport(const ProjMap& h, const BubblePoint& q,
                      const BasePointTree* base_h = nullptr,
                      const BasePointTree* base_hinv = nullptr);

// Chain of infinitely near points followed by the plane arc t -> arc(t),
// given by homogeneous coordinates as polynomials in one variable (index 0
// of the arc's variable list), up to the given length.
std::vector<BubblePoint> arc_chain(const std::vector<Poly>& arc, int length);

// Image point of an irreducible curve contracted by f, as a bubble point of
// the target: the last point of Base(f^-1) on the image of a transversal arc.
BubblePoint contracted_curve_image(const ProjMap& f, const Poly& q,
                                   const BasePointTree* base_finv = nullptr);

}  // namespace cremona
