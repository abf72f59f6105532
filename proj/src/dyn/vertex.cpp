#include <algorithm>
#include <set>

#include "cremona/dyn.hpp"
#include "cremona/error.hpp"

namespace cremona {

std::string MarkedSurfaceVertex::to_string() const {
  std::string s = "(" + marking.to_string() + ", {";
  for (std::size_t i = 0; i < blown_points.size(); ++i) s += (i ? ", " : "") + blown_points[i].to_string();
  return s + "})";
}

MarkedSurfaceVertex make_vertex(const ProjMap& marking, std::vector<BubblePoint> points) {
  std::set<BubblePoint> closed;
  for (auto p : points) {
    while (true) {
      closed.insert(p);
      if (p.height() == 0) break;
      p = p.parent();
    }
  }
  return MarkedSurfaceVertex{with_inverse(marking), {closed.begin(), closed.end()}};
}

MarkedSurfaceVertex act(const ProjMap& f, const MarkedSurfaceVertex& v) {
  return MarkedSurfaceVertex{compose(with_inverse(f), v.marking), v.blown_points};
}

int distance_vertices(const MarkedSurfaceVertex& a, const MarkedSurfaceVertex& b, int height_cap) {
  // g = psi_b^-1 psi_a; the common resolution blows up
  // A = B_a u Base(g) u g^-1(B_b \ Base(g^-1)) over the source of g.
  const ProjMap g = compose(b.marking.inverse(), a.marking);
  const ProjMap ginv = g.inverse();
  const BasePointTree bg = base_points(g, height_cap);
  const BasePointTree bginv = base_points(ginv, height_cap);
  std::set<BubblePoint> all(a.blown_points.begin(), a.blown_points.end());
  for (const auto& p : bg.points()) all.insert(p);
  for (const auto& q : b.blown_points) {
    if (!bginv.contains(q)) all.insert(transport(ginv, q, &bginv, &bg));
  }
  const int n = static_cast<int>(all.size());
  return 2 * n - static_cast<int>(a.blown_points.size()) - static_cast<int>(b.blown_points.size());
}

bool vertex_equiv(const MarkedSurfaceVertex& a, const MarkedSurfaceVertex& b, int height_cap) {
  return a.picard_rank() == b.picard_rank() && distance_vertices(a, b, height_cap) == 0;
}

}  // namespace cremona
