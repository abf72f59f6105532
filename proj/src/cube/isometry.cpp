#include <algorithm>
#include <limits>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "cremona/cube.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

struct Ball {
  std::unordered_map<std::string, int> dist;
  std::vector<std::string> order;  // discovery order
};

// Breadth-first ball of the given radius; stops early once `target` is
// reached if one is given.
Ball bfs_ball(const NeighborOracle& g, const std::string& a, int radius, const std::string* target,
              std::size_t budget) {
  Ball b;
  b.dist[a] = 0;
  b.order.push_back(a);
  std::size_t expanded = 0;
  for (std::size_t i = 0; i < b.order.size(); ++i) {
    const std::string x = b.order[i];
    const int dx = b.dist[x];
    if (target != nullptr && x == *target) break;
    if (dx >= radius) continue;
    if (++expanded > budget) {
      throw Error(ErrorCode::kBudgetExceeded,
                  "search from " + a + " expanded more than " + std::to_string(budget) + " vertices");
    }
    for (const auto& [y, out] : g.neighbors(x)) {
      (void)out;
      if (b.dist.emplace(y, dx + 1).second) b.order.push_back(y);
    }
  }
  return b;
}

void check_edge(const NeighborOracle& g, const VertexIsometry& f, const std::string& x,
                const std::string& y, bool out) {
  const std::string fx = f.apply(x), fy = f.apply(y);
  for (const auto& [z, o] : g.neighbors(fx)) {
    if (z != fy) continue;
    if (o == out) return;
    if (fx == y && fy == x) {
      throw Error(ErrorCode::kPrecondition, "isometry inverts the edge " + x + " - " + y);
    }
    throw Error(ErrorCode::kPrecondition, "isometry reverses the orientation of the edge " + x + " - " + y);
  }
  throw Error(ErrorCode::kPrecondition, "image of the edge " + x + " - " + y + " is not an edge");
}

}  // namespace

std::vector<std::pair<std::string, bool>> ExplicitOracle::neighbors(const std::string& v) const {
  const auto id = c_.find(v);
  if (!id) throw Error(ErrorCode::kPrecondition, "unknown vertex " + v);
  std::vector<std::pair<std::string, bool>> out;
  for (auto [w, e] : c_.adjacent(*id)) out.push_back({c_.label(w), c_.edges()[e].first == *id});
  return out;
}

int oracle_distance(const NeighborOracle& g, const std::string& a, const std::string& b,
                    std::size_t budget) {
  const Ball ball = bfs_ball(g, a, std::numeric_limits<int>::max(), &b, budget);
  const auto it = ball.dist.find(b);
  if (it == ball.dist.end()) throw Error(ErrorCode::kUnreachable, b + " is not reachable from " + a);
  return it->second;
}

const char* isometry_kind_name(IsometryKind k) {
  switch (k) {
    case IsometryKind::kElliptic:
      return "elliptic";
    case IsometryKind::kLoxodromic:
      return "loxodromic";
    case IsometryKind::kUndecided:
      return "undecided";
  }
  return "undecided";
}

IsometryReport classify_isometry(const NeighborOracle& g, const VertexIsometry& f, const std::string& v0,
                                 int n, std::size_t budget) {
  if (n < 1) throw Error(ErrorCode::kPrecondition, "need at least one iterate");
  IsometryReport rep;
  std::vector<std::string> orbit = {v0};
  for (int k = 1; k <= n; ++k) orbit.push_back(f.apply(orbit.back()));
  for (int k = 0; k < n; ++k) {
    for (const auto& [y, out] : g.neighbors(orbit[k])) check_edge(g, f, orbit[k], y, out);
  }
  for (int k = 1; k <= n; ++k) rep.displacements.push_back(oracle_distance(g, v0, orbit[k], budget));

  const int window = (n + 1) / 2;
  if (n >= 2) {
    const int s = rep.displacements[n - 1] - rep.displacements[n - 2];
    bool constant = s > 0;
    for (int k = n - window + 1; k <= n && constant; ++k) {
      const int prev = k >= 2 ? rep.displacements[k - 2] : 0;
      constant = rep.displacements[k - 1] - prev == s;
    }
    if (constant) {
      rep.kind = IsometryKind::kLoxodromic;
      rep.translation_length = s;
      return rep;
    }
  }

  // Probe: distinct orbit points, then interval vertices between them,
  // ordered by distance from v0.
  std::vector<std::string> distinct;
  for (const auto& x : orbit) {
    if (std::find(distinct.begin(), distinct.end(), x) == distinct.end()) distinct.push_back(x);
  }
  std::vector<std::string> candidates = distinct;
  std::set<std::string> seen(distinct.begin(), distinct.end());
  std::vector<std::string> interval;
  for (std::size_t i = 0; i < distinct.size(); ++i) {
    for (std::size_t j = i + 1; j < distinct.size(); ++j) {
      const int d = oracle_distance(g, distinct[i], distinct[j], budget);
      const Ball a = bfs_ball(g, distinct[i], d, nullptr, budget);
      const Ball b = bfs_ball(g, distinct[j], d, nullptr, budget);
      for (const auto& x : a.order) {
        const auto it = b.dist.find(x);
        if (it != b.dist.end() && a.dist.at(x) + it->second == d && seen.insert(x).second) {
          interval.push_back(x);
        }
      }
      rep.probe_depth = std::max(rep.probe_depth, d);
    }
  }
  if (!interval.empty()) {
    std::map<std::string, int> from_v0;
    for (const auto& x : interval) {
      from_v0[x] = oracle_distance(g, v0, x, budget);
    }
    std::stable_sort(interval.begin(), interval.end(),
                     [&](const std::string& x, const std::string& y) { return from_v0[x] < from_v0[y]; });
    candidates.insert(candidates.end(), interval.begin(), interval.end());
  }
  for (const auto& x : candidates) {
    if (f.apply(x) == x) rep.fixed_vertices.push_back(x);
  }
  if (!rep.fixed_vertices.empty()) {
    rep.kind = IsometryKind::kElliptic;
    rep.fixed_vertex = rep.fixed_vertices.front();
  }
  return rep;
}

}  // namespace cremona
