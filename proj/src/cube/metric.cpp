#include <algorithm>
#include <numeric>
#include <queue>
#include <set>

#include "cremona/cube.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

bool subset_of(const std::vector<VertexId>& a, const std::vector<VertexId>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

void bron_kerbosch(std::vector<VertexId> r, std::vector<VertexId> p, std::vector<VertexId> x,
                   const std::set<std::pair<VertexId, VertexId>>& adj,
                   std::vector<std::vector<VertexId>>& out) {
  if (p.empty() && x.empty()) {
    std::sort(r.begin(), r.end());
    out.push_back(std::move(r));
    return;
  }
  auto connected = [&](VertexId a, VertexId b) { return adj.count({std::min(a, b), std::max(a, b)}) > 0; };
  while (!p.empty()) {
    const VertexId v = p.back();
    std::vector<VertexId> r2 = r, p2, x2;
    r2.push_back(v);
    for (VertexId w : p) {
      if (w != v && connected(v, w)) p2.push_back(w);
    }
    for (VertexId w : x) {
      if (connected(v, w)) x2.push_back(w);
    }
    bron_kerbosch(std::move(r2), std::move(p2), std::move(x2), adj, out);
    p.pop_back();
    x.push_back(v);
  }
}

}  // namespace

Link link(const CubeComplex& c, VertexId v) {
  Link l;
  l.base = v;
  for (auto [w, e] : c.adjacent(v)) {
    (void)e;
    l.vertices.push_back(w);
  }
  std::sort(l.vertices.begin(), l.vertices.end());
  std::vector<std::vector<VertexId>> all;
  for (VertexId w : l.vertices) all.push_back({w});
  for (const auto& cube : c.cubes()) {
    const auto it = std::find(cube.vertices.begin(), cube.vertices.end(), v);
    if (it == cube.vertices.end()) continue;
    const std::size_t m = static_cast<std::size_t>(it - cube.vertices.begin());
    std::vector<VertexId> s;
    for (int b = 0; b < cube.dim; ++b) s.push_back(cube.vertices[m ^ (std::size_t{1} << b)]);
    std::sort(s.begin(), s.end());
    all.push_back(std::move(s));
  }
  std::sort(all.begin(), all.end());
  all.erase(std::unique(all.begin(), all.end()), all.end());
  for (std::size_t i = 0; i < all.size(); ++i) {
    bool maximal = true;
    for (std::size_t j = 0; j < all.size() && maximal; ++j) {
      if (i != j && all[j].size() > all[i].size() && subset_of(all[i], all[j])) maximal = false;
    }
    if (maximal) l.simplices.push_back(all[i]);
  }
  return l;
}

GromovReport check_gromov(const CubeComplex& c) {
  GromovReport rep;
  for (VertexId v = 0; v < c.size(); ++v) {
    const Link l = link(c, v);
    std::set<std::pair<VertexId, VertexId>> adj;
    for (const auto& s : l.simplices) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        for (std::size_t j = i + 1; j < s.size(); ++j) adj.insert({s[i], s[j]});
      }
    }
    std::vector<std::vector<VertexId>> cliques;
    bron_kerbosch({}, l.vertices, {}, adj, cliques);
    std::sort(cliques.begin(), cliques.end());
    for (const auto& q : cliques) {
      bool spanned = false;
      for (const auto& s : l.simplices) spanned = spanned || subset_of(q, s);
      if (!spanned) {
        rep.flag = false;
        rep.witness = v;
        rep.missing_simplex = q;
        return rep;
      }
    }
  }
  return rep;
}

std::vector<int> bfs_distances(const CubeComplex& c, VertexId v) {
  std::vector<int> d(c.size(), -1);
  std::queue<VertexId> q;
  d[v] = 0;
  q.push(v);
  while (!q.empty()) {
    const VertexId x = q.front();
    q.pop();
    for (auto [y, e] : c.adjacent(x)) {
      (void)e;
      if (d[y] < 0) {
        d[y] = d[x] + 1;
        q.push(y);
      }
    }
  }
  return d;
}

std::vector<Hyperplane> hyperplanes(const CubeComplex& c) {
  if (c.size() == 0) return {};
  for (int d : bfs_distances(c, 0)) {
    if (d < 0) throw Error(ErrorCode::kInvalidComplex, "complex is disconnected");
  }
  const auto& edges = c.edges();
  UnionFind uf(edges.size());
  for (const auto& cube : c.cubes()) {
    if (cube.dim != 2) continue;
    const auto& v = cube.vertices;
    uf.unite(*c.edge_between(v[0], v[1]), *c.edge_between(v[2], v[3]));
    uf.unite(*c.edge_between(v[0], v[2]), *c.edge_between(v[1], v[3]));
  }
  std::vector<int> class_of(edges.size(), -1);
  std::vector<Hyperplane> out;
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const int r = uf.find(static_cast<int>(e));
    if (class_of[r] < 0) {
      class_of[r] = static_cast<int>(out.size());
      out.push_back(Hyperplane{static_cast<int>(out.size()), {}, {}});
    }
    out[class_of[r]].edges.push_back(static_cast<int>(e));
  }
  for (auto& h : out) {
    std::vector<bool> removed(edges.size(), false);
    for (int e : h.edges) removed[e] = true;
    std::vector<int> comp(c.size(), -1);
    int ncomp = 0;
    for (VertexId s = 0; s < c.size(); ++s) {
      if (comp[s] >= 0) continue;
      std::queue<VertexId> q;
      comp[s] = ncomp;
      q.push(s);
      while (!q.empty()) {
        const VertexId x = q.front();
        q.pop();
        for (auto [y, e] : c.adjacent(x)) {
          if (!removed[e] && comp[y] < 0) {
            comp[y] = ncomp;
            q.push(y);
          }
        }
      }
      ++ncomp;
    }
    if (ncomp != 2) {
      throw Error(ErrorCode::kInvalidComplex, "hyperplane " + std::to_string(h.id) + " leaves " +
                                                  std::to_string(ncomp) + " components");
    }
    const int tail_side = comp[edges[h.edges.front()].first];
    for (int e : h.edges) {
      if (comp[edges[e].first] != tail_side || comp[edges[e].second] == tail_side) {
        throw Error(ErrorCode::kInvalidComplex,
                    "edges of hyperplane " + std::to_string(h.id) + " are not consistently oriented");
      }
    }
    h.plus.resize(c.size());
    for (VertexId v = 0; v < c.size(); ++v) h.plus[v] = comp[v] == tail_side;
  }
  return out;
}

int distance(const std::vector<Hyperplane>& hs, VertexId u, VertexId v) {
  int d = 0;
  for (const auto& h : hs) d += h.plus[u] != h.plus[v];
  return d;
}

int distance(const CubeComplex& c, VertexId u, VertexId v) {
  const int d = bfs_distances(c, u)[v];
  if (d < 0) throw Error(ErrorCode::kInvalidComplex, "vertices lie in different components");
  return d;
}

GeodesicList geodesics(const CubeComplex& c, VertexId u, VertexId v, std::size_t limit) {
  GeodesicList out;
  const std::vector<int> dv = bfs_distances(c, v);
  if (dv[u] < 0) return out;
  std::vector<VertexId> path = {u};
  auto dfs = [&](auto&& self, VertexId x) -> void {
    if (x == v) {
      // One extra path proves the list is incomplete.
      if (out.paths.size() == limit) {
        out.truncated = true;
      } else {
        out.paths.push_back(path);
      }
      return;
    }
    std::vector<VertexId> next;
    for (auto [y, e] : c.adjacent(x)) {
      (void)e;
      if (dv[y] == dv[x] - 1) next.push_back(y);
    }
    std::sort(next.begin(), next.end());
    for (VertexId y : next) {
      path.push_back(y);
      self(self, y);
      path.pop_back();
      if (out.truncated) return;
    }
  };
  dfs(dfs, u);
  return out;
}

}  // namespace cremona
