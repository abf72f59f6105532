#include <algorithm>
#include <bit>
#include <map>
#include <queue>
#include <set>
#include <unordered_map>

#include "cremona/cube.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::kInvalidComplex, what); }

std::string list_labels(const std::vector<std::string>& labels, const std::vector<VertexId>& vs) {
  std::string s = "{";
  for (std::size_t i = 0; i < vs.size(); ++i) s += (i ? ", " : "") + labels[vs[i]];
  return s + "}";
}

// Assigns cube coordinates to the vertex set, or nullopt when the induced
// edges do not form a cube.
std::optional<Cube> as_cube(std::vector<VertexId> vs,
                            const std::vector<std::vector<std::pair<VertexId, int>>>& adj) {
  const std::size_t n = vs.size();
  const int k = std::countr_zero(n);
  std::sort(vs.begin(), vs.end());
  std::unordered_map<VertexId, std::size_t> pos;
  for (std::size_t i = 0; i < n; ++i) pos[vs[i]] = i;
  std::vector<std::vector<std::size_t>> nb(n);
  std::size_t edge_count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    for (auto [w, e] : adj[vs[i]]) {
      (void)e;
      auto it = pos.find(w);
      if (it == pos.end()) continue;
      nb[i].push_back(it->second);
      ++edge_count;
    }
    if (static_cast<int>(nb[i].size()) != k) return std::nullopt;
    std::sort(nb[i].begin(), nb[i].end());
  }
  if (edge_count != static_cast<std::size_t>(k) * n) return std::nullopt;
  std::vector<int> level(n, -1);
  std::vector<std::uint32_t> mask(n, 0);
  level[0] = 0;
  for (int i = 0; i < k; ++i) {
    level[nb[0][i]] = 1;
    mask[nb[0][i]] = 1u << i;
  }
  std::queue<std::size_t> q;
  for (std::size_t w : nb[0]) q.push(w);
  while (!q.empty()) {
    const std::size_t x = q.front();
    q.pop();
    for (std::size_t y : nb[x]) {
      if (level[y] >= 0) continue;
      level[y] = level[x] + 1;
      std::uint32_t m = 0;
      int below = 0;
      for (std::size_t z : nb[y]) {
        if (level[z] == level[y] - 1) {
          m |= mask[z];
          ++below;
        }
      }
      if (below != level[y] || std::popcount(m) != level[y]) return std::nullopt;
      mask[y] = m;
      q.push(y);
    }
  }
  Cube c;
  c.dim = k;
  c.vertices.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (level[i] < 0 || c.vertices[mask[i]] != -1) return std::nullopt;
    c.vertices[mask[i]] = vs[i];
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j : nb[i]) {
      if (std::popcount(mask[i] ^ mask[j]) != 1) return std::nullopt;
    }
  }
  return c;
}

std::vector<std::vector<VertexId>> facets(const Cube& c) {
  std::vector<std::vector<VertexId>> out;
  const std::uint32_t full = (1u << c.dim) - 1;
  for (int b = 0; b < c.dim; ++b) {
    for (std::uint32_t side : {0u, 1u << b}) {
      std::vector<VertexId> f;
      for (std::uint32_t m = 0; m <= full; ++m) {
        if ((m & (1u << b)) == side) f.push_back(c.vertices[m]);
      }
      std::sort(f.begin(), f.end());
      out.push_back(std::move(f));
    }
  }
  return out;
}

}  // namespace

CubeComplex CubeComplex::build(ComplexData data) {
  CubeComplex c;
  const int n = static_cast<int>(data.labels.size());
  {
    std::set<std::string> seen;
    for (const auto& l : data.labels) {
      if (!seen.insert(l).second) invalid("duplicate vertex " + l);
    }
  }
  c.labels_ = std::move(data.labels);
  c.adj_.assign(n, {});
  std::set<std::pair<VertexId, VertexId>> seen_edges;
  for (const auto& [a, b] : data.edges) {
    if (a < 0 || b < 0 || a >= n || b >= n) invalid("edge endpoint out of range");
    if (a == b) invalid("loop at " + c.labels_[a]);
    if (!seen_edges.insert({std::min(a, b), std::max(a, b)}).second) {
      invalid("duplicate edge " + c.labels_[a] + " - " + c.labels_[b]);
    }
    const int idx = static_cast<int>(c.edges_.size());
    c.edges_.push_back({a, b});
    c.adj_[a].push_back({b, idx});
    c.adj_[b].push_back({a, idx});
  }
  std::set<std::vector<VertexId>> keys;
  for (auto& vs : data.cubes) {
    const std::size_t sz = vs.size();
    if (sz < 4 || std::popcount(sz) != 1) {
      invalid("face-closure violation: " + std::to_string(sz) + " vertices cannot span a cube");
    }
    for (VertexId v : vs) {
      if (v < 0 || v >= n) invalid("cube vertex out of range");
    }
    std::vector<VertexId> key = vs;
    std::sort(key.begin(), key.end());
    if (std::adjacent_find(key.begin(), key.end()) != key.end()) invalid("cube with repeated vertices");
    if (!keys.insert(key).second) invalid("duplicate cube " + list_labels(c.labels_, key));
    auto cube = as_cube(vs, c.adj_);
    if (!cube) {
      invalid("face-closure violation: edges of cube " + list_labels(c.labels_, key) +
              " are missing or do not form a cube");
    }
    c.cubes_.push_back(std::move(*cube));
  }
  for (const auto& cube : c.cubes_) {
    if (cube.dim < 3) continue;
    for (const auto& f : facets(cube)) {
      if (!keys.count(f)) {
        invalid("face-closure violation: face " + list_labels(c.labels_, f) + " of a " +
                std::to_string(cube.dim) + "-cube is not recorded");
      }
    }
  }
  for (const auto& cube : c.cubes_) {
    if (cube.dim != 2) continue;
    const auto& v = cube.vertices;
    // Edges along bit 0: v0-v1 and v2-v3; along bit 1: v0-v2 and v1-v3.
    const std::pair<int, int> pairs[2][2] = {{{0, 1}, {2, 3}}, {{0, 2}, {1, 3}}};
    for (const auto& pr : pairs) {
      bool fwd[2];
      for (int s = 0; s < 2; ++s) {
        const int e = *c.edge_between(v[pr[s].first], v[pr[s].second]);
        fwd[s] = c.edges_[e].first == v[pr[s].first];
      }
      if (fwd[0] != fwd[1]) {
        invalid("orientation violation: opposite edges of square " +
                list_labels(c.labels_, {v[0], v[1], v[2], v[3]}) + " disagree");
      }
    }
  }
  return c;
}

std::optional<VertexId> CubeComplex::find(const std::string& label) const {
  for (int i = 0; i < size(); ++i) {
    if (labels_[i] == label) return i;
  }
  return std::nullopt;
}

int CubeComplex::dimension() const {
  int d = edges_.empty() ? 0 : 1;
  for (const auto& c : cubes_) d = std::max(d, c.dim);
  return d;
}

std::optional<int> CubeComplex::edge_between(VertexId a, VertexId b) const {
  for (auto [w, e] : adj_[a]) {
    if (w == b) return e;
  }
  return std::nullopt;
}

ComplexData CubeComplex::data() const {
  ComplexData d;
  d.labels = labels_;
  d.edges = edges_;
  for (const auto& c : cubes_) d.cubes.push_back(c.vertices);
  return d;
}

ComplexData close_faces(ComplexData data) {
  std::set<std::pair<VertexId, VertexId>> have;
  for (const auto& [a, b] : data.edges) have.insert({std::min(a, b), std::max(a, b)});
  std::set<std::vector<VertexId>> keys;
  std::vector<std::vector<VertexId>> out;
  for (const auto& vs : data.cubes) {
    const std::size_t n = vs.size();
    const int k = std::countr_zero(n);
    // Every face: choose free bits D and a base on the complement.
    for (std::uint32_t d = 0; d < n; ++d) {
      const int j = std::popcount(d);
      for (std::uint32_t base = 0; base < n; ++base) {
        if (base & d) continue;
        if (j == 1) {
          const VertexId a = vs[base], b = vs[base | d];
          if (have.insert({std::min(a, b), std::max(a, b)}).second) data.edges.push_back({a, b});
        } else if (j >= 2) {
          std::vector<VertexId> f;
          for (std::uint32_t s = 0; s < n; ++s) {
            if ((s & ~d) == 0) f.push_back(vs[base | s]);
          }
          std::vector<VertexId> key = f;
          std::sort(key.begin(), key.end());
          if (keys.insert(key).second) out.push_back(std::move(f));
        }
      }
    }
    (void)k;
  }
  data.cubes = std::move(out);
  return data;
}

nlohmann::json complex_to_json(const CubeComplex& c) {
  nlohmann::json cubes = nlohmann::json::object();
  for (const auto& cube : c.cubes()) {
    nlohmann::json vs = nlohmann::json::array();
    for (VertexId v : cube.vertices) vs.push_back(c.label(v));
    cubes[std::to_string(cube.dim)].push_back(vs);
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& [a, b] : c.edges()) edges.push_back({c.label(a), c.label(b)});
  nlohmann::json vertices = nlohmann::json::array();
  for (int v = 0; v < c.size(); ++v) vertices.push_back(c.label(v));
  return {{"vertices", vertices}, {"edges", edges}, {"cubes", cubes}};
}

ComplexData complex_data_from_json(const nlohmann::json& j) {
  try {
    ComplexData d;
    std::map<std::string, VertexId> id;
    auto key = [](const nlohmann::json& v) {
      return v.is_string() ? v.get<std::string>() : v.dump();
    };
    for (const auto& v : j.at("vertices")) {
      const std::string k = key(v);
      if (id.count(k)) invalid("duplicate vertex " + k);
      id[k] = static_cast<VertexId>(d.labels.size());
      d.labels.push_back(k);
    }
    auto lookup = [&](const nlohmann::json& v) {
      auto it = id.find(key(v));
      if (it == id.end()) invalid("unknown vertex " + key(v));
      return it->second;
    };
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) invalid("edges must be [tail, head] pairs");
      d.edges.push_back({lookup(e[0]), lookup(e[1])});
    }
    auto add_cube = [&](const nlohmann::json& cube) {
      std::vector<VertexId> vs;
      for (const auto& v : cube) vs.push_back(lookup(v));
      d.cubes.push_back(std::move(vs));
    };
    if (j.contains("cubes")) {
      const auto& cs = j.at("cubes");
      if (cs.is_object()) {
        for (const auto& [dim, list] : cs.items()) {
          (void)dim;
          for (const auto& cube : list) add_cube(cube);
        }
      } else {
        for (const auto& cube : cs) add_cube(cube);
      }
    }
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidComplex, std::string("malformed complex JSON: ") + e.what());
  }
}

std::string complex_to_dot(const CubeComplex& c, const std::vector<VertexId>& path) {
  static const char* kPalette[] = {"red",    "blue",  "darkgreen", "orange", "purple",
                                   "brown",  "cyan",  "magenta",   "gold",   "gray40",
                                   "navy",   "olive", "teal",      "maroon", "black"};
  constexpr std::size_t kColors = sizeof(kPalette) / sizeof(kPalette[0]);
  std::vector<int> cls(c.edges().size(), -1);
  for (const auto& h : hyperplanes(c)) {
    for (int e : h.edges) cls[e] = h.id;
  }
  std::vector<bool> bold(c.edges().size(), false);
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (const auto e = c.edge_between(path[i], path[i + 1])) bold[*e] = true;
  }
  std::string s = "digraph complex {\n";
  if (!path.empty()) {
    s += "  // highlighted path of length " + std::to_string(path.size() - 1) + " from v" +
         std::to_string(path.front()) + " to v" + std::to_string(path.back()) + "\n";
  }
  for (int v = 0; v < c.size(); ++v) {
    s += "  v" + std::to_string(v) + " [label=" + nlohmann::json(c.label(v)).dump();
    if (!path.empty() && (v == path.front() || v == path.back())) s += ", shape=box";
    s += "];\n";
  }
  for (std::size_t e = 0; e < c.edges().size(); ++e) {
    const auto [a, b] = c.edges()[e];
    s += "  v" + std::to_string(a) + " -> v" + std::to_string(b) + " [color=" +
         kPalette[cls[e] % kColors] + ", label=\"H" + std::to_string(cls[e]) + "\"" +
         (bold[e] ? ", penwidth=3" : "") + "];\n";
  }
  return s + "}\n";
}

}  // namespace cremona
