#pragma once

// Cube complexes used by the tests and the acceptance binary: cubical
// subcomplexes of Z^k, products of trees and staircases.

#include <bit>
#include <map>
#include <optional>
#include <random>
#include <set>

#include "cremona/cube.hpp"

namespace cremona::fixtures {

using Point = std::vector<int>;

inline std::string point_label(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + std::to_string(p[i]);
  return s;
}

// Cubical subcomplex of Z^k spanned by a point set: unit edges oriented
// towards larger coordinates and every unit cube whose corners are present.
inline ComplexData grid_complex(const std::vector<Point>& pts) {
  ComplexData d;
  std::map<Point, VertexId> id;
  for (const auto& p : pts) {
    id[p] = static_cast<VertexId>(d.labels.size());
    d.labels.push_back(point_label(p));
  }
  const std::size_t k = pts.empty() ? 0 : pts.front().size();
  for (const auto& p : pts) {
    for (std::size_t i = 0; i < k; ++i) {
      Point q = p;
      ++q[i];
      if (id.count(q)) d.edges.push_back({id[p], id[q]});
    }
    for (std::uint32_t dirs = 0; dirs < (1u << k); ++dirs) {
      if (std::popcount(dirs) < 2) continue;
      std::vector<std::size_t> axes;
      for (std::size_t i = 0; i < k; ++i) {
        if (dirs & (1u << i)) axes.push_back(i);
      }
      std::vector<VertexId> cube;
      for (std::uint32_t m = 0; m < (1u << axes.size()); ++m) {
        Point q = p;
        for (std::size_t b = 0; b < axes.size(); ++b) {
          if (m & (1u << b)) ++q[axes[b]];
        }
        auto it = id.find(q);
        if (it == id.end()) {
          cube.clear();
          break;
        }
        cube.push_back(it->second);
      }
      if (!cube.empty()) d.cubes.push_back(cube);
    }
  }
  return d;
}

inline std::vector<Point> unit_cube(int k) {
  std::vector<Point> pts;
  for (int m = 0; m < (1 << k); ++m) {
    Point p;
    for (int b = 0; b < k; ++b) p.push_back((m >> b) & 1);
    pts.push_back(p);
  }
  return pts;
}

// Two 3-cubes sharing a square, with a square attached along an edge.
inline ComplexData figure_one() {
  std::vector<Point> pts;
  for (int x = 0; x <= 2; ++x) {
    for (int y = 0; y <= 1; ++y) {
      for (int z = 0; z <= 1; ++z) pts.push_back({x, y, z, 0});
    }
  }
  pts.push_back({2, 0, 0, 1});
  pts.push_back({2, 1, 0, 1});
  return grid_complex(pts);
}

// Product of random trees; tree edges point away from the root.
inline ComplexData tree_product(std::mt19937_64& rng, int factors) {
  std::vector<std::vector<int>> parent(factors);
  for (auto& par : parent) {
    const int n = 2 + static_cast<int>(rng() % 5);
    par.assign(n, -1);
    for (int i = 1; i < n; ++i) par[i] = static_cast<int>(rng() % i);
  }
  std::vector<Point> tuples = {{}};
  for (const auto& par : parent) {
    std::vector<Point> next;
    for (const auto& t : tuples) {
      for (int i = 0; i < static_cast<int>(par.size()); ++i) {
        Point u = t;
        u.push_back(i);
        next.push_back(u);
      }
    }
    tuples = std::move(next);
  }
  ComplexData d;
  std::map<Point, VertexId> id;
  for (const auto& t : tuples) {
    id[t] = static_cast<VertexId>(d.labels.size());
    d.labels.push_back(point_label(t));
  }
  for (const auto& t : tuples) {
    for (std::uint32_t dirs = 1; dirs < (1u << factors); ++dirs) {
      // Product of the parent edges of t in the chosen factors.
      std::vector<VertexId> cube;
      const int dim = std::popcount(dirs);
      bool ok = true;
      for (int f = 0; f < factors; ++f) ok = ok && (!(dirs & (1u << f)) || parent[f][t[f]] >= 0);
      if (!ok) continue;
      std::vector<int> axes;
      for (int f = 0; f < factors; ++f) {
        if (dirs & (1u << f)) axes.push_back(f);
      }
      for (std::uint32_t m = 0; m < (1u << dim); ++m) {
        Point q = t;
        for (int b = 0; b < dim; ++b) {
          if (!(m & (1u << b))) q[axes[b]] = parent[axes[b]][t[axes[b]]];
        }
        cube.push_back(id[q]);
      }
      if (dim == 1) {
        d.edges.push_back({cube[0], cube[1]});
      } else {
        d.cubes.push_back(cube);
      }
    }
  }
  return d;
}

// Down-closed subset of a grid; kept only when its links are flag, which
// together with contractibility makes it CAT(0).
inline std::optional<ComplexData> staircase(std::mt19937_64& rng) {
  const int k = 2 + static_cast<int>(rng() % 2);
  std::set<Point> pts;
  const int gens = 1 + static_cast<int>(rng() % 4);
  for (int g = 0; g < gens; ++g) {
    Point top;
    for (int i = 0; i < k; ++i) top.push_back(static_cast<int>(rng() % 4));
    std::vector<Point> box = {{}};
    for (int i = 0; i < k; ++i) {
      std::vector<Point> next;
      for (const auto& b : box) {
        for (int v = 0; v <= top[i]; ++v) {
          Point c = b;
          c.push_back(v);
          next.push_back(c);
        }
      }
      box = std::move(next);
    }
    pts.insert(box.begin(), box.end());
  }
  ComplexData d = grid_complex({pts.begin(), pts.end()});
  if (!check_gromov(CubeComplex::build(d)).flag) return std::nullopt;
  return d;
}

}  // namespace cremona::fixtures
