#pragma once

// Finite cube complexes with oriented edges, and the combinatorics used on
// them: links and the flag condition, hyperplanes, distances, geodesics,
// and classification of orientation-preserving isometries through a
// neighbor oracle.

#include <cstdint>
#include <functional>
#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

namespace cremona {

using VertexId = int;

struct ComplexData {
  std::vector<std::string> labels;                // one per vertex; ids are indices
  std::vector<std::pair<VertexId, VertexId>> edges;  // tail -> head
  std::vector<std::vector<VertexId>> cubes;       // dimension >= 2, 2^k vertices each
};

struct Cube {
  int dim = 0;
  std::vector<VertexId> vertices;  // vertices[mask] has coordinates given by the bits of mask
};

class CubeComplex {
 public:
  // Validates face closure, square orientation and duplicates; throws
  // kInvalidComplex naming the violation.
  static CubeComplex build(ComplexData data);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(VertexId v) const { return labels_[v]; }
  std::optional<VertexId> find(const std::string& label) const;
  const std::vector<std::pair<VertexId, VertexId>>& edges() const { return edges_; }
  const std::vector<Cube>& cubes() const { return cubes_; }  // dimension >= 2
  int dimension() const;
  // Neighbors of v with the index of the connecting edge.
  const std::vector<std::pair<VertexId, int>>& adjacent(VertexId v) const { return adj_[v]; }
  std::optional<int> edge_between(VertexId a, VertexId b) const;
  ComplexData data() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::pair<VertexId, VertexId>> edges_;
  std::vector<Cube> cubes_;
  std::vector<std::vector<std::pair<VertexId, int>>> adj_;
};

// Adds every face of every listed cube (and the cube edges, oriented from
// the lower to the higher coordinate of an explicit cube embedding) so
// generated data passes validation. Cubes are given by their vertex lists in
// mask order.
ComplexData close_faces(ComplexData data);

struct Link {
  VertexId base = 0;
  std::vector<VertexId> vertices;
  std::vector<std::vector<VertexId>> simplices;  // maximal simplices
};
Link link(const CubeComplex& c, VertexId v);

struct GromovReport {
  bool flag = true;
  std::optional<VertexId> witness;    // first vertex with a non-flag link
  std::vector<VertexId> missing_simplex;  // a clique of its link that spans no cube
};
GromovReport check_gromov(const CubeComplex& c);

struct Hyperplane {
  int id = 0;
  std::vector<int> edges;   // indices into CubeComplex::edges()
  std::vector<bool> plus;   // per vertex: side containing edge tails
};
// Throws kInvalidComplex for disconnected complexes or for classes whose
// removal does not split the vertices into exactly two sides.
std::vector<Hyperplane> hyperplanes(const CubeComplex& c);

int distance(const std::vector<Hyperplane>& hs, VertexId u, VertexId v);
int distance(const CubeComplex& c, VertexId u, VertexId v);
// Breadth-first distances from v; -1 marks unreachable vertices.
std::vector<int> bfs_distances(const CubeComplex& c, VertexId v);

struct GeodesicList {
  std::vector<std::vector<VertexId>> paths;
  bool truncated = false;  // the limit was reached
};
GeodesicList geodesics(const CubeComplex& c, VertexId u, VertexId v, std::size_t limit);

nlohmann::json complex_to_json(const CubeComplex& c);
// Accepts {vertices, edges, cubes} with cubes either as a list of vertex
// lists or keyed by dimension; vertices may be strings or integers.
ComplexData complex_data_from_json(const nlohmann::json& j);
// Edges are colored by hyperplane class; edges along `path` are drawn bold.
std::string complex_to_dot(const CubeComplex& c, const std::vector<VertexId>& path = {});

// Neighbor oracle over string-labelled vertices; the explicit complexes
// are wrapped by ExplicitOracle.
class NeighborOracle {
 public:
  virtual ~NeighborOracle() = default;
  // Adjacent vertices, each flagged true when the edge is oriented away
  // from v.
  virtual std::vector<std::pair<std::string, bool>> neighbors(const std::string& v) const = 0;
};

class ExplicitOracle : public NeighborOracle {
 public:
  explicit ExplicitOracle(const CubeComplex& c) : c_(c) {}
  std::vector<std::pair<std::string, bool>> neighbors(const std::string& v) const override;

 private:
  const CubeComplex& c_;
};

// Breadth-first search over an oracle, bounded by the number of expanded
// vertices; throws kBudgetExceeded when the budget is exhausted.
int oracle_distance(const NeighborOracle& g, const std::string& a, const std::string& b,
                    std::size_t budget);

struct VertexIsometry {
  std::function<std::string(const std::string&)> apply;
};

enum class IsometryKind { kElliptic, kLoxodromic, kUndecided };
const char* isometry_kind_name(IsometryKind k);

struct IsometryReport {
  IsometryKind kind = IsometryKind::kUndecided;
  int translation_length = 0;               // slope for loxodromic, 0 otherwise
  std::optional<std::string> fixed_vertex;  // first fixed vertex in probe order
  std::vector<std::string> fixed_vertices;  // every fixed vertex the probe met
  std::vector<int> displacements;           // d(v0, f^n v0), n = 1..N
  int probe_depth = 0;
};

// Probe order for fixed vertices: orbit points, then the vertices of
// intervals between orbit points in the oracle's BFS order from v0. Throws
// kPrecondition when an explored edge is inverted or its orientation
// reversed, and kBudgetExceeded when a search runs out of budget.
IsometryReport classify_isometry(const NeighborOracle& g, const VertexIsometry& f,
                                 const std::string& v0, int n, std::size_t budget = 100000);

}  // namespace cremona
