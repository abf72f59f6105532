#pragma once

// Dynamics on the blow-up complex of the plane: marked surfaces and their
// distance, finite balls of the complex, and the invariants mu, nu^1,
// degree growth and the resulting isometry types.

#include <json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "cremona/birmap.hpp"
#include "cremona/cube.hpp"
#include "cremona/resolve.hpp"

namespace cremona {

// The marked surface (Bl_B P^2, marking o pi_B). The marking is a
// birational self-map of P^2 with an attached inverse.
struct MarkedSurfaceVertex {
  ProjMap marking;
  std::vector<BubblePoint> blown_points;  // closed under parents, sorted

  int picard_rank() const { return 1 + static_cast<int>(blown_points.size()); }
  std::string to_string() const;
};

// Closes the points under parents and attaches an inverse to the marking.
MarkedSurfaceVertex make_vertex(const ProjMap& marking, std::vector<BubblePoint> points = {});
// f . (T, phi) = (T, f o phi).
MarkedSurfaceVertex act(const ProjMap& f, const MarkedSurfaceVertex& v);
// Bs(phi2^-1 phi1) + Bs(phi1^-1 phi2).
int distance_vertices(const MarkedSurfaceVertex& a, const MarkedSurfaceVertex& b,
                      int height_cap = kDefaultHeightCap);
bool vertex_equiv(const MarkedSurfaceVertex& a, const MarkedSurfaceVertex& b,
                  int height_cap = kDefaultHeightCap);

// An irreducible curve on the dominating surface of a ball: the strict
// transform of an exceptional curve or of a plane curve.
struct BallCurve {
  std::string name;
  int exceptional = -1;       // index into Ball::points, or -1
  std::optional<Poly> plane;  // set for plane curves
  std::vector<long long> cls;  // coefficients of H, E_1, ..., E_n
};

// Full subcomplex spanned by the surfaces between the blow-up Z of every
// universe point and the models obtained from Z by contracting curves.
// A vertex is the set of curves contracted from Z; the radius bounds the
// number of universe points blown up relative to the center.
struct Ball {
  MarkedSurfaceVertex center;
  std::vector<BubblePoint> points;  // blown up on Z, sorted
  std::vector<BallCurve> curves;
  std::vector<std::vector<int>> states;  // per vertex id, sorted curve ids
  std::vector<int> picard_rank;          // per vertex id
  std::vector<std::optional<MarkedSurfaceVertex>> vertices;  // presented over P^2 when possible
  VertexId center_id = 0;
  CubeComplex complex;

  std::optional<VertexId> find_state(const std::vector<int>& curves) const;
};

Ball ball(const MarkedSurfaceVertex& center, int radius, const std::vector<BubblePoint>& universe,
          std::size_t budget = 20000);
nlohmann::json ball_to_json(const Ball& b);

// The action of f on the ball's vertices. f must lift to an automorphism
// of the dominating surface; throws kPrecondition otherwise.
VertexIsometry ball_action(const Ball& b, const ProjMap& f);

struct MuResult {
  std::optional<int> value;
  std::vector<int> counts;  // Bs(f^n), n = 1..N
  std::string method;       // "slope", "fixed-vertex" or empty
  std::optional<MarkedSurfaceVertex> fixed_vertex;
  std::string note;
};
MuResult mu(const ProjMap& f, int n, int degree_cap = kDefaultDegreeCap,
            int height_cap = kDefaultHeightCap);

enum class OrbitStatus { kPersists, kAbsorbed, kDegreeCap };

// Backward orbit of a contracted curve: trajectory[k] is the curve
// f^-k(seed) while it stays a curve.
struct HypersurfaceOrbit {
  Poly seed;
  std::vector<Poly> trajectory;
  OrbitStatus status = OrbitStatus::kPersists;
  int absorbed_at = 0;  // step at which f^-1 contracts the curve, when absorbed
};

struct NuResult {
  std::optional<int> value;
  std::vector<int> counts;  // |Exc(f^n)|, n = 1..N, from orbit tracking
  std::vector<HypersurfaceOrbit> orbits;
  std::vector<std::pair<int, int>> direct;  // (n, count by factoring the Jacobian of f^n)
  std::string note;
};
NuResult nu1(const ProjMap& f, int n, int degree_cap = kDefaultDegreeCap);

enum class DegreeClass { kBounded, kLinear, kQuadratic, kExponential, kUndecided };
const char* degree_class_name(DegreeClass c);
// degrees[k] = deg f^(k+1).
DegreeClass degree_growth_class(const std::vector<int>& degrees);

enum class Isometry { kElliptic, kParabolic, kLoxodromic, kUndecided };
const char* isometry_name(Isometry i);

struct InvariantsReport {
  std::string id;
  int iterations = 0;
  std::vector<int> degrees;
  bool degree_capped = false;
  DegreeClass degree_class = DegreeClass::kUndecided;
  std::pair<int, int> lambda_estimate{0, 0};  // (deg f^N, N)
  MuResult mu;
  NuResult nu_f, nu_finv;
  Isometry hyperbolic = Isometry::kUndecided;
  Isometry blowup = Isometry::kUndecided;
  Isometry blowup0 = Isometry::kUndecided;
  std::optional<int> table_row;  // 1-7
  std::vector<std::string> notes;
};
InvariantsReport classify_map(const std::string& id, const ProjMap& f, int n,
                                 int degree_cap = kDefaultDegreeCap,
                                 int height_cap = kDefaultHeightCap);
nlohmann::json report_to_json(const InvariantsReport& r);

struct DegreeBoundReport {
  bool witness = false;  // nu^1(f) > 0 or nu^1(f^-1) > 0
  bool holds = true;
  std::vector<int> degrees;
  std::vector<int> exc_counts;
  int dim = 2;
  std::string note;
};
DegreeBoundReport check_degree_bound(const ProjMap& f, int n, int degree_cap = kDefaultDegreeCap);
nlohmann::json bound_to_json(const DegreeBoundReport& r);

}  // namespace cremona
