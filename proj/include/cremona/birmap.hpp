#pragma once

// Rational self-maps of projective space given by primitive homogeneous
// tuples, together with the constructions used by the dynamical layer:
// composition, iteration under a degree cap, monomial maps, inverses and
// indeterminacy points in the plane.

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

constexpr int kDefaultDegreeCap = 256;

class ProjMap {
 public:
  // Reduces coords to the primitive representative. Entries must be
  // homogeneous of one common degree >= 1 in default_vars(d + 1).
  explicit ProjMap(PolyTuple coords);

  std::size_t dim() const { return coords_.size() - 1; }
  const PolyTuple& coords() const { return coords_; }
  const std::vector<std::string>& vars() const { return coords_.vars(); }
  int degree() const { return coords_.degree(); }

  bool has_inverse() const { return inverse_ != nullptr; }
  // Throws kInverseUnavailable when no verified inverse is attached.
  ProjMap inverse() const;
  // Verifies both composites reduce to the identity, then attaches.
  // Throws kCandidateRejected otherwise.
  void attach_inverse(const ProjMap& candidate);
  // Attaches without verification; only for inverses that hold by
  // construction (products of verified inverses).
  void attach_inverse_unchecked(const PolyTuple& inv);

  std::string to_string() const { return coords_.to_string(); }
  friend bool operator==(const ProjMap& a, const ProjMap& b) { return a.coords_ == b.coords_; }

 private:
  PolyTuple coords_;
  std::shared_ptr<const PolyTuple> inverse_;
};

ProjMap identity_map(std::size_t dim);
// x_i -> sum_j a[i][j] x_j; throws kPrecondition when singular. The inverse
// is attached.
ProjMap linear_map(const std::vector<std::vector<Rational>>& a);
bool is_identity(const ProjMap& f);

// Rational-function pair on the chart z = 1 of P^2, variables {x, y}.
struct AffineMap2 {
  Poly num[2];
  Poly den[2];
};

AffineMap2 make_affine_map(Poly n1, Poly d1, Poly n2, Poly d2);
ProjMap homogenize(const AffineMap2& f);

// f o g. The inverse is attached when both inputs carry one.
ProjMap compose(const ProjMap& f, const ProjMap& g);
// f^n (n >= 1) or the inverse iterate for n < 0; n = 0 is the identity.
ProjMap iterate(const ProjMap& f, int n);
// g o f o g^-1 for g with an attached inverse.
ProjMap conjugate(const ProjMap& g, const ProjMap& f);

// Iterates f^1..f^n, stopping before an iterate would exceed the cap.
struct IterateRun {
  std::vector<ProjMap> iterates;  // iterates[k] = f^(k+1)
  bool capped = false;
};
IterateRun iterates(const ProjMap& f, int n, int degree_cap = kDefaultDegreeCap);
// Degrees of f^1..f^N; throws kDegreeCap naming the last completed n.
std::vector<int> degree_sequence(const ProjMap& f, int n, int degree_cap = kDefaultDegreeCap);

using IntMatrix = std::vector<std::vector<long long>>;

struct MonomialMap {
  IntMatrix matrix;  // component i of the torus map is prod_j t_j^matrix[i][j]
};

long long int_determinant(const IntMatrix& m);
IntMatrix int_matrix_inverse(const IntMatrix& m);  // requires det = +-1
IntMatrix int_matrix_mul(const IntMatrix& a, const IntMatrix& b);
IntMatrix int_matrix_pow(const IntMatrix& m, int n);
// Degree of the homogenized torus map read off the matrix alone.
int monomial_degree(const IntMatrix& m);
// Homogeneous primitive representative on P^d with the inverse attached.
ProjMap monomial_map(const MonomialMap& m);
// Matrix of a map whose coordinates are all monomials, if it has that form.
std::optional<IntMatrix> monomial_matrix_of(const ProjMap& f);

// Tries the built-in strategies (attached inverse, monomial, linear,
// involution, triangular back-substitution, and for plane maps of degree <= 5 a
// linear solve for G with G o f = h * id). Throws kInverseUnavailable.
ProjMap with_inverse(const ProjMap& f);
// Same but with a user-supplied candidate; throws kCandidateRejected.
ProjMap with_inverse(const ProjMap& f, const ProjMap& candidate);

// Points of P^2 normalized so that the last nonzero coordinate is 1.
using ProjPoint = std::vector<Rational>;
ProjPoint normalize_point(ProjPoint p);
std::string point_to_string(const ProjPoint& p);

struct IndeterminacyLocus {
  std::vector<ProjPoint> points;  // sorted
  bool irrational = false;        // common zeros not defined over Q were detected
};
IndeterminacyLocus indeterminacy_points(const ProjMap& f);

// Common zeros in Q^2 of polynomials in the variables ix, iy (all others
// absent). Positive-dimensional loci raise kInternal.
struct AffineZeros {
  std::vector<std::pair<Rational, Rational>> points;  // sorted
  bool irrational = false;
};
AffineZeros common_zeros_2d(const std::vector<Poly>& polys, std::size_t ix, std::size_t iy);

// Names of the bundled maps and their definitions.
std::vector<std::string> builtin_names();
std::optional<ProjMap> builtin_map(const std::string& name);

}  // namespace cremona
