#include "cremona/error.hpp"
#include "cremona/resolve.hpp"

namespace cremona {

// Along the curve the image point is constant iff F is parallel to its
// derivative in every direction tangent to the affine cone of the curve.
// Those directions are spanned by grad(q) x e_k; the radial direction is
// automatic by Euler's formula.
bool contracts_curve(const ProjMap& f, const Poly& q) {
  if (f.dim() != 2) throw Error(ErrorCode::kPrecondition, "contraction test needs a map of the plane");
  if (q.is_constant()) throw Error(ErrorCode::kPrecondition, "curve equation is constant");
  const PolyTuple& F = f.coords();
  const Poly g[3] = {q.derivative(0), q.derivative(1), q.derivative(2)};
  const Poly zero(q.vars());
  Poly dF[3][3];
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) dF[i][j] = F[i].derivative(j);
  }
  for (int k = 0; k < 3; ++k) {
    Poly v[3];
    for (int j = 0; j < 3; ++j) v[j] = zero;
    // grad(q) x e_k
    const int a = (k + 1) % 3, b = (k + 2) % 3;
    v[a] = g[b];
    v[b] = -g[a];
    Poly w[3];
    for (int i = 0; i < 3; ++i) {
      w[i] = zero;
      for (int j = 0; j < 3; ++j) {
        if (!v[j].is_zero()) w[i] += dF[i][j] * v[j];
      }
    }
    for (int i = 0; i < 3; ++i) {
      const int c = (i + 1) % 3, d = (i + 2) % 3;
      const Poly cross = F[c] * w[d] - F[d] * w[c];
      if (!cross.is_zero() && !divides(q, cross)) return false;
    }
  }
  return true;
}

ExcComponents exc_components(const ProjMap& f) {
  ExcComponents out;
  const Poly j = jacobian_det(f.coords());
  if (j.is_zero()) throw Error(ErrorCode::kPrecondition, "Jacobian vanishes identically: " + f.to_string());
  for (const auto& [p, e] : factor_q(j).factors) {
    if (p.is_constant()) continue;
    if (contracts_curve(f, p)) out.components.push_back({p, e});
  }
  return out;
}

}  // namespace cremona
