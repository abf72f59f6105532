#include <algorithm>

#include "cremona/birmap.hpp"
#include "cremona/error.hpp"

namespace cremona {

ProjMap::ProjMap(PolyTuple coords) {
  const std::size_t n = coords.size();
  if (n < 2) throw Error(ErrorCode::kArity, "a projective map needs at least 2 coordinates");
  if (coords.vars() != default_vars(n)) {
    throw Error(ErrorCode::kVariableMismatch,
                "coordinates of a map on P^" + std::to_string(n - 1) +
                    " must use the variables of default_vars(" + std::to_string(n) + ")");
  }
  if (std::all_of(coords.entries().begin(), coords.entries().end(),
                  [](const Poly& p) { return p.is_zero(); })) {
    throw Error(ErrorCode::kZeroInput, "all coordinates are zero");
  }
  if (!coords.is_homogeneous()) {
    throw Error(ErrorCode::kNotHomogeneous,
                "coordinates are not homogeneous of one common degree: " + coords.to_string());
  }
  coords_ = primitive_tuple(coords);
  if (coords_.degree() < 1) {
    throw Error(ErrorCode::kPrecondition, "constant map is not dominant: " + coords.to_string());
  }
}

ProjMap ProjMap::inverse() const {
  if (!inverse_) {
    throw Error(ErrorCode::kInverseUnavailable, "no verified inverse attached to " + to_string());
  }
  ProjMap inv(*inverse_);
  inv.inverse_ = std::make_shared<const PolyTuple>(coords_);
  return inv;
}

void ProjMap::attach_inverse(const ProjMap& candidate) {
  if (candidate.dim() != dim()) {
    throw Error(ErrorCode::kCandidateRejected, "candidate inverse has the wrong dimension");
  }
  const PolyTuple a = primitive_tuple(compose_tuple(coords_, candidate.coords_));
  const PolyTuple b = primitive_tuple(compose_tuple(candidate.coords_, coords_));
  const PolyTuple id = identity_map(dim()).coords();
  if (!(a == id) || !(b == id)) {
    throw Error(ErrorCode::kCandidateRejected,
                "candidate " + candidate.to_string() + " is not an inverse of " + to_string());
  }
  inverse_ = std::make_shared<const PolyTuple>(candidate.coords_);
}

void ProjMap::attach_inverse_unchecked(const PolyTuple& inv) {
  inverse_ = std::make_shared<const PolyTuple>(inv);
}

ProjMap identity_map(std::size_t dim) {
  const auto vars = default_vars(dim + 1);
  std::vector<Poly> e;
  for (std::size_t i = 0; i <= dim; ++i) e.push_back(Poly::variable(vars, i));
  PolyTuple t(std::move(e));
  ProjMap f(t);
  f.attach_inverse_unchecked(t);
  return f;
}

bool is_identity(const ProjMap& f) { return f.coords() == identity_map(f.dim()).coords(); }

namespace {

std::vector<std::vector<Rational>> rational_inverse(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::kPrecondition, "singular matrix");
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational m = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= m * a[c][j];
        inv[r][j] -= m * inv[c][j];
      }
    }
  }
  return inv;
}

PolyTuple linear_tuple(const std::vector<std::vector<Rational>>& a) {
  const auto vars = default_vars(a.size());
  std::vector<Poly> e;
  for (const auto& row : a) {
    if (row.size() != a.size()) throw Error(ErrorCode::kArity, "linear map needs a square matrix");
    Poly p(vars);
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] != 0) p += Poly::variable(vars, j) * row[j];
    }
    e.push_back(std::move(p));
  }
  return PolyTuple(std::move(e));
}

}  // namespace

ProjMap linear_map(const std::vector<std::vector<Rational>>& a) {
  const auto inv = rational_inverse(a);
  ProjMap f(linear_tuple(a));
  f.attach_inverse_unchecked(ProjMap(linear_tuple(inv)).coords());
  return f;
}

AffineMap2 make_affine_map(Poly n1, Poly d1, Poly n2, Poly d2) {
  const std::vector<std::string> xy = {"x", "y"};
  AffineMap2 f;
  Poly* nums[2] = {&n1, &n2};
  Poly* dens[2] = {&d1, &d2};
  for (int i = 0; i < 2; ++i) {
    if (nums[i]->vars() != xy && !nums[i]->is_zero()) {
      throw Error(ErrorCode::kVariableMismatch, "affine map components must use x, y");
    }
    if (dens[i]->is_zero()) throw Error(ErrorCode::kZeroInput, "zero denominator");
    if (nums[i]->is_zero()) throw Error(ErrorCode::kZeroInput, "component is identically zero");
    const Poly g = gcd(*nums[i], *dens[i]);
    f.num[i] = *exact_div(*nums[i], g);
    f.den[i] = *exact_div(*dens[i], g);
    // Normalize the sign and scale into the numerator.
    const Rational lc = f.den[i].leading().coeff;
    f.num[i] *= Rational(1 / lc);
    f.den[i] *= Rational(1 / lc);
  }
  return f;
}

ProjMap homogenize(const AffineMap2& f) {
  const auto vars = default_vars(3);
  const std::vector<std::size_t> embed = {0, 1};
  const Poly a = (f.num[0] * f.den[1]).remap(vars, embed);
  const Poly b = (f.num[1] * f.den[0]).remap(vars, embed);
  const Poly c = (f.den[0] * f.den[1]).remap(vars, embed);
  const int d = std::max({a.total_degree(), b.total_degree(), c.total_degree()});
  auto hom = [&](const Poly& p) {
    std::vector<Term> terms;
    for (const auto& t : p.terms()) {
      Term h = t;
      h.exps[2] = static_cast<std::uint32_t>(d - static_cast<int>(t.exps[0] + t.exps[1]));
      terms.push_back(std::move(h));
    }
    return Poly::from_terms(vars, std::move(terms));
  };
  return ProjMap(PolyTuple({hom(a), hom(b), hom(c)}));
}

ProjMap compose(const ProjMap& f, const ProjMap& g) {
  if (f.dim() != g.dim()) throw Error(ErrorCode::kArity, "dimension mismatch in compose");
  ProjMap h(compose_tuple(f.coords(), g.coords()));
  if (f.has_inverse() && g.has_inverse()) {
    const PolyTuple inv = compose_tuple(g.inverse().coords(), f.inverse().coords());
    h.attach_inverse_unchecked(ProjMap(inv).coords());
  }
  return h;
}

ProjMap iterate(const ProjMap& f, int n) {
  if (n == 0) return identity_map(f.dim());
  const ProjMap base = n > 0 ? f : f.inverse();
  ProjMap acc = base;
  for (int k = 1; k < std::abs(n); ++k) acc = compose(base, acc);
  return acc;
}

ProjMap conjugate(const ProjMap& g, const ProjMap& f) {
  return compose(g, compose(f, g.inverse()));
}

IterateRun iterates(const ProjMap& f, int n, int degree_cap) {
  IterateRun run;
  if (n < 1) return run;
  if (f.degree() > degree_cap) {
    run.capped = true;
    return run;
  }
  run.iterates.push_back(f);
  for (int k = 2; k <= n; ++k) {
    const ProjMap& prev = run.iterates.back();
    // The product of degrees bounds the next degree; refuse clearly hopeless steps.
    if (static_cast<long long>(f.degree()) * prev.degree() > 2LL * degree_cap) {
      run.capped = true;
      break;
    }
    ProjMap next = compose(f, prev);
    if (next.degree() > degree_cap) {
      run.capped = true;
      break;
    }
    run.iterates.push_back(std::move(next));
  }
  return run;
}

std::vector<int> degree_sequence(const ProjMap& f, int n, int degree_cap) {
  if (n < 1) throw Error(ErrorCode::kPrecondition, "degree_sequence needs N >= 1");
  // Degrees only: skip inverse bookkeeping.
  ProjMap plain(f.coords());
  const IterateRun run = iterates(plain, n, degree_cap);
  if (run.capped) {
    throw Error(ErrorCode::kDegreeCap, "degree cap " + std::to_string(degree_cap) +
                                           " exceeded after n = " +
                                           std::to_string(run.iterates.size()));
  }
  std::vector<int> out;
  for (const auto& g : run.iterates) out.push_back(g.degree());
  return out;
}

}  // namespace cremona
