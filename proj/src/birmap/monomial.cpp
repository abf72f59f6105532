#include <algorithm>

#include "cremona/birmap.hpp"
#include "cremona/error.hpp"

namespace cremona {
namespace {

void check_square(const IntMatrix& m) {
  if (m.empty()) throw Error(ErrorCode::kArity, "empty matrix");
  for (const auto& row : m) {
    if (row.size() != m.size()) throw Error(ErrorCode::kArity, "matrix is not square");
  }
}

long long checked(const Integer& v) {
  if (!v.fits_slong_p()) throw Error(ErrorCode::kDegreeCap, "matrix entry overflow");
  return v.get_si();
}

}  // namespace

long long int_determinant(const IntMatrix& m) {
  check_square(m);
  const std::size_t n = m.size();
  std::vector<std::vector<Integer>> a(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  }
  // Fraction-free elimination.
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k][k] == 0) {
      std::size_t r = k + 1;
      while (r < n && a[r][k] == 0) ++r;
      if (r == n) return 0;
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
      }
    }
    prev = a[k][k];
  }
  return sign * checked(a[n - 1][n - 1]);
}

IntMatrix int_matrix_mul(const IntMatrix& a, const IntMatrix& b) {
  const std::size_t n = a.size();
  IntMatrix c(n, std::vector<long long>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t j = 0; j < n; ++j) {
        long long prod = 0;
        if (__builtin_mul_overflow(a[i][k], b[k][j], &prod) ||
            __builtin_add_overflow(c[i][j], prod, &c[i][j])) {
          throw Error(ErrorCode::kDegreeCap, "matrix entry overflow");
        }
      }
    }
  }
  return c;
}

IntMatrix int_matrix_pow(const IntMatrix& m, int n) {
  check_square(m);
  if (n < 0) return int_matrix_pow(int_matrix_inverse(m), -n);
  IntMatrix r(m.size(), std::vector<long long>(m.size(), 0));
  for (std::size_t i = 0; i < m.size(); ++i) r[i][i] = 1;
  for (int k = 0; k < n; ++k) r = int_matrix_mul(r, m);
  return r;
}

IntMatrix int_matrix_inverse(const IntMatrix& m) {
  check_square(m);
  const long long det = int_determinant(m);
  if (det != 1 && det != -1) {
    throw Error(ErrorCode::kPrecondition,
                "matrix is not unimodular (determinant " + std::to_string(det) + ")");
  }
  const std::size_t n = m.size();
  std::vector<std::vector<Rational>> a(n, std::vector<Rational>(n));
  std::vector<std::vector<Rational>> inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    inv[i][i] = 1;
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long>(m[i][j]);
  }
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (a[piv][c] == 0) ++piv;
    std::swap(a[piv], a[c]);
    std::swap(inv[piv], inv[c]);
    const Rational s = 1 / a[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      a[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational f = a[r][c];
      for (std::size_t j = 0; j < n; ++j) {
        a[r][j] -= f * a[c][j];
        inv[r][j] -= f * inv[c][j];
      }
    }
  }
  IntMatrix out(n, std::vector<long long>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out[i][j] = checked(inv[i][j].get_num());
  }
  return out;
}

namespace {

// Exponent rows in the homogeneous variables, shifted to be nonnegative.
std::vector<std::vector<long long>> homogeneous_exponents(const IntMatrix& m) {
  const std::size_t d = m.size();
  std::vector<std::vector<long long>> e(d + 1, std::vector<long long>(d + 1, 0));
  for (std::size_t i = 0; i < d; ++i) {
    long long row_sum = 0;
    for (std::size_t j = 0; j < d; ++j) {
      e[i][j] = m[i][j];
      row_sum += m[i][j];
    }
    e[i][d] = -row_sum;
  }
  for (std::size_t j = 0; j <= d; ++j) {
    long long lo = 0;
    for (std::size_t i = 0; i <= d; ++i) lo = std::min(lo, e[i][j]);
    for (std::size_t i = 0; i <= d; ++i) e[i][j] -= lo;
  }
  return e;
}

}  // namespace

int monomial_degree(const IntMatrix& m) {
  check_square(m);
  const std::size_t d = m.size();
  long long deg = 0;
  // Column minima over the rows and the zero row, for the torus coordinates
  // and for the homogenizing coordinate.
  for (std::size_t j = 0; j < d; ++j) {
    long long lo = 0;
    for (std::size_t i = 0; i < d; ++i) lo = std::min(lo, m[i][j]);
    deg -= lo;
  }
  long long hi = 0;
  for (std::size_t i = 0; i < d; ++i) {
    long long s = 0;
    for (std::size_t j = 0; j < d; ++j) s += m[i][j];
    hi = std::max(hi, s);
  }
  return static_cast<int>(deg + hi);
}

ProjMap monomial_map(const MonomialMap& mm) {
  const IntMatrix& m = mm.matrix;
  check_square(m);
  const IntMatrix inv = int_matrix_inverse(m);
  const std::size_t d = m.size();
  const auto vars = default_vars(d + 1);
  auto tuple_of = [&](const IntMatrix& a) {
    std::vector<Poly> coords;
    for (const auto& row : homogeneous_exponents(a)) {
      Exponents e(row.size());
      for (std::size_t j = 0; j < row.size(); ++j) e[j] = static_cast<std::uint32_t>(row[j]);
      coords.push_back(Poly::monomial(vars, e));
    }
    return PolyTuple(std::move(coords));
  };
  ProjMap f(tuple_of(m));
  f.attach_inverse_unchecked(ProjMap(tuple_of(inv)).coords());
  return f;
}

std::optional<IntMatrix> monomial_matrix_of(const ProjMap& f) {
  const std::size_t d = f.dim();
  for (const auto& c : f.coords().entries()) {
    if (c.size() != 1 || c.leading().coeff != 1) return std::nullopt;
  }
  const Exponents& last = f.coords()[d].leading().exps;
  IntMatrix m(d, std::vector<long long>(d));
  for (std::size_t i = 0; i < d; ++i) {
    const Exponents& e = f.coords()[i].leading().exps;
    for (std::size_t j = 0; j < d; ++j) {
      m[i][j] = static_cast<long long>(e[j]) - static_cast<long long>(last[j]);
    }
  }
  return m;
}

}  // namespace cremona
