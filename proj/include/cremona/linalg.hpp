#pragma once

// Dense exact linear algebra over Q.

#include <vector>

#include "cremona/poly.hpp"

namespace cremona {

using RatMatrix = std::vector<std::vector<Rational>>;

// Basis of {x : rows * x = 0}; every row must have ncols entries.
std::vector<std::vector<Rational>> nullspace(RatMatrix rows, std::size_t ncols);

}  // namespace cremona
