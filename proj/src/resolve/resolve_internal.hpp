#pragma once

#include "cremona/resolve.hpp"

namespace cremona {

// {u, v}
const std::vector<std::string>& local_vars();

namespace detail {

Poly shift(const Poly& p, const Rational& a, const Rational& b);  // p(u + a, v + b)
Poly chart_a(const Poly& p);                                      // p(u, u v)
Poly chart_b(const Poly& p);                                      // p(u v, v)
Poly divide_power(const Poly& p, std::size_t var, int k);
// f in the local coordinates of the root chart at the proper point.
Poly dehomogenize_at(const Poly& f, const ProjPoint& root);
// Strict transform of a local curve equation through one blow-up step.
Poly strict_step(const Poly& g, const BlowStep& s);
std::vector<std::pair<int, int>> curves_through(const BubblePoint& q);

}  // namespace detail
}  // namespace cremona
