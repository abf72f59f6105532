#pragma once

// Map specifications and the command-line front end.
//
//   P2:[p0 : p1 : p2]         homogeneous tuple (Pd:[...] with d + 1 entries)
//   A2:(e1, e2)               affine pair; entries are polynomials or num/den
//   MON:d:[[row], ...]        d x d integer matrix of a monomial map of P^d
//   sigma, henon, ...         bundled maps

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "cremona/birmap.hpp"

namespace cremona {

struct BuiltinRef {
  std::string name;
  friend bool operator==(const BuiltinRef&, const BuiltinRef&) = default;
};

struct MapSpec {
  std::variant<PolyTuple, AffineMap2, MonomialMap, BuiltinRef> form;
};

bool operator==(const MapSpec& a, const MapSpec& b);

// Throws kSyntax (with the offset of the failure), kArity, kZeroInput,
// kNotHomogeneous or kVariableMismatch.
MapSpec parse_map_spec(const std::string& text);
std::string map_spec_to_string(const MapSpec& s);
// The map with an inverse attached when one of the built-in strategies
// finds it; the bare map otherwise.
ProjMap map_from_spec(const MapSpec& s);

// Runs the command line; returns the process exit code (0 on success, 1 for
// usage errors, the ErrorCode value for module errors).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cremona
