#pragma once

#include <functional>
#include <optional>

#include "cps/scheme.hpp"

namespace cps {

// Internal-space constraint for lattice enumeration.
struct InternalRegion {
  const ConvexPolytope* polytope = nullptr;  // closed polytope, or
  std::optional<Rational> radius;            // closed Euclidean ball about 0
};

// Calls f(c) for every lattice point with |c_phys| <= phys_radius and c_int in
// the region, in lexicographic order of the outer coordinates.
void enumerate_lattice(const Scheme& s, const Rational& phys_radius, const InternalRegion& region,
                       const std::function<void(const std::int64_t*)>& f);

// Elements x0 + sum t_i basis_i whose coordinate vector (coord_map applied)
// lies in the box [lo_j, hi_j] for every total coordinate j.
void enumerate_coset(const Scheme& s, const IntVec& x0, const IntMatrix& basis,
                     const std::vector<std::pair<Rational, Rational>>& box,
                     const std::function<void(const LatticePoint&)>& f);

// Rational bounds [lo, hi] with lo <= x <= hi.
std::pair<Rational, Rational> rational_bounds(const FieldReal& x);

}  // namespace cps
