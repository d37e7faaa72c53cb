#pragma once

#include <optional>
#include <vector>

#include "cps/scheme.hpp"

namespace cps {

struct HyperplaneData {
  AffineHyperplane H;
  size_t facet = 0;            // index into effective_window().halfspaces()
  size_t direction_class = 0;  // index of V(H) among distinct facet directions
  std::vector<Vec> V_H;        // basis of the parallel linear subspace
  IntegerLattice stab;         // {c : star(c) . normal = 0}
  int rk = 0;
  int beta = 0;  // dimension of the real span of stab's internal projections
  ConvexPolytope face;
  std::optional<AffineHyperplane> opposite;
};

// Distinct facet directions V(H); facets with parallel hyperplanes share one.
struct DirectionClass {
  Vec normal;                  // canonical: first nonzero coordinate 1
  std::vector<size_t> facets;  // indices into effective_window().halfspaces()
  int rk = 0;
  int beta = 0;
};

struct Flag {
  std::vector<size_t> members;  // direction class indices
  int alpha_f = 0;
  int alpha_prime_f = 0;
};

// Hyperplane spanned by facet i of the effective window.
AffineHyperplane facet_hyperplane(const Scheme& s, size_t i);

// Throws std::invalid_argument when H is not a facet hyperplane of W.
HyperplaneData stabilizer(const Scheme& s, const AffineHyperplane& H);
std::vector<HyperplaneData> all_stabilizers(const Scheme& s);
std::vector<DirectionClass> direction_classes(const Scheme& s);

// Size-n subsets of the given normals with trivial common kernel.
std::vector<std::vector<size_t>> flags_of_normals(const std::vector<Vec>& normals, size_t n);
std::vector<Flag> flags(const Scheme& s);
std::vector<Flag> flags(const Scheme& s, const std::vector<DirectionClass>& classes);

}  // namespace cps
