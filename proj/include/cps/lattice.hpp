#pragma once

#include <optional>
#include <vector>

#include "cps/linalg.hpp"

namespace cps {

using IntVec = std::vector<Integer>;
using IntMatrix = std::vector<IntVec>;  // row-major

// Subgroup of Z^k given by a basis in row-style Hermite normal form.
struct IntegerLattice {
  size_t ambient = 0;
  IntMatrix basis;

  size_t rank() const { return basis.size(); }
  bool contains(const IntVec& v) const;
  static IntegerLattice from_generators(size_t ambient, const IntMatrix& gens);
  bool operator==(const IntegerLattice&) const = default;
};

struct AffineCoset {
  IntVec x0;
  IntegerLattice lattice;
};

// Row-style Hermite normal form: zero rows dropped, pivots positive,
// entries above a pivot reduced into [0, pivot).
IntMatrix hnf(const IntMatrix& m);

IntegerLattice integer_kernel(const FieldMatrix& m);
std::optional<AffineCoset> affine_integer_solutions(const FieldMatrix& m, const Vec& b);
IntegerLattice complement_subgroup(const IntegerLattice& l);

// Rational rows equivalent to the field rows (one field equation becomes
// degree-many rational equations), denominators cleared.
IntMatrix expand_rows(const FieldMatrix& m, const Vec* rhs, IntVec* rhs_out);

Integer abs_determinant(const IntMatrix& square);

}  // namespace cps
