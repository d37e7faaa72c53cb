#pragma once

#include <cstdint>
#include <vector>

#include "cps/scheme.hpp"
#include "cps/stabilizer.hpp"

namespace cps {

// Translates of the window facet hyperplanes, grouped by direction class.
// Class c holds the sorted distinct offsets t of the lines normal_c . x = t
// that meet W (closed).
struct CutFamily {
  std::vector<Vec> normals;
  std::vector<std::vector<FieldReal>> values;
  std::vector<std::vector<double>> approx;
  std::vector<FieldReal> lo, hi;  // range of normal_c . x over W

  size_t line_count() const;
  // Number of offsets in class c strictly below x; *on is set when x is an offset.
  std::uint32_t rank(size_t c, const FieldReal& x, bool* on = nullptr) const;
  std::vector<std::uint32_t> ranks(const Vec& point) const;
  std::vector<AffineHyperplane> hyperplanes() const;
};

CutFamily cut_family(const Scheme& s, const std::vector<LatticePoint>& translates);

// Sorted distinct values, exact, with a floating-point prefilter.
std::vector<FieldReal> sorted_unique(std::vector<FieldReal> v);

// Rank box of the translate W - g_int: a cell with rank vector rho lies inside
// it iff lo[c] <= rho[c] <= hi[c] for every class.
struct RankBox {
  std::vector<std::int64_t> lo, hi;
  bool empty() const;
  bool contains(const std::uint32_t* rho) const;
};
RankBox rank_box(const Scheme& s, const CutFamily& fam, const LatticePoint& g);

// Cells of W minus the family's lines, as rank vectors (n <= 2 only).
std::vector<std::vector<std::uint32_t>> arrangement_cells(const Scheme& s, const CutFamily& fam);

struct ArrangementCounts {
  size_t cut_box = 0;     // #C(r)
  size_t cut_slab = 0;    // #C'(r)
  size_t acceptance = 0;  // #A(r) = p(r)
};

// Counts from the cell enumeration above; requires n <= 2.
ArrangementCounts arrangement_counts(const Scheme& s, const Rational& r, bool with_box = true);
// Number of distinct acceptance signatures among the given cells.
size_t count_signatures(const Scheme& s, const CutFamily& fam, const std::vector<LatticePoint>& slab,
                        const std::vector<std::vector<std::uint32_t>>& cells);

}  // namespace cps
