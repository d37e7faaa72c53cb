#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cps/arrangement.hpp"
#include "cps/partition.hpp"
#include "cps/stabilizer.hpp"

namespace cps {

struct SeriesRow {
  Rational r;
  size_t p = 0;        // p(r) = #A(r)
  size_t cuts = 0;     // #C(r)
  size_t cuts_slab = 0;  // #C'(r)
  std::optional<size_t> bruteforce;
};

struct ComplexityReport {
  std::vector<HyperplaneData> hyperplanes;
  std::vector<DirectionClass> classes;
  std::vector<Flag> flags;
  int alpha = 0;
  int alpha_prime = 0;
  std::vector<SeriesRow> series;
  std::optional<double> slope_fit;
  bool aperiodic = false;
  bool bounds_hold = true;  // d <= alpha' <= d(k-d) when aperiodic, alpha' <= alpha
};

// Throws std::invalid_argument when there are no flags.
int alpha(const Scheme& s);
int alpha_prime(const Scheme& s);

ComplexityReport exponent_report(const Scheme& s);

// p(r), #C(r), #C'(r): arrangement counter for n <= 2, region splitting otherwise.
SeriesRow count_row(const Scheme& s, const Rational& r, bool with_box = true);

// Least-squares slope of log(count) against log(r).  Throws std::invalid_argument
// for fewer than three points or nonpositive values.
double slope_fit(const std::vector<std::pair<double, double>>& series);

// N(H, B, r): distinct translates H + g_int, g in B(r), meeting B.
size_t hyperplane_hits(const Scheme& s, const AffineHyperplane& H, const ConvexPolytope& B, const Rational& r);

// Distinct points of the region where n cuts with independent normals meet.
size_t arrangement_vertices(const std::vector<AffineHyperplane>& cuts, const ConvexPolytope& region);

// Mean spacing of model set points, (covolume / vol W)^(1/d).
double tile_scale(const Scheme& s);

// Distinct r-patches, up to translation, among model set points y with
// |y_phys| <= scan_radius - r, read off the point set itself.
std::vector<size_t> bruteforce_patch_counts(const Scheme& s, const std::vector<Rational>& radii,
                                            const Rational& scan_radius);

}  // namespace cps
