#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cps/scheme.hpp"

namespace cps {

enum class ConditionStatus { proven, disproven, unknown };
enum class ConditionKind { almost_canonical, quasicanonical, boolean };

const char* to_string(ConditionStatus s);
const char* to_string(ConditionKind k);

// Local covering of one side of H near z by translates W - x_int.
struct LocalCover {
  Vec z;
  FieldReal eps;  // half-width of the coordinate box about z
  int side = 1;   // +1: the window side of H (face translates), -1: the far side (opposite face)
  std::vector<LatticePoint> translates;
};

struct HyperplaneCertificate {
  size_t facet = 0;
  // Period of the fundamental domain D in H (empty when n = 1).
  std::optional<LatticePoint> period;
  // almost canonical: F + x_int, x in this list, cover D.
  std::vector<LatticePoint> face_translates;
  // quasicanonical: one entry per tested point of D.
  std::vector<LocalCover> covers;
  bool discrete = true;
};

struct ConditionVerdict {
  ConditionKind kind = ConditionKind::quasicanonical;
  ConditionStatus status = ConditionStatus::unknown;
  std::vector<HyperplaneCertificate> certificate;
  std::vector<LatticePoint> translates;  // boolean: W - x_int covering the neighbourhood
  std::optional<Vec> witness;
  std::optional<size_t> witness_facet;
  std::optional<Vec> uncovered_point;  // interior point of the uncovered local cone
  std::string obstruction;
  Rational search_radius;
  std::string detail;
};

// Coefficient bound for stabilizer searches and the radius of B(R) translates.
ConditionVerdict almost_canonical_check(const Scheme& s, const Rational& R);
ConditionVerdict quasicanonical_check(const Scheme& s, const Rational& R);
ConditionVerdict boolean_check(const Scheme& s, const Rational& R);

// Re-runs the covering tests recorded in a Proven certificate, or the
// uncovered cone of a Disproven quasicanonical verdict.
bool verify_verdict(const Scheme& s, const ConditionVerdict& v);

struct DemoRadius {
  Rational R;
  Rational eps;
  std::vector<Vec> points;  // distinct cut regions of C(c), one acceptance signature
  bool same_signature = false;
  bool distinct_regions = false;
};

struct RefinementDemo {
  bool failure_found = false;
  Rational c;
  std::optional<Vec> vertex;  // common vertex of the translates
  std::vector<Vec> directions;
  std::vector<DemoRadius> radii;
  std::string detail;
};

// Searches for a point of W where cut regions of C(c) meet but acceptance
// signatures at radius R agree, for every R in radii.  n <= 2.
RefinementDemo refinement_demo(const Scheme& s, const std::vector<Rational>& radii, int max_c = 3);

}  // namespace cps
