#include <doctest.h>

#include "cps/builtins.hpp"
#include "cps/conditions.hpp"
#include "cps/enumerate.hpp"
#include "cps/partition.hpp"
#include "cps/stabilizer.hpp"

using namespace cps;

namespace {

const Rational kSearch(4);

// Triangle lattice with a window edge along (1, theta^2); no lattice
// direction is parallel to that edge.
Scheme skew_window_scheme() {
  auto tri = builtin_scheme("triangle");
  FieldReal t = FieldReal::generator(tri.field());
  auto W = ConvexPolytope::hull(2, {{FieldReal(0), FieldReal(0)}, {FieldReal(1), FieldReal(0)}, {FieldReal(1), t * t}});
  return Scheme::make("skew", tri.field(), 3, 1, tri.G(), tri.phys_basis(), tri.int_basis(), W, tri.window_shift());
}

}  // namespace

TEST_CASE("triangle: almost canonical but neither quasicanonical nor Boolean") {
  auto s = builtin_scheme("triangle");
  const Vec& shift = s.window_shift();

  auto ac = almost_canonical_check(s, kSearch);
  CHECK(ac.status == ConditionStatus::proven);
  CHECK(ac.certificate.size() == 3);

  auto qc = quasicanonical_check(s, kSearch);
  REQUIRE(qc.status == ConditionStatus::disproven);
  CHECK(qc.obstruction == "uncovered-cone");
  REQUIRE(qc.witness);
  REQUIRE(qc.witness_facet);
  // the witness is the corner (1, 0) of the window on the horizontal facet line
  CHECK(facet_hyperplane(s, *qc.witness_facet).normal == Vec{FieldReal(0), FieldReal(1)});
  CHECK(*qc.witness == Vec{FieldReal(1) + shift[0], shift[1]});
  REQUIRE(qc.uncovered_point);
  Vec u = *qc.uncovered_point - shift;
  CHECK(u[1].sign() > 0);
  CHECK(u[0] < FieldReal(1));
  CHECK(u[0] + u[1] > FieldReal(1));

  auto bc = boolean_check(s, kSearch);
  CHECK(bc.status == ConditionStatus::disproven);
  CHECK(bc.obstruction == "no-opposite-face");
}

TEST_CASE("quasicanonical positives") {
  for (auto nm : {"fibonacci", "cubic-3-1", "ab4", "square-4-2"}) {
    auto s = builtin_scheme(nm);
    auto qc = quasicanonical_check(s, kSearch);
    CHECK_MESSAGE(qc.status == ConditionStatus::proven, nm);
    CHECK(qc.certificate.size() == s.effective_window().halfspaces().size());
    for (auto& hd : all_stabilizers(s)) CHECK(hd.beta == s.n() - 1);
  }
  CHECK(boolean_check(builtin_scheme("fibonacci"), kSearch).status == ConditionStatus::proven);
  CHECK(almost_canonical_check(builtin_scheme("cubic-3-1"), kSearch).status == ConditionStatus::proven);
}

TEST_CASE("Boolean search is bounded by the radius") {
  auto s = builtin_scheme("square-4-2");
  auto small = boolean_check(s, Rational(1));
  CHECK(small.status == ConditionStatus::unknown);
  CHECK(small.uncovered_point.has_value());
  CHECK(small.translates.empty());
}

TEST_CASE("span deficiency disproves both facet conditions") {
  auto s = skew_window_scheme();
  bool deficient = false;
  for (auto& hd : all_stabilizers(s))
    if (hd.beta < s.n() - 1) deficient = true;
  REQUIRE(deficient);
  auto ac = almost_canonical_check(s, kSearch);
  CHECK(ac.status == ConditionStatus::disproven);
  CHECK(ac.obstruction == "stabilizer-span");
  auto qc = quasicanonical_check(s, kSearch);
  CHECK(qc.status == ConditionStatus::disproven);
  CHECK(qc.obstruction == "stabilizer-rank");
  CHECK(verify_verdict(s, qc));
}

TEST_CASE("verdicts re-verify and are mutually consistent") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto ac = almost_canonical_check(s, kSearch);
    auto qc = quasicanonical_check(s, kSearch);
    auto bc = boolean_check(s, kSearch);
    CHECK_MESSAGE(verify_verdict(s, ac), nm);
    CHECK_MESSAGE(verify_verdict(s, qc), nm);
    CHECK_MESSAGE(verify_verdict(s, bc), nm);
    if (bc.status == ConditionStatus::proven) CHECK_MESSAGE(qc.status != ConditionStatus::disproven, nm);
    if (qc.status == ConditionStatus::proven)
      for (auto& hd : all_stabilizers(s)) CHECK(hd.beta == s.n() - 1);
  }
}

TEST_CASE("tampered certificates fail verification") {
  auto s = builtin_scheme("cubic-3-1");
  auto qc = quasicanonical_check(s, kSearch);
  REQUIRE(qc.status == ConditionStatus::proven);
  auto bad = qc;
  bool dropped = false;
  for (auto& cert : bad.certificate)
    for (auto& lc : cert.covers)
      if (!dropped && lc.translates.size() > 1) {
        lc.translates.pop_back();
        dropped = true;
      }
  REQUIRE(dropped);
  CHECK_FALSE(verify_verdict(s, bad));

  auto fib = builtin_scheme("fibonacci");
  auto bc = boolean_check(fib, kSearch);
  REQUIRE(bc.status == ConditionStatus::proven);
  bc.translates.resize(1);
  CHECK_FALSE(verify_verdict(fib, bc));
}

TEST_CASE("triangle refinement failure around (theta, theta^2)") {
  auto s = builtin_scheme("triangle");
  auto demo = refinement_demo(s, {Rational(10), Rational(20)});
  REQUIRE(demo.failure_found);
  REQUIRE(demo.vertex);
  FieldReal t = FieldReal::generator(s.field());
  CHECK(*demo.vertex == Vec{t + s.window_shift()[0], t * t + s.window_shift()[1]});
  REQUIRE(demo.radii.size() == 2);
  CHECK(demo.radii[1].eps <= demo.radii[0].eps);
  auto cuts = cut_regions(s, demo.c, CutVariant::box);
  for (auto& dr : demo.radii) {
    REQUIRE(dr.points.size() == 3);
    std::vector<std::vector<bool>> sigs;
    auto slab = enum_slab(s, dr.R);
    std::vector<size_t> region_of;
    for (auto& p : dr.points) {
      CHECK(s.effective_window().contains_interior(p));
      std::vector<bool> sig;
      for (auto& g : slab) sig.push_back(in_open_translate(s, p, s.star(g)));
      sigs.push_back(sig);
      size_t found = cuts.regions.size();
      for (size_t i = 0; i < cuts.regions.size(); ++i)
        if (cuts.regions[i].poly.contains_interior(p)) found = i;
      CHECK(found < cuts.regions.size());
      region_of.push_back(found);
    }
    CHECK(sigs[0] == sigs[1]);
    CHECK(sigs[1] == sigs[2]);
    CHECK(region_of[0] != region_of[1]);
    CHECK(region_of[1] != region_of[2]);
    CHECK(region_of[0] != region_of[2]);
  }
}

TEST_CASE("no refinement failure for the Fibonacci chain") {
  auto demo = refinement_demo(builtin_scheme("fibonacci"), {Rational(10), Rational(20)});
  CHECK_FALSE(demo.failure_found);
  CHECK_FALSE(demo.vertex.has_value());
}
