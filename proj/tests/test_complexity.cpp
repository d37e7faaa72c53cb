#include <doctest.h>

#include <cmath>
#include <set>

#include "cps/builtins.hpp"
#include "cps/complexity.hpp"
#include "cps/enumerate.hpp"
#include "cps/partition.hpp"

using namespace cps;

namespace {

// Independent oracle for the stabilizer: scan [-10, 10]^k for c with
// normal . star(c) = 0, using exact integral forms.
std::vector<IntVec> stabilizer_scan(const Scheme& s, const Vec& normal) {
  FieldMatrix im = s.int_map();
  Vec coef;
  for (int j = 0; j < s.k(); ++j) {
    FieldReal a;
    for (int i = 0; i < s.n(); ++i) a += normal[i] * im(i, j);
    coef.push_back(a);
  }
  IntegralForm form = IntegralForm::make(coef, FieldReal(0));
  std::vector<IntVec> out;
  const int k = s.k();
  std::vector<std::int64_t> c(k, -10);
  while (true) {
    if (form.eval(c.data()).is_zero()) {
      IntVec v;
      for (auto x : c) v.push_back(Integer((long)x));
      out.push_back(v);
    }
    int i = 0;
    while (i < k && c[i] == 10) c[i++] = -10;
    if (i == k) break;
    ++c[i];
  }
  return out;
}

int scan_beta(const Scheme& s, const std::vector<IntVec>& sols) {
  std::vector<Vec> rows;
  for (auto& v : sols) rows.push_back(s.star(LatticePoint::from_intvec(v)));
  if (rows.empty()) return 0;
  return (int)rank_over_field(FieldMatrix::from_rows(rows));
}

double inner_radius_of_difference(const Scheme& s) {
  double m = 0;
  for (auto& v : s.window_difference().vertices()) m = std::max(m, std::sqrt(norm_squared(v).to_double()));
  return m;
}

RegionPartition acceptance_partition(const Scheme& s, const AcceptanceResult& ar) {
  std::vector<std::vector<bool>> sigs(ar.partition.group_count);
  for (auto& reg : ar.partition.regions) sigs[reg.group] = reg.signature;
  return acceptance_domains(s, ar.partition.translates, sigs);
}

}  // namespace

TEST_CASE("stabilizer ranks of the builtins") {
  auto fib = builtin_scheme("fibonacci");
  for (auto& hd : all_stabilizers(fib)) {
    CHECK(hd.rk == 0);
    CHECK(hd.beta == 0);
  }
  auto tri = builtin_scheme("triangle");
  bool seen_axis = false;
  for (auto& hd : all_stabilizers(tri)) {
    CHECK(hd.rk == 1);
    CHECK(hd.beta == 1);
    if (hd.H.normal == Vec{FieldReal(0), FieldReal(1)}) {
      seen_axis = true;
      REQUIRE(hd.stab.basis.size() == 1);
      CHECK(hd.stab.basis[0] == IntVec{1, 0, 0});
    }
  }
  CHECK(seen_axis);
  for (auto& hd : all_stabilizers(builtin_scheme("ab4"))) {
    CHECK(hd.rk == 2);
    CHECK(hd.beta == 1);
  }
  CHECK_THROWS_AS(stabilizer(tri, AffineHyperplane::make({FieldReal(1), FieldReal(0)}, FieldReal(Rational(1, 2)))),
                  std::invalid_argument);
}

TEST_CASE("stabilizers agree with a coefficient-box scan") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    for (auto& dc : direction_classes(s)) {
      auto sols = stabilizer_scan(s, dc.normal);
      IntegerLattice st = stabilizer(s, facet_hyperplane(s, dc.facets[0])).stab;
      for (auto& v : sols) CHECK_MESSAGE(st.contains(v), nm);
      IntegerLattice scanned = IntegerLattice::from_generators(s.k(), sols);
      CHECK_MESSAGE(scanned == st, nm);
      CHECK_MESSAGE(dc.rk == (int)scanned.rank(), nm);
      CHECK_MESSAGE(dc.beta == scan_beta(s, sols), nm);
    }
  }
}

TEST_CASE("flags") {
  CHECK(flags(builtin_scheme("fibonacci")).size() == 1);
  auto tri = flags(builtin_scheme("triangle"));
  CHECK(tri.size() == 3);
  for (auto& f : tri) {
    CHECK(f.alpha_f == 2);
    CHECK(f.alpha_prime_f == 2);
  }
  // three planes through a common line in 3-space
  std::vector<Vec> planes{{FieldReal(1), FieldReal(0), FieldReal(0)},
                          {FieldReal(0), FieldReal(1), FieldReal(0)},
                          {FieldReal(1), FieldReal(1), FieldReal(0)}};
  CHECK(flags_of_normals(planes, 3).empty());
  planes.push_back({FieldReal(0), FieldReal(0), FieldReal(1)});
  CHECK(flags_of_normals(planes, 3).size() == 3);
  CHECK(flags_of_normals(planes, 0).empty());
}

TEST_CASE("exponents") {
  struct Case {
    const char* name;
    int a, ap;
  };
  for (auto c : {Case{"fibonacci", 1, 1}, Case{"triangle", 2, 2}, Case{"ab4", 2, 2}}) {
    auto s = builtin_scheme(c.name);
    CHECK_MESSAGE(alpha(s) == c.a, c.name);
    CHECK_MESSAGE(alpha_prime(s) == c.ap, c.name);
  }
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto rep = exponent_report(s);
    CHECK(rep.aperiodic);
    CHECK_MESSAGE(rep.bounds_hold, nm);
    CHECK(rep.alpha_prime >= s.d());
    CHECK(rep.alpha_prime <= s.d() * s.n());
    CHECK(rep.alpha_prime <= rep.alpha);
    // maximum over flags recomputed from the scanned stabilizer ranks
    std::vector<int> rk;
    std::vector<Vec> normals;
    for (auto& dc : rep.classes) {
      rk.push_back((int)IntegerLattice::from_generators(s.k(), stabilizer_scan(s, dc.normal)).rank());
      normals.push_back(dc.normal);
    }
    int best = -1;
    for (auto& f : flags_of_normals(normals, s.n())) {
      int a = 0;
      for (size_t i : f) a += s.k() - rk[i] - 1;
      best = std::max(best, a);
    }
    CHECK_MESSAGE(best == rep.alpha, nm);
  }
}

TEST_CASE("parallel facets share stabilizer data") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto hds = all_stabilizers(s);
    for (auto& a : hds)
      for (auto& b : hds)
        if (a.direction_class == b.direction_class) {
          CHECK(a.rk == b.rk);
          CHECK(a.beta == b.beta);
          CHECK(a.stab == b.stab);
        }
  }
}

TEST_CASE("cut regions at small radius") {
  auto tri = builtin_scheme("triangle");
  CHECK(cut_regions(tri, Rational(0), CutVariant::box).regions.size() == 1);
  CHECK(acceptance_count(tri, Rational(0)).count == 1);
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    size_t prev = 0;
    for (int r = 0; r <= 6; ++r) {
      auto row = count_row(s, Rational(r));
      CHECK_MESSAGE(row.cuts >= prev, nm << " r=" << r);
      prev = row.cuts;
    }
  }
}

TEST_CASE("fibonacci cut count equals interior cut points plus one") {
  auto s = builtin_scheme("fibonacci");
  const auto& W = s.effective_window();
  std::set<Vec> pts;
  for (auto& g : enum_box(s, Rational(10)))
    for (auto& v : W.vertices()) {
      Vec p = v + s.star(g);
      if (W.contains_interior(p)) pts.insert(p);
    }
  auto row = count_row(s, Rational(10));
  CHECK(row.cuts == pts.size() + 1);
  CHECK(cut_regions(s, Rational(10), CutVariant::box).regions.size() == pts.size() + 1);
}

TEST_CASE("fibonacci acceptance count matches patches read off the point set") {
  auto s = builtin_scheme("fibonacci");
  std::vector<Rational> radii{1, 2, 3, 4, 5};
  auto brute = bruteforce_patch_counts(s, radii, Rational(500));
  for (size_t i = 0; i < radii.size(); ++i) {
    CHECK(brute[i] == acceptance_count(s, radii[i]).count);
    CHECK(brute[i] == count_row(s, radii[i]).p);
  }
}

TEST_CASE("arrangement counter agrees with region splitting") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    for (int r = 1; r <= 3; ++r) {
      auto row = count_row(s, Rational(r));
      CHECK_MESSAGE(row.cuts == cut_regions(s, Rational(r), CutVariant::box).regions.size(), nm << " r=" << r);
      CHECK_MESSAGE(row.cuts_slab == cut_regions(s, Rational(r), CutVariant::slab).regions.size(), nm << " r=" << r);
      CHECK_MESSAGE(row.p == acceptance_count(s, Rational(r)).count, nm << " r=" << r);
    }
  }
}

TEST_CASE("acceptance count bounded by cut count past the difference radius") {
  for (auto nm : {"fibonacci", "cubic-3-1", "ab4", "square-4-2"}) {
    auto s = builtin_scheme(nm);
    int r0 = (int)std::ceil(inner_radius_of_difference(s));
    for (int r = r0; r <= r0 + 2; ++r) {
      auto row = count_row(s, Rational(r));
      CHECK_MESSAGE(row.p <= row.cuts, nm << " r=" << r);
    }
  }
}

TEST_CASE("refinement chain and volume conservation") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    FieldReal vol = volume(s.effective_window());
    int r0 = (int)std::ceil(inner_radius_of_difference(s));
    for (int r : {1, 2, r0}) {
      auto C = cut_regions(s, Rational(r), CutVariant::box);
      auto Cp = cut_regions(s, Rational(r), CutVariant::slab);
      auto ar = acceptance_count(s, Rational(r));
      auto A = acceptance_partition(s, ar);
      CHECK(refines(C, C));
      CHECK_MESSAGE(refines(Cp, A), nm << " r=" << r);
      if (r >= r0) CHECK_MESSAGE(refines(C, Cp), nm << " r=" << r);
      CHECK(A.group_count == ar.count);
      CHECK(partition_volume(C) == vol);
      CHECK(partition_volume(Cp) == vol);
      CHECK(partition_volume(ar.partition) == vol);
      CHECK_MESSAGE(partition_volume(A) == vol, nm << " r=" << r);
    }
  }
}

TEST_CASE("acceptance signatures match lifted patches") {
  for (auto nm : {"fibonacci", "triangle", "ab4"}) {
    auto s = builtin_scheme(nm);
    Rational r(3);
    auto ar = acceptance_count(s, r);
    std::set<std::vector<bool>> sigs;
    for (auto& reg : ar.partition.regions) sigs.insert(reg.signature);
    CHECK(sigs.size() == ar.count);
    const auto& slab = ar.partition.translates;
    auto pts = generate_points(s, Rational(12));
    size_t n = 0;
    for (auto& y : pts) {
      if (++n > 150) break;
      Patch p = patch(s, y, r, slab);
      std::set<LatticePoint> in(p.p_in.begin(), p.p_in.end());
      std::vector<bool> sig;
      Vec ys = s.star(y);
      for (auto& g : slab) {
        bool b = in_open_translate(s, ys, s.star(g));
        CHECK(b == (in.count(g) == 1));
        sig.push_back(b);
      }
      CHECK_MESSAGE(sigs.count(sig) == 1, nm);
    }
  }
}

TEST_CASE("hyperplane hits") {
  for (auto nm : {"fibonacci", "triangle"}) {
    auto s = builtin_scheme(nm);
    const auto& W = s.effective_window();
    for (auto& hd : all_stabilizers(s)) {
      CHECK(hyperplane_hits(s, hd.H, W, Rational(0)) == 1);
      size_t prev = 0;
      for (int r = 0; r <= 8; ++r) {
        size_t h = hyperplane_hits(s, hd.H, W, Rational(r));
        CHECK(h >= prev);
        prev = h;
      }
      std::vector<std::pair<double, double>> series;
      for (int r : {10, 20, 40, 80}) series.push_back({double(r), double(hyperplane_hits(s, hd.H, W, Rational(r)))});
      double expected = s.k() - hd.rk - 1;
      CHECK_MESSAGE(std::fabs(slope_fit(series) - expected) <= 0.2, nm);
    }
  }
  auto tri = builtin_scheme("triangle");
  Vec lo{FieldReal(5), FieldReal(5)}, hi{FieldReal(6), FieldReal(6)};
  auto far = ConvexPolytope::box(lo, hi);
  CHECK(hyperplane_hits(tri, facet_hyperplane(tri, 0), far, Rational(0)) == 0);
}

TEST_CASE("arrangement vertices of an axis grid") {
  const int a = 3, b = 4;
  std::vector<AffineHyperplane> cuts;
  for (int i = 0; i < a; ++i) cuts.push_back(AffineHyperplane::make({FieldReal(1), FieldReal(0)}, FieldReal(i)));
  for (int j = 0; j < b; ++j) cuts.push_back(AffineHyperplane::make({FieldReal(0), FieldReal(1)}, FieldReal(2 * j - 3)));
  auto box = ConvexPolytope::box({FieldReal(-10), FieldReal(-10)}, {FieldReal(10), FieldReal(10)});
  CHECK(arrangement_vertices(cuts, box) == (size_t)(a * b));
  CHECK(arrangement_vertices({}, box) == 0);
  std::vector<ConvexPolytope> cells{box};
  for (auto& h : cuts) {
    std::vector<ConvexPolytope> next;
    for (auto& c : cells) {
      auto [p, q] = split(c, h);
      if (p.full_dimensional()) next.push_back(p);
      if (q.full_dimensional()) next.push_back(q);
    }
    cells = std::move(next);
  }
  CHECK(cells.size() == (size_t)((a + 1) * (b + 1)));
}

TEST_CASE("slope fit") {
  std::vector<std::pair<double, double>> sq, cst;
  for (double r : {2.0, 3.0, 5.0, 8.0}) {
    sq.push_back({r, r * r});
    cst.push_back({r, 7.0});
  }
  CHECK(slope_fit(sq) == doctest::Approx(2.0));
  CHECK(slope_fit(cst) == doctest::Approx(0.0));
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {2.0, 2.0}}), std::invalid_argument);
  CHECK_THROWS_AS(slope_fit({{1.0, 1.0}, {2.0, 0.0}, {3.0, 1.0}}), std::invalid_argument);

  auto s = builtin_scheme("fibonacci");
  std::vector<std::pair<double, double>> series;
  for (int r : {10, 20, 40, 80}) series.push_back({double(r), double(count_row(s, Rational(r)).p)});
  double slope = slope_fit(series);
  CHECK(slope >= 0.85);
  CHECK(slope <= 1.15);
}
