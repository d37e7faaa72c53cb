#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "cps/builtins.hpp"
#include "cps/enumerate.hpp"
#include "cps/scheme.hpp"
#include "test_support.hpp"

using namespace cps;

namespace {

// Independent oracle: scan a coefficient box large enough to contain every
// lattice point with |coords| <= bound, then filter with exact arithmetic.
template <class Pred>
std::set<LatticePoint> brute(const Scheme& s, double coord_bound, Pred keep) {
  FieldMatrix Tinv = inverse(s.coord_map());
  int k = s.k();
  std::vector<std::int64_t> lim(k);
  for (int i = 0; i < k; ++i) {
    double rn = 0;
    for (int j = 0; j < k; ++j) rn += std::pow(Tinv(i, j).to_double(), 2);
    lim[i] = (std::int64_t)std::ceil(std::sqrt(rn) * coord_bound) + 1;
  }
  std::set<LatticePoint> out;
  std::vector<std::int64_t> c(k);
  for (int i = 0; i < k; ++i) c[i] = -lim[i];
  while (true) {
    LatticePoint g(c);
    if (keep(g)) out.insert(g);
    int i = 0;
    while (i < k && c[i] == lim[i]) c[i] = -lim[i], ++i;
    if (i == k) break;
    ++c[i];
  }
  return out;
}

double window_radius(const ConvexPolytope& p) {
  double m = 0;
  for (auto& v : p.vertices()) m = std::max(m, std::sqrt(norm_squared(v).to_double()));
  return m;
}

}  // namespace

TEST_CASE("builtins validate and the unshifted triangle is singular") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto rep = validate(s, 50);
    CHECK_MESSAGE(rep.ok(), nm);
    CHECK(rep.aperiodic);
  }
  auto rep = validate(builtin_scheme("triangle", false), 10);
  CHECK_FALSE(rep.nonsingular);
  REQUIRE(rep.singular_witness.has_value());
}

TEST_CASE("projections of generators") {
  auto fib = builtin_scheme("fibonacci");
  FieldReal phi = (FieldReal(1) + FieldReal::generator(fib.field())) * FieldReal(Rational(1, 2));
  CHECK(fib.project_int(LatticePoint({1, 0}))[0] == FieldReal(-1) / (phi * phi + FieldReal(1)));
  CHECK(fib.project_phys(LatticePoint({0, 1}))[0] == FieldReal(1) / (phi * phi + FieldReal(1)));

  auto tri = builtin_scheme("triangle");
  FieldReal t = FieldReal::generator(tri.field());
  auto st = tri.star(LatticePoint({0, 0, 1}));
  CHECK(st[0] == t);
  CHECK(st[1] == t * t);
  CHECK(tri.project_phys(LatticePoint({0, 0, 1}))[0] == t * t);
  CHECK(tri.phys_norm_squared(LatticePoint({1, 1, 0})) == (FieldReal(1) + t) * (FieldReal(1) + t));
}

TEST_CASE("star is additive") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<int> u(-40, 40);
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    for (int it = 0; it < 100; ++it) {
      std::vector<std::int64_t> a(s.k()), b(s.k());
      for (int i = 0; i < s.k(); ++i) a[i] = u(rng), b[i] = u(rng);
      LatticePoint x(a), y(b);
      CHECK(s.star(x + y) == s.star(x) + s.star(y));
      CHECK(s.project_phys(x - y) == s.project_phys(x) - s.project_phys(y));
    }
  }
}

TEST_CASE("slab and box enumeration match a coefficient-box scan") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    double wr = window_radius(s.window_difference());
    for (int r = 1; r <= 4; ++r) {
      FieldReal r2(Rational(r * r));
      auto slab = enum_slab(s, r);
      auto box = enum_box(s, r);
      auto bs = brute(s, std::sqrt(r * r + wr * wr), [&](const LatticePoint& g) {
        return s.phys_norm_squared(g) <= r2 && s.window_difference().contains(s.star(g));
      });
      auto bb = brute(s, std::sqrt(2.0) * r, [&](const LatticePoint& g) {
        return s.phys_norm_squared(g) <= r2 && norm_squared(s.star(g)) <= r2;
      });
      CHECK_MESSAGE(std::set<LatticePoint>(slab.begin(), slab.end()) == bs, nm << " slab r=" << r);
      CHECK_MESSAGE(std::set<LatticePoint>(box.begin(), box.end()) == bb, nm << " box r=" << r);
      CHECK(std::is_sorted(slab.begin(), slab.end()));
      CHECK(slab.size() == bs.size());
    }
  }
}

TEST_CASE("model set points match a scan and the displacement criterion") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    double wr = window_radius(s.effective_window());
    int R = 6;
    auto pts = generate_points(s, R);
    auto bp = brute(s, std::sqrt(R * R + wr * wr), [&](const LatticePoint& g) {
      return s.phys_norm_squared(g) <= FieldReal(Rational(R * R)) && in_window(s, s.star(g));
    });
    CHECK_MESSAGE(std::set<LatticePoint>(pts.begin(), pts.end()) == bp, nm);
    // y, z in Lambda implies y - z in the slab
    auto slab = enum_slab(s, 2 * R);
    std::set<LatticePoint> sset(slab.begin(), slab.end());
    for (auto& y : pts)
      for (auto& z : pts) CHECK(sset.count(y - z));
  }
}

TEST_CASE("point density grows with the window volume") {
  auto s = builtin_scheme("ab4");
  auto pts = generate_points(s, 60);
  // density = vol(W) / covolume of Gamma in total space; for this star map
  // |det coord_map| = 4 and vol(W) = 2 + 2 sqrt 2
  double expected = M_PI * 3600 * (2 + 2 * std::sqrt(2.0)) / 4.0;
  CHECK(std::abs(pts.size() / expected - 1.0) < 0.02);
  double vol = volume(s.window()).to_double();
  CHECK(vol == doctest::Approx(2 + 2 * std::sqrt(2.0)));
  CHECK(std::abs(determinant(s.coord_map()).to_double()) == doctest::Approx(4.0));
}

TEST_CASE("patches") {
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto p0 = patch(s, LatticePoint::zero(s.k()), 0);
    REQUIRE(p0.p_in.size() == 1);
    CHECK(p0.p_in[0].is_zero());
    auto pts = generate_points(s, 8);
    for (size_t i = 0; i < pts.size(); i += std::max<size_t>(1, pts.size() / 7)) {
      auto& y = pts[i];
      auto p = patch(s, y, 3);
      std::set<LatticePoint> expect;
      for (auto& z : pts)
        if (s.phys_norm_squared(z - y) <= FieldReal(9)) expect.insert(z - y);
      // only complete when the ball of radius 3 around y stays inside |.| <= 8
      if (s.phys_norm_squared(y) <= FieldReal(25))
        CHECK(std::set<LatticePoint>(p.p_in.begin(), p.p_in.end()) == expect);
      for (auto& g : p.p_out) CHECK_FALSE(in_window(s, s.star(y + g)));
    }
  }
}

TEST_CASE("enumerate_coset agrees with a direct scan") {
  auto s = builtin_scheme("triangle");
  IntVec x0 = {Integer(1), Integer(0), Integer(0)};
  IntMatrix basis = {{Integer(0), Integer(1), Integer(0)}, {Integer(0), Integer(0), Integer(1)}};
  std::vector<std::pair<Rational, Rational>> box = {{-3, 3}, {-2, 2}, {-2, 2}};
  std::set<LatticePoint> got;
  enumerate_coset(s, x0, basis, box, [&](const LatticePoint& g) { got.insert(g); });
  std::set<LatticePoint> expect;
  for (int a = -40; a <= 40; ++a)
    for (int b = -40; b <= 40; ++b) {
      LatticePoint g({1, a, b});
      auto ph = s.project_phys(g);
      auto st = s.star(g);
      Vec all = {ph[0], st[0], st[1]};
      bool ok = true;
      for (int j = 0; j < 3; ++j)
        ok = ok && FieldReal(box[j].first) <= all[j] && all[j] <= FieldReal(box[j].second);
      if (ok) expect.insert(g);
    }
  CHECK(got == expect);
  CHECK(!got.empty());
}
