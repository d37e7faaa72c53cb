// Acceptance report: one PASS/FAIL line per criterion, details indented below.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include "cps/builtins.hpp"
#include "cps/commands.hpp"
#include "cps/complexity.hpp"
#include "cps/conditions.hpp"
#include "cps/enumerate.hpp"
#include "cps/io.hpp"
#include "cps/lattice.hpp"
#include "cps/partition.hpp"
#include "test_support.hpp"

using namespace cps;

namespace {

// pinned limits
constexpr double kExponentSeconds = 5;
constexpr int kStabilizerBox = 10;
constexpr double kScanTiles = 500;
constexpr double kCounterSeconds = 120;
constexpr double kSlopeOneTol = 0.15;
constexpr double kSlopeTwoTol = 0.3;
constexpr double kSlopeSeconds = 600;
constexpr double kChainSeconds = 60;
constexpr int kChainMaxRadius = 10;
constexpr double kCounterexampleSeconds = 120;
constexpr int kSuiteCases = 100;
const Rational kSearchRadius(4);

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Report {
  bool pass = true;
  std::vector<std::string> lines;

  void note(const std::string& s) { lines.push_back(s); }
  void expect(bool ok, const std::string& s) {
    if (!ok) pass = false;
    lines.push_back(std::string(ok ? "ok   " : "FAIL ") + s);
  }
};

std::string fmt(double x, int prec = 3) {
  std::ostringstream os;
  os.setf(std::ios::fixed);
  os.precision(prec);
  os << x;
  return os.str();
}

double difference_radius(const Scheme& s) {
  FieldReal m;
  for (auto& v : s.window_difference().vertices()) m = std::max(m, norm_squared(v));
  return std::sqrt(m.to_double());
}

// Smallest integer r with W - W inside B_r, decided exactly.
int difference_threshold(const Scheme& s) {
  int r = std::max(1, (int)std::floor(difference_radius(s)));
  auto inside = [&](int r) {
    for (auto& v : s.window_difference().vertices())
      if (norm_squared(v) > FieldReal(r * r)) return false;
    return true;
  };
  while (!inside(r)) ++r;
  return r;
}

// Coefficient-box scan for the stabilizer of a hyperplane direction.
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
  std::vector<std::int64_t> c(k, -kStabilizerBox);
  while (true) {
    if (form.eval(c.data()).is_zero()) {
      IntVec v;
      for (auto x : c) v.push_back(Integer((long)x));
      out.push_back(v);
    }
    int i = 0;
    while (i < k && c[i] == kStabilizerBox) c[i++] = -kStabilizerBox;
    if (i == k) break;
    ++c[i];
  }
  return out;
}

Report criterion_exponents() {
  Report rep;
  std::map<std::string, int> expected = {{"fibonacci", 1}, {"triangle", 2}, {"ab4", 2}};
  for (auto& [nm, a] : expected) {
    RunConfig cfg;
    cfg.command = "exponents";
    cfg.builtin = nm;
    cfg.format = OutputFormat::json;
    std::ostringstream out, err;
    auto t0 = Clock::now();
    int rc = run_command(cfg, out, err);
    double secs = since(t0);
    if (rc != 0) {
      rep.expect(false, nm + ": exit " + std::to_string(rc) + " " + err.str());
      continue;
    }
    Json j = Json::parse(out.str());
    int alpha = j["alpha"], alpha_p = j["alpha_prime"];
    rep.expect(alpha == a && alpha_p == a && secs < kExponentSeconds,
               nm + ": alpha " + std::to_string(alpha) + ", alpha' " + std::to_string(alpha_p) + " (expected " +
                   std::to_string(a) + "), " + fmt(secs) + " s");

    // independent oracle for every direction class
    auto s = builtin_scheme(nm);
    auto er = exponent_report(s);
    std::vector<int> rk, beta;
    std::vector<Vec> normals;
    bool agree = true;
    for (auto& dc : er.classes) {
      auto sols = stabilizer_scan(s, dc.normal);
      auto scanned = IntegerLattice::from_generators(s.k(), sols);
      int b = 0;
      if (!sols.empty()) {
        std::vector<Vec> rows;
        for (auto& v : sols) rows.push_back(s.star(LatticePoint::from_intvec(v)));
        b = (int)rank_over_field(FieldMatrix::from_rows(rows));
      }
      const auto& hd = er.hyperplanes[dc.facets.front()];
      agree = agree && scanned == hd.stab && (int)scanned.rank() == dc.rk && b == dc.beta;
      rk.push_back((int)scanned.rank());
      beta.push_back(b);
      normals.push_back(dc.normal);
    }
    int oa = -1, oap = -1;
    for (auto& f : flags_of_normals(normals, s.n())) {
      int x = 0, y = 0;
      for (size_t i : f) x += s.k() - rk[i] - 1, y += s.d() - rk[i] + beta[i];
      oa = std::max(oa, x);
      oap = std::max(oap, y);
    }
    rep.expect(agree && oa == alpha && oap == alpha_p,
               nm + ": stabilizers match a [-" + std::to_string(kStabilizerBox) + "," +
                   std::to_string(kStabilizerBox) + "]^k scan, oracle alpha " + std::to_string(oa) + ", alpha' " +
                   std::to_string(oap));
  }
  return rep;
}

Report criterion_counters() {
  Report rep;
  std::vector<Rational> radii = {1, 2, 3, 4, 5};
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    if (s.n() > 2) continue;
    auto t0 = Clock::now();
    Rational scan(std::ceil(kScanTiles * tile_scale(s)));
    auto brute = bruteforce_patch_counts(s, radii, scan);
    std::string exact = "", seen = "";
    bool same = true;
    for (size_t i = 0; i < radii.size(); ++i) {
      size_t p = count_row(s, radii[i], false).p;
      same = same && p == brute[i];
      exact += (i ? " " : "") + std::to_string(p);
      seen += (i ? " " : "") + std::to_string(brute[i]);
    }
    double secs = since(t0);
    rep.expect(same && secs < kCounterSeconds, nm + ": acceptance [" + exact + "], brute force [" + seen +
                                                   "] at scan radius " + scan.get_str() + ", " + fmt(secs) + " s");
  }
  return rep;
}

struct SlopeCase {
  std::string name;
  std::vector<Rational> radii;
  double target, tol;
};

// Rows kept for the p(r) <= #C(r) check.
std::map<std::string, std::vector<SeriesRow>> g_rows;

Report criterion_slopes() {
  Report rep;
  std::vector<SlopeCase> cases = {{"fibonacci", {10, 20, 40, 80}, 1, kSlopeOneTol},
                                  {"triangle", {4, 8, 16, 32}, 2, kSlopeTwoTol},
                                  {"ab4", {4, 8, 16, 32}, 2, kSlopeTwoTol}};
  auto t0 = Clock::now();
  for (auto& c : cases) {
    auto s = builtin_scheme(c.name);
    bool valid = validate(s, c.radii.back()).ok();
    std::vector<std::pair<double, double>> pts;
    std::string ps;
    for (auto& r : c.radii) {
      auto row = count_row(s, r);
      g_rows[c.name].push_back(row);
      pts.push_back({r.get_d(), (double)row.p});
      ps += (ps.empty() ? "" : " ") + std::to_string(row.p);
    }
    double slope = slope_fit(pts);
    rep.expect(valid && std::fabs(slope - c.target) <= c.tol,
               c.name + ": p = [" + ps + "], slope " + fmt(slope) + " (target " + fmt(c.target, 1) + " +- " +
                   fmt(c.tol, 2) + ")");
  }
  double secs = since(t0);
  rep.expect(secs < kSlopeSeconds, "total " + fmt(secs, 1) + " s");
  return rep;
}

RegionPartition acceptance_partition(const Scheme& s, const AcceptanceResult& ar) {
  std::vector<std::vector<bool>> sigs(ar.partition.group_count);
  for (auto& reg : ar.partition.regions) sigs[reg.group] = reg.signature;
  return acceptance_domains(s, ar.partition.translates, sigs);
}

struct VolumeTally {
  size_t partitions = 0, conserved = 0;
};
VolumeTally g_volumes;

Report criterion_chain() {
  Report rep;
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    int r0 = difference_threshold(s);
    std::set<int> radii = {1, 2, 3, 5, 8, kChainMaxRadius};
    if (r0 <= kChainMaxRadius) radii.insert(r0);
    FieldReal vol = volume(s.effective_window());
    double secs = 0;
    bool c_cp = true, cp_a = true;
    std::string tested;
    for (int r : radii) {
      auto t0 = Clock::now();
      auto C = cut_regions(s, Rational(r), CutVariant::box);
      auto Cp = cut_regions(s, Rational(r), CutVariant::slab);
      auto ar = acceptance_count(s, Rational(r));
      auto A = acceptance_partition(s, ar);
      if (r >= r0) c_cp = c_cp && refines(C, Cp);
      cp_a = cp_a && refines(Cp, A) && A.group_count == ar.count;
      secs += since(t0);
      // volume bookkeeping for the bound invariants, outside the timed chain
      for (auto* p : {&C, &Cp, &ar.partition, &A}) {
        ++g_volumes.partitions;
        if (partition_volume(*p) == vol) ++g_volumes.conserved;
      }
      if (r >= r0) {
        auto& rows = g_rows[nm];
        SeriesRow row;
        row.r = r;
        row.p = ar.count;
        row.cuts = C.regions.size();
        rows.push_back(row);
      }
      tested += (tested.empty() ? "" : ",") + std::to_string(r);
    }
    rep.expect(c_cp && cp_a && secs < kChainSeconds,
               nm + ": r in {" + tested + "}, W-W in B_r from r = " + std::to_string(r0) + "; C refines C' " +
                   (c_cp ? "yes" : "no") + ", C' refines A " + (cp_a ? "yes" : "no") + ", " + fmt(secs, 1) + " s");
  }
  return rep;
}

Report criterion_counterexample() {
  Report rep;
  auto t0 = Clock::now();
  auto s = builtin_scheme("triangle");
  auto ac = almost_canonical_check(s, kSearchRadius);
  auto qc = quasicanonical_check(s, kSearchRadius);
  auto bc = boolean_check(s, kSearchRadius);
  rep.expect(ac.status == ConditionStatus::proven && verify_verdict(s, ac), "almost canonical: " +
                                                                               std::string(to_string(ac.status)));
  bool on_facet = qc.witness && qc.witness_facet && facet_hyperplane(s, *qc.witness_facet).eval(*qc.witness).is_zero();
  rep.expect(qc.status == ConditionStatus::disproven && on_facet && verify_verdict(s, qc),
             "quasicanonical: " + std::string(to_string(qc.status)) + " (" + qc.obstruction +
                 "), witness on facet hyperplane " + (on_facet ? "yes" : "no"));
  rep.expect(bc.status == ConditionStatus::disproven, "boolean: " + std::string(to_string(bc.status)) + " (" +
                                                          bc.obstruction + ")");

  auto demo = refinement_demo(s, {Rational(10), Rational(20)});
  rep.expect(demo.failure_found, "refinement demo finds a failure at c = " + demo.c.get_str());
  if (demo.failure_found) {
    auto cuts = cut_regions(s, demo.c, CutVariant::box);
    for (auto& dr : demo.radii) {
      auto slab = enum_slab(s, dr.R);
      std::set<std::vector<bool>> sigs;
      std::set<size_t> regions;
      bool inside = true;
      for (auto& p : dr.points) {
        inside = inside && s.effective_window().contains_interior(p);
        std::vector<bool> sig;
        for (auto& g : slab) sig.push_back(in_open_translate(s, p, s.star(g)));
        sigs.insert(sig);
        for (size_t i = 0; i < cuts.regions.size(); ++i)
          if (cuts.regions[i].poly.contains_interior(p)) regions.insert(i);
      }
      rep.expect(dr.points.size() == 3 && inside && sigs.size() == 1 && regions.size() == 3,
                 "R = " + dr.R.get_str() + ": " + std::to_string(dr.points.size()) + " points, eps " +
                     dr.eps.get_str() + ", " + std::to_string(sigs.size()) + " A(R) signature, " +
                     std::to_string(regions.size()) + " C(c) regions");
    }
  }
  double secs = since(t0);
  rep.expect(secs < kCounterexampleSeconds, fmt(secs, 1) + " s");
  return rep;
}

std::set<std::string> g_quasicanonical;

Report criterion_positives() {
  Report rep;
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto qc = quasicanonical_check(s, kSearchRadius);
    if (qc.status == ConditionStatus::proven && verify_verdict(s, qc)) g_quasicanonical.insert(nm);
  }
  for (auto nm : {"cubic-3-1", "fibonacci", "ab4", "square-4-2"})
    rep.expect(g_quasicanonical.count(nm) > 0, std::string(nm) + ": quasicanonical Proven and re-verified");
  auto fib = builtin_scheme("fibonacci");
  auto bc = boolean_check(fib, kSearchRadius);
  rep.expect(bc.status == ConditionStatus::proven && verify_verdict(fib, bc),
             "fibonacci: boolean " + std::string(to_string(bc.status)));
  return rep;
}

Report criterion_bounds() {
  Report rep;
  for (auto& nm : builtin_names()) {
    auto s = builtin_scheme(nm);
    auto v = validate(s, Rational(20));
    if (!v.ok() || !v.aperiodic) {
      rep.note(nm + ": not a validated aperiodic scheme, skipped");
      continue;
    }
    int ap = alpha_prime(s);
    rep.expect(s.d() <= ap && ap <= s.d() * s.n(), nm + ": " + std::to_string(s.d()) + " <= alpha' = " +
                                                       std::to_string(ap) + " <= " + std::to_string(s.d() * s.n()));
  }
  rep.expect(g_volumes.partitions > 0 && g_volumes.conserved == g_volumes.partitions,
             "volume conserved in " + std::to_string(g_volumes.conserved) + " of " +
                 std::to_string(g_volumes.partitions) + " partitions");
  for (auto& nm : g_quasicanonical) {
    auto s = builtin_scheme(nm);
    int r0 = difference_threshold(s);
    size_t tested = 0;
    bool ok = true;
    for (auto& row : g_rows[nm]) {
      if (row.r < r0 || row.cuts == 0) continue;
      ++tested;
      ok = ok && row.p <= row.cuts;
    }
    rep.expect(ok && tested > 0, nm + ": p(r) <= #C(r) on " + std::to_string(tested) + " rows past r = " +
                                     std::to_string(r0));
  }
  return rep;
}

Report criterion_suites() {
  using namespace testing_support;
  Report rep;
  std::mt19937_64 rng(20240601);

  {  // field order consistency
    int bad = 0;
    auto f = cubic_field();
    std::vector<FieldReal> e;
    for (int i = 0; i < kSuiteCases; ++i) e.push_back(random_element(rng, f));
    for (int i = 0; i < kSuiteCases; ++i) {
      const FieldReal &a = e[i], &b = e[(i * 37 + 11) % kSuiteCases], &c = e[(i * 53 + 7) % kSuiteCases];
      if ((a * b).sign() != a.sign() * b.sign()) ++bad;
      if (((a < b) + (b < a) + (a == b)) != 1) ++bad;
      if (a <= b && b <= c && !(a <= c)) ++bad;
      if ((a < b) != (a - b).sign() < 0) ++bad;
      if (!(a - a).is_zero()) ++bad;
    }
    rep.expect(bad == 0, "field order consistency: " + std::to_string(kSuiteCases) + " cases, " +
                             std::to_string(bad) + " violations");
  }
  {  // star additivity
    int bad = 0;
    std::uniform_int_distribution<int> u(-40, 40);
    auto names = builtin_names();
    for (int i = 0; i < kSuiteCases; ++i) {
      auto s = builtin_scheme(names[i % names.size()]);
      std::vector<std::int64_t> a(s.k()), b(s.k());
      for (int j = 0; j < s.k(); ++j) a[j] = u(rng), b[j] = u(rng);
      LatticePoint x(a), y(b);
      if (!(s.star(x + y) == s.star(x) + s.star(y))) ++bad;
    }
    rep.expect(bad == 0, "star additivity: " + std::to_string(kSuiteCases) + " cases, " + std::to_string(bad) +
                             " violations");
  }
  {  // integer kernel completeness
    int bad = 0;
    auto c3 = cubic_field(), s2 = sqrt2_field();
    std::uniform_int_distribution<int> d(-2, 2);
    for (int t = 0; t < kSuiteCases; ++t) {
      auto f = t % 3 == 0 ? c3 : s2;
      Vec row;
      for (int j = 0; j < 3; ++j) {
        std::vector<Rational> co(f->degree());
        for (auto& x : co) x = d(rng);
        if (t % 2 == 0) std::fill(co.begin() + 1, co.end(), 0);
        row.push_back(FieldReal(f, co));
      }
      auto m = FieldMatrix::from_rows({row});
      auto ker = integer_kernel(m);
      auto holds = [&](const IntVec& v) {
        FieldReal acc;
        for (int j = 0; j < 3; ++j) acc += row[j] * FieldReal(Rational(v[j]));
        return acc.is_zero();
      };
      for (auto& b : ker.basis)
        if (!holds(b)) ++bad;
      IntVec v(3);
      for (int a0 = -5; a0 <= 5; ++a0)
        for (int a1 = -5; a1 <= 5; ++a1)
          for (int a2 = -5; a2 <= 5; ++a2) {
            v = {Integer(a0), Integer(a1), Integer(a2)};
            if (holds(v) && !ker.contains(v)) ++bad;
          }
    }
    rep.expect(bad == 0, "integer kernel completeness vs [-5,5]^3 scan: " + std::to_string(kSuiteCases) +
                             " cases, " + std::to_string(bad) + " violations");
  }
  {  // hnf lattice preservation
    int bad = 0;
    std::uniform_int_distribution<int> d(-9, 9);
    for (int t = 0; t < kSuiteCases; ++t) {
      size_t rows = 1 + t % 4, cols = 1 + (t / 4) % 4;
      IntMatrix m(rows, IntVec(cols));
      for (auto& r : m)
        for (auto& x : r) x = d(rng);
      IntMatrix h = hnf(m);
      IntegerLattice lh{cols, h};
      auto lm = IntegerLattice::from_generators(cols, m);
      for (auto& r : m)
        if (!lh.contains(r)) ++bad;
      for (auto& r : h)
        if (!lm.contains(r)) ++bad;
    }
    rep.expect(bad == 0, "hnf lattice preservation: " + std::to_string(kSuiteCases) + " cases, " +
                             std::to_string(bad) + " violations");
  }
  {  // dd_convert round trips and split volume additivity
    int bad = 0, trips = 0;
    auto f = sqrt2_field();
    FieldReal r2 = FieldReal::generator(f);
    std::uniform_int_distribution<int> d(-6, 6);
    while (trips < kSuiteCases) {
      std::vector<Vec> pts;
      for (int i = 0; i < 7; ++i)
        pts.push_back({FieldReal(d(rng)) + FieldReal(Rational(d(rng), 7)) * r2, FieldReal(d(rng))});
      ConvexPolytope p;
      try {
        p = ConvexPolytope::hull(2, pts);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++trips;
      auto q = dd_convert(2, p.halfspaces());
      if (q.vertices().size() != p.vertices().size()) ++bad;
      for (auto& v : q.vertices())
        if (std::find(p.vertices().begin(), p.vertices().end(), v) == p.vertices().end()) ++bad;
      Vec nrm{FieldReal(d(rng)) + r2, FieldReal(d(rng))};
      auto [a, b] = split(p, AffineHyperplane::make(nrm, FieldReal(Rational(d(rng), 3))));
      if (!(volume(a) + volume(b) == volume(p))) bad += 1000;
    }
    rep.expect(bad % 1000 == 0, "dd_convert round trips: " + std::to_string(trips) + " cases, " +
                                    std::to_string(bad % 1000) + " violations");
    rep.expect(bad / 1000 == 0, "split volume additivity: " + std::to_string(trips) + " cases, " +
                                    std::to_string(bad / 1000) + " violations");
  }
  return rep;
}

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  struct Criterion {
    int id;
    const char* name;
    std::function<Report()> run;
  };
  std::vector<Criterion> all = {{1, "exponent computation", criterion_exponents},
                                {2, "counter agreement", criterion_counters},
                                {3, "empirical asymptotics", criterion_slopes},
                                {4, "refinement chain", criterion_chain},
                                {5, "counterexample reproduction", criterion_counterexample},
                                {6, "quasicanonical positives", criterion_positives},
                                {7, "bound invariants", criterion_bounds},
                                {8, "kernel property suites", criterion_suites}};
  int failed = 0, ran = 0;
  for (auto& c : all) {
    if (!only.empty() && !only.count(c.id)) continue;
    ++ran;
    auto t0 = Clock::now();
    Report r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.expect(false, std::string("exception: ") + e.what());
    }
    std::printf("%s criterion %d (%s) [%.1f s]\n", r.pass ? "PASS" : "FAIL", c.id, c.name, since(t0));
    for (auto& l : r.lines) std::printf("    %s\n", l.c_str());
    std::fflush(stdout);
    if (!r.pass) ++failed;
  }
  std::printf("%d of %d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
