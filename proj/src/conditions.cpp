#include "cps/conditions.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "cps/enumerate.hpp"
#include "cps/partition.hpp"
#include "cps/stabilizer.hpp"

namespace cps {

const char* to_string(ConditionStatus s) {
  switch (s) {
    case ConditionStatus::proven: return "Proven";
    case ConditionStatus::disproven: return "Disproven";
    default: return "Unknown";
  }
}

const char* to_string(ConditionKind k) {
  switch (k) {
    case ConditionKind::almost_canonical: return "almost_canonical";
    case ConditionKind::quasicanonical: return "quasicanonical";
    default: return "boolean";
  }
}

namespace {

Integer floor_fr(const FieldReal& x) {
  if (x.is_rational()) return floor_of(x.rational_value());
  for (int bits = 64;; bits *= 2) {
    auto iv = x.approx(bits);
    Integer a = floor_of(iv.lo), b = floor_of(iv.hi);
    if (a == b) return a;
    if (b == a + 1) return x >= FieldReal(Rational(b)) ? b : a;
  }
}

Integer ceil_fr(const FieldReal& x) { return -floor_fr(-x); }

FieldReal fr(const Integer& z) { return FieldReal(Rational(z)); }

Vec neg(const Vec& v) { return FieldReal(-1) * v; }

LatticePoint times(const LatticePoint& g, std::int64_t m) {
  LatticePoint r = g;
  for (auto& x : r.c) x *= m;
  return r;
}

FieldReal l1(const Vec& v) {
  FieldReal s;
  for (auto& x : v) s += x.abs();
  return s;
}

ConvexPolytope box_about(const Vec& z, const FieldReal& eps) {
  Vec lo = z, hi = z;
  for (auto& x : lo) x -= eps;
  for (auto& x : hi) x += eps;
  return ConvexPolytope::box(lo, hi);
}

// Half the smallest l1-scaled slack of z against facets of the translates not through z.
FieldReal local_eps(const Scheme& s, const Vec& z, const std::vector<LatticePoint>& xs) {
  std::optional<FieldReal> best;
  for (auto& x : xs) {
    Vec t = neg(s.star(x));
    for (auto& h : s.effective_window().halfspaces()) {
      FieldReal sl = h.translated(t).slack(z);
      if (sl.is_zero()) continue;
      FieldReal v = sl.abs() / l1(h.normal);
      if (!best || v < *best) best = v;
    }
  }
  return best ? *best / FieldReal(2) : FieldReal(1);
}

CoverResult run_cover(const Scheme& s, size_t facet, const LocalCover& lc) {
  const auto& W = s.effective_window();
  const Halfspace& h = W.halfspaces()[facet];
  ConvexPolytope target = clip(box_about(lc.z, lc.eps), lc.side > 0 ? h : h.flipped());
  std::vector<ConvexPolytope> pieces;
  for (auto& x : lc.translates) pieces.push_back(W.translated(neg(s.star(x))));
  return covering_test(target, pieces);
}

std::optional<size_t> facet_index(const Scheme& s, const AffineHyperplane& H) {
  for (size_t i = 0; i < s.effective_window().halfspaces().size(); ++i)
    if (facet_hyperplane(s, i) == H) return i;
  return std::nullopt;
}

// Elements x of Gamma with star(x) . normal = b_op - b_H, so that F^op - x_int lies in H.
std::optional<AffineCoset> opposite_coset(const Scheme& s, const HyperplaneData& hd) {
  if (!hd.opposite) return std::nullopt;
  FieldMatrix im = s.int_map();
  FieldMatrix row(1, s.k());
  for (int c = 0; c < s.k(); ++c) row(0, c) = dot(hd.H.normal, im.column(c));
  return affine_integer_solutions(row, {hd.opposite->offset - hd.H.offset});
}

// Coordinates along a facet line (n = 2): t(y) = (y - p) . u / (u . u * lambda),
// so that the period lambda u advances t by one.
struct LineFrame {
  Vec p, u;
  FieldReal inv;
  FieldReal lambda;

  void init(const Vec& p0, const Vec& u0, const FieldReal& lam) {
    p = p0;
    u = u0;
    lambda = lam;
    inv = (dot(u, u) * lam).inverse();
  }
  FieldReal t(const Vec& y) const { return dot(y - p, u) * inv; }
  FieldReal shift(const Vec& v) const { return dot(v, u) * inv; }
  Vec point(const FieldReal& t) const { return p + (t * lambda) * u; }
};

struct FacetLine {
  HyperplaneData hd;
  LineFrame frame;
  LatticePoint period;
  bool discrete = true;
  std::vector<LatticePoint> search;  // bounded subset of the stabilizer (dense case)
  std::vector<FieldReal> search_shift;
  FieldReal fmin, fmax;
  std::optional<LatticePoint> op_base;
  FieldReal omin, omax;
};

std::vector<LatticePoint> stabilizer_search(const HyperplaneData& hd, int M) {
  std::vector<LatticePoint> basis;
  for (auto& b : hd.stab.basis) basis.push_back(LatticePoint::from_intvec(b));
  size_t k = hd.stab.ambient, rk = basis.size();
  std::vector<LatticePoint> out;
  std::vector<std::int64_t> a(rk, -M);
  while (true) {
    LatticePoint x = LatticePoint::zero(k);
    for (size_t i = 0; i < rk; ++i) x = x + times(basis[i], a[i]);
    out.push_back(x);
    int i = (int)rk - 1;
    while (i >= 0 && a[i] == M) a[i--] = -M;
    if (i < 0) break;
    ++a[i];
  }
  return out;
}

std::pair<FieldReal, FieldReal> t_range(const LineFrame& fr, const ConvexPolytope& seg, const Vec& offset) {
  FieldReal a = fr.t(seg.vertices()[0] + offset), b = fr.t(seg.vertices()[1] + offset);
  if (b < a) std::swap(a, b);
  return {a, b};
}

// Requires beta = rk >= 1 (discrete) or rk > beta = 1 (dense), n = 2.
FacetLine make_line(const Scheme& s, const HyperplaneData& hd, int M) {
  FacetLine fl;
  fl.hd = hd;
  fl.discrete = hd.rk == hd.beta;
  Vec u = hd.V_H[0];
  FieldReal uu = dot(u, u);
  if (fl.discrete) {
    fl.period = LatticePoint::from_intvec(hd.stab.basis[0]);
  } else {
    fl.search = stabilizer_search(hd, M);
    std::optional<FieldReal> best;
    for (auto& x : fl.search) {
      if (x.is_zero()) continue;
      FieldReal l = (dot(s.star(x), u) / uu).abs();
      if (!best || l < *best) {
        best = l;
        fl.period = x;
      }
    }
  }
  fl.frame.init(hd.face.vertices()[0], u, dot(s.star(fl.period), u) / uu);
  for (auto& x : fl.search) fl.search_shift.push_back(fl.frame.shift(s.star(x)));
  std::tie(fl.fmin, fl.fmax) = t_range(fl.frame, hd.face, zero_vec(2));
  if (auto co = opposite_coset(s, hd)) {
    fl.op_base = LatticePoint::from_intvec(co->x0);
    auto opf = face_of(s.effective_window(), *hd.opposite);
    std::tie(fl.omin, fl.omax) = t_range(fl.frame, *opf, neg(s.star(*fl.op_base)));
  }
  return fl;
}

// Translates x with z + x_int in [lo, hi] along the line, z at parameter t.
std::vector<LatticePoint> translates_at(const FacetLine& fl, const FieldReal& t, const FieldReal& lo,
                                        const FieldReal& hi, const LatticePoint& base) {
  std::vector<LatticePoint> out;
  if (fl.discrete) {
    Integer a = ceil_fr(lo - t), b = floor_fr(hi - t);
    for (Integer m = a; m <= b; ++m) out.push_back(base + times(fl.period, m.get_si()));
  } else {
    for (size_t i = 0; i < fl.search.size(); ++i) {
      FieldReal v = t + fl.search_shift[i];
      if (v >= lo && v <= hi) out.push_back(base + fl.search[i]);
    }
  }
  return out;
}

std::vector<FieldReal> test_parameters(const FacetLine& fl) {
  std::vector<FieldReal> crit;
  auto add = [&](const FieldReal& v) { crit.push_back(v - fr(floor_fr(v))); };
  std::vector<FieldReal> shifts = fl.discrete ? std::vector<FieldReal>{FieldReal(0)} : fl.search_shift;
  for (auto& sh : shifts) {
    add(fl.fmin - sh);
    add(fl.fmax - sh);
    if (fl.op_base) {
      add(fl.omin - sh);
      add(fl.omax - sh);
    }
  }
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  std::vector<FieldReal> out;
  for (size_t i = 0; i < crit.size(); ++i) {
    out.push_back(crit[i]);
    FieldReal next = i + 1 < crit.size() ? crit[i + 1] : crit[0] + FieldReal(1);
    out.push_back((crit[i] + next) / FieldReal(2));
  }
  return out;
}

int coefficient_bound(const Rational& R) {
  Integer m = ceil_of(R);
  if (m < 1) return 1;
  if (m > 8) return 8;
  return (int)m.get_si();
}

enum class LocalOutcome { covered, certified_gap, open_gap };

struct LocalResult {
  LocalOutcome outcome = LocalOutcome::covered;
  std::vector<LocalCover> covers;  // the successful cover, or both failing ones
  Vec uncovered;
};

LocalResult check_point(const Scheme& s, size_t facet, size_t op_facet, const Vec& z,
                        std::vector<LatticePoint> x1, std::vector<LatticePoint> x2, bool complete) {
  LocalResult res;
  LocalCover c1{z, local_eps(s, z, x1), 1, std::move(x1)};
  CoverResult r1 = run_cover(s, facet, c1);
  if (r1.covered) {
    res.covers.push_back(std::move(c1));
    return res;
  }
  if (!x2.empty()) {
    // the opposite-face translates cover the far side of H, seen from the opposite facet
    LocalCover c2{z, local_eps(s, z, x2), -1, std::move(x2)};
    CoverResult r2 = run_cover(s, facet, c2);
    if (r2.covered) {
      res.covers.push_back(std::move(c2));
      return res;
    }
    res.covers.push_back(std::move(c2));
  }
  (void)op_facet;
  res.covers.insert(res.covers.begin(), std::move(c1));
  res.uncovered = r1.witness;
  res.outcome = complete ? LocalOutcome::certified_gap : LocalOutcome::open_gap;
  return res;
}

bool unsupported_dimension(const Scheme& s, ConditionVerdict& v) {
  if (s.n() <= 2) return false;
  v.status = ConditionStatus::unknown;
  v.detail = "local analysis is implemented for internal dimension at most 2";
  return true;
}

}  // namespace

ConditionVerdict almost_canonical_check(const Scheme& s, const Rational& R) {
  ConditionVerdict v;
  v.kind = ConditionKind::almost_canonical;
  v.search_radius = R;
  if (unsupported_dimension(s, v)) return v;
  int M = coefficient_bound(R);
  bool unknown = false;
  auto hds = all_stabilizers(s);
  for (auto& hd : hds)
    if (hd.beta < s.n() - 1) {
      v.status = ConditionStatus::disproven;
      v.obstruction = "stabilizer-span";
      v.witness = hd.face.witness();
      v.witness_facet = hd.facet;
      return v;
    }
  for (auto& hd : hds) {
    HyperplaneCertificate cert;
    cert.facet = hd.facet;
    if (s.n() == 1) {
      cert.face_translates.push_back(LatticePoint::zero(s.k()));
      v.certificate.push_back(std::move(cert));
      continue;
    }
    FacetLine fl = make_line(s, hd, M);
    cert.period = fl.period;
    cert.discrete = fl.discrete;
    // closed covering of D = [0, 1] by the segments F + x_int
    std::vector<ConvexPolytope> pieces;
    std::vector<LatticePoint> base = fl.discrete ? std::vector<LatticePoint>{LatticePoint::zero(s.k())} : fl.search;
    for (auto& x : base) {
      FieldReal sh = fl.frame.shift(s.star(x));
      FieldReal lo = fl.fmin + sh, hi = fl.fmax + sh;
      for (Integer j = ceil_fr(-hi); j <= floor_fr(FieldReal(1) - lo); ++j) {
        pieces.push_back(ConvexPolytope::box({lo + fr(j)}, {hi + fr(j)}));
        cert.face_translates.push_back(x + times(fl.period, j.get_si()));
      }
    }
    CoverResult cr = covering_test(ConvexPolytope::box({FieldReal(0)}, {FieldReal(1)}), pieces);
    if (!cr.covered) {
      if (fl.discrete) {
        v.status = ConditionStatus::disproven;
        v.obstruction = "face-gap";
        v.witness = fl.frame.point(cr.witness[0]);
        v.witness_facet = hd.facet;
        v.certificate.clear();
        return v;
      }
      unknown = true;
      if (!v.witness) {
        v.witness = fl.frame.point(cr.witness[0]);
        v.witness_facet = hd.facet;
      }
      continue;
    }
    v.certificate.push_back(std::move(cert));
  }
  if (unknown) {
    v.status = ConditionStatus::unknown;
    v.detail = "bounded search left a gap along a facet with a dense stabilizer";
    v.certificate.clear();
  } else {
    v.status = ConditionStatus::proven;
  }
  return v;
}

ConditionVerdict quasicanonical_check(const Scheme& s, const Rational& R) {
  ConditionVerdict v;
  v.kind = ConditionKind::quasicanonical;
  v.search_radius = R;
  if (unsupported_dimension(s, v)) return v;
  int M = coefficient_bound(R);
  bool unknown = false;
  auto hds = all_stabilizers(s);
  for (auto& hd : hds)
    if (hd.beta != s.n() - 1) {
      v.status = ConditionStatus::disproven;
      v.obstruction = "stabilizer-rank";
      v.witness = hd.face.witness();
      v.witness_facet = hd.facet;
      return v;
    }
  for (auto& hd : hds) {
    size_t op_facet = hd.opposite ? *facet_index(s, *hd.opposite) : hd.facet;
    HyperplaneCertificate cert;
    cert.facet = hd.facet;
    std::vector<LocalResult> results;
    if (s.n() == 1) {
      Vec z = hd.face.vertices()[0];
      std::vector<LatticePoint> x2;
      if (auto co = opposite_coset(s, hd)) x2.push_back(LatticePoint::from_intvec(co->x0));
      results.push_back(check_point(s, hd.facet, op_facet, z, {LatticePoint::zero(s.k())}, x2, true));
    } else {
      FacetLine fl = make_line(s, hd, M);
      cert.period = fl.period;
      cert.discrete = fl.discrete;
      LatticePoint zero = LatticePoint::zero(s.k());
      for (auto& t : test_parameters(fl)) {
        Vec z = fl.frame.point(t);
        auto x1 = translates_at(fl, t, fl.fmin, fl.fmax, zero);
        std::vector<LatticePoint> x2;
        if (fl.op_base) x2 = translates_at(fl, t, fl.omin, fl.omax, *fl.op_base);
        results.push_back(check_point(s, hd.facet, op_facet, z, std::move(x1), std::move(x2), fl.discrete));
        if (results.back().outcome != LocalOutcome::covered) break;
      }
    }
    for (auto& r : results) {
      if (r.outcome == LocalOutcome::covered) {
        cert.covers.push_back(r.covers.front());
        continue;
      }
      if (r.outcome == LocalOutcome::certified_gap) {
        v.status = ConditionStatus::disproven;
        v.obstruction = "uncovered-cone";
        v.witness = r.covers.front().z;
        v.witness_facet = hd.facet;
        v.uncovered_point = r.uncovered;
        HyperplaneCertificate failed;
        failed.facet = hd.facet;
        failed.period = cert.period;
        failed.covers = r.covers;
        v.certificate = {failed};
        return v;
      }
      unknown = true;
      if (!v.witness) {
        v.witness = r.covers.front().z;
        v.witness_facet = hd.facet;
        v.uncovered_point = r.uncovered;
      }
    }
    v.certificate.push_back(std::move(cert));
  }
  if (unknown) {
    v.status = ConditionStatus::unknown;
    v.detail = "bounded search left a point uncovered along a facet with a dense stabilizer";
    v.certificate.clear();
  } else {
    v.status = ConditionStatus::proven;
  }
  return v;
}

namespace {

std::vector<ConvexPolytope> boolean_cells(const Scheme& s, ConvexPolytope* nbhd) {
  const auto& W = s.effective_window();
  ConvexPolytope N = minkowski_sum(W, s.window_difference());
  if (nbhd) *nbhd = N;
  return subtract({N}, W);
}

}  // namespace

ConditionVerdict boolean_check(const Scheme& s, const Rational& R) {
  ConditionVerdict v;
  v.kind = ConditionKind::boolean;
  v.search_radius = R;
  const auto& W = s.effective_window();
  for (auto& dc : direction_classes(s)) {
    if (dc.facets.size() < 2) {
      v.status = ConditionStatus::disproven;
      v.obstruction = "no-opposite-face";
      v.witness_facet = dc.facets.front();
      v.witness = face_of(W, facet_hyperplane(s, dc.facets.front()))->witness();
      return v;
    }
  }
  if (s.n() > 3) {
    v.detail = "internal dimension above 3";
    return v;
  }
  ConvexPolytope N;
  auto cells = boolean_cells(s, &N);
  std::vector<ConvexPolytope> pieces;
  for (auto& g : enum_box(s, R)) {
    if (g.is_zero()) continue;
    ConvexPolytope P = W.translated(neg(s.star(g)));
    if (!interiors_intersect(P, N) || interiors_intersect(P, W)) continue;
    pieces.push_back(std::move(P));
    v.translates.push_back(g);
  }
  for (auto& cell : cells) {
    std::vector<ConvexPolytope> rel;
    for (auto& p : pieces)
      if (interiors_intersect(p, cell)) rel.push_back(p);
    CoverResult cr = covering_test(cell, rel);
    if (!cr.covered) {
      v.status = ConditionStatus::unknown;
      v.uncovered_point = cr.witness;
      v.translates.clear();
      v.detail = "translates from B(R) with interiors disjoint from W leave part of the neighbourhood uncovered";
      return v;
    }
  }
  v.status = ConditionStatus::proven;
  return v;
}

bool verify_verdict(const Scheme& s, const ConditionVerdict& v) {
  const auto& W = s.effective_window();
  switch (v.kind) {
    case ConditionKind::boolean: {
      if (v.status == ConditionStatus::disproven) {
        for (auto& dc : direction_classes(s))
          if (dc.facets.size() < 2 && v.witness_facet && dc.facets.front() == *v.witness_facet) return true;
        return false;
      }
      if (v.status != ConditionStatus::proven) return true;
      std::vector<ConvexPolytope> pieces;
      for (auto& g : v.translates) {
        ConvexPolytope P = W.translated(neg(s.star(g)));
        if (interiors_intersect(P, W)) return false;
        pieces.push_back(std::move(P));
      }
      for (auto& cell : boolean_cells(s, nullptr))
        if (!covering_test(cell, pieces).covered) return false;
      return true;
    }
    case ConditionKind::quasicanonical: {
      if (v.status == ConditionStatus::proven) {
        for (auto& cert : v.certificate) {
          const Halfspace& h = W.halfspaces()[cert.facet];
          for (auto& lc : cert.covers) {
            if (!h.slack(lc.z).is_zero()) return false;
            if (!run_cover(s, cert.facet, lc).covered) return false;
          }
        }
        return true;
      }
      if (v.status == ConditionStatus::disproven) {
        if (v.obstruction == "stabilizer-rank") return stabilizer(s, facet_hyperplane(s, *v.witness_facet)).beta != s.n() - 1;
        if (v.certificate.empty() || !v.uncovered_point) return false;
        auto& cert = v.certificate.front();
        for (auto& lc : cert.covers)
          if (run_cover(s, cert.facet, lc).covered) return false;
        // the uncovered point lies on the window side, inside the box, outside every face translate
        const LocalCover& c1 = cert.covers.front();
        const Halfspace& h = W.halfspaces()[cert.facet];
        ConvexPolytope target = clip(box_about(c1.z, c1.eps), h);
        if (!target.contains_interior(*v.uncovered_point)) return false;
        for (auto& x : c1.translates)
          if (W.translated(neg(s.star(x))).contains(*v.uncovered_point)) return false;
        return true;
      }
      return true;
    }
    case ConditionKind::almost_canonical: {
      if (v.status == ConditionStatus::disproven)
        return v.obstruction == "stabilizer-span" || v.obstruction == "face-gap";
      if (v.status != ConditionStatus::proven) return true;
      for (auto& cert : v.certificate) {
        HyperplaneData hd = stabilizer(s, facet_hyperplane(s, cert.facet));
        if (s.n() == 1) continue;
        FacetLine fl = make_line(s, hd, 1);
        if (cert.period) {
          Vec u = hd.V_H[0];
          fl.period = *cert.period;
          fl.frame.init(hd.face.vertices()[0], u, dot(s.star(fl.period), u) / dot(u, u));
          std::tie(fl.fmin, fl.fmax) = t_range(fl.frame, hd.face, zero_vec(2));
        }
        std::vector<ConvexPolytope> pieces;
        for (auto& x : cert.face_translates) {
          if (!hd.stab.contains(x.to_intvec())) return false;
          FieldReal sh = fl.frame.shift(s.star(x));
          pieces.push_back(ConvexPolytope::box({fl.fmin + sh}, {fl.fmax + sh}));
        }
        if (!covering_test(ConvexPolytope::box({FieldReal(0)}, {FieldReal(1)}), pieces).covered) return false;
      }
      return true;
    }
  }
  return false;
}

namespace {

struct Sector {
  Vec direction;
};

struct ApproxFacets {
  std::vector<std::vector<double>> normal;
  std::vector<double> offset;

  explicit ApproxFacets(const ConvexPolytope& W) {
    for (auto& h : W.halfspaces()) {
      std::vector<double> a;
      for (auto& x : h.normal) a.push_back(x.to_double());
      normal.push_back(std::move(a));
      offset.push_back(h.offset.to_double());
    }
  }
  // slack of facet f at v + t
  double slack(size_t f, const std::vector<double>& v, const std::vector<double>& t) const {
    double x = offset[f];
    for (size_t i = 0; i < v.size(); ++i) x -= normal[f][i] * (v[i] + t[i]);
    return x;
  }
};

std::vector<double> approx_vec(const Vec& v) {
  std::vector<double> a;
  for (auto& x : v) a.push_back(x.to_double());
  return a;
}

// Lines of the C(c) arrangement through v, as canonical hyperplanes.
std::vector<AffineHyperplane> lines_through(const Scheme& s, const Vec& v, const std::vector<Vec>& box_stars) {
  std::vector<AffineHyperplane> out;
  const auto& hs = s.effective_window().halfspaces();
  ApproxFacets af(s.effective_window());
  std::vector<double> vd = approx_vec(v);
  for (auto& st : box_stars) {
    Vec t = neg(st);
    std::vector<double> sd = approx_vec(st);
    for (size_t f = 0; f < hs.size(); ++f) {
      if (std::fabs(af.slack(f, vd, sd)) > 1e-9) continue;
      Halfspace ht = hs[f].translated(t);
      if (!ht.slack(v).is_zero()) continue;
      AffineHyperplane H = AffineHyperplane::make(ht.normal, ht.offset);
      if (std::find(out.begin(), out.end(), H) == out.end()) out.push_back(H);
    }
  }
  return out;
}

std::vector<Vec> sector_directions(const std::vector<AffineHyperplane>& lines, int n) {
  if (n == 1) return {Vec{FieldReal(-1)}, Vec{FieldReal(1)}};
  std::vector<Vec> rays;
  for (auto& H : lines) {
    Vec d{-H.normal[1], H.normal[0]};
    rays.push_back(d);
    rays.push_back(neg(d));
  }
  std::sort(rays.begin(), rays.end(), angle_less);
  std::vector<Vec> out;
  for (size_t i = 0; i < rays.size(); ++i) out.push_back(rays[i] + rays[(i + 1) % rays.size()]);
  return out;
}

struct SlabStars {
  std::vector<Vec> exact;
  std::vector<std::vector<double>> approx;
};

SlabStars slab_stars(const Scheme& s, const Rational& R) {
  SlabStars out;
  for (auto& g : enum_slab(s, R)) {
    out.exact.push_back(s.star(g));
    out.approx.push_back(approx_vec(out.exact.back()));
  }
  return out;
}

// Membership of v + eps d in the open translates for all small eps > 0.
std::vector<bool> limit_signature(const Scheme& s, const Vec& v, const Vec& d, const SlabStars& stars) {
  const auto& hs = s.effective_window().halfspaces();
  ApproxFacets af(s.effective_window());
  std::vector<double> vd = approx_vec(v);
  std::vector<bool> sig;
  for (size_t t = 0; t < stars.exact.size(); ++t) {
    bool in = true;
    for (size_t f = 0; f < hs.size(); ++f) {
      double x = af.slack(f, vd, stars.approx[t]);
      int sg = x > 1e-9 ? 1 : x < -1e-9 ? -1 : hs[f].slack(v + stars.exact[t]).sign();
      if (sg > 0) continue;
      if (sg < 0 || dot(hs[f].normal, d).sign() >= 0) {
        in = false;
        break;
      }
    }
    sig.push_back(in);
  }
  return sig;
}

std::vector<bool> signature_at(const Scheme& s, const Vec& p, const SlabStars& stars) {
  std::vector<bool> sig;
  for (auto& st : stars.exact) sig.push_back(in_open_translate(s, p, st));
  return sig;
}

DemoRadius demo_at(const Scheme& s, const Vec& v, const std::vector<Vec>& dirs,
                   const std::vector<AffineHyperplane>& lines, const Rational& R, const SlabStars& stars) {
  DemoRadius out;
  out.R = R;
  std::map<std::vector<bool>, std::vector<size_t>> groups;
  for (size_t i = 0; i < dirs.size(); ++i) groups[limit_signature(s, v, dirs[i], stars)].push_back(i);
  const std::pair<const std::vector<bool>, std::vector<size_t>>* best = nullptr;
  for (auto& g : groups)
    if (!best || g.second.size() > best->second.size()) best = &g;
  if (!best || best->second.size() < 2) return out;
  // halve eps until the exact points realise the limiting signature
  Rational eps(1, 4);
  for (int it = 0; it < 200; ++it, eps /= 2) {
    std::vector<Vec> pts;
    bool ok = true;
    for (size_t i : best->second) {
      pts.push_back(v + FieldReal(eps) * dirs[i]);
      if (signature_at(s, pts.back(), stars) != best->first) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    out.eps = eps;
    out.points = std::move(pts);
    out.same_signature = true;
    break;
  }
  if (!out.same_signature) return out;
  out.distinct_regions = true;
  for (size_t a = 0; a < out.points.size(); ++a)
    for (size_t b = a + 1; b < out.points.size(); ++b) {
      bool sep = false;
      for (auto& H : lines)
        if (H.eval(out.points[a]).sign() * H.eval(out.points[b]).sign() < 0) sep = true;
      if (!sep) out.distinct_regions = false;
    }
  return out;
}

}  // namespace


RefinementDemo refinement_demo(const Scheme& s, const std::vector<Rational>& radii, int max_c) {
  RefinementDemo demo;
  if (s.n() > 2 || radii.empty()) {
    demo.detail = s.n() > 2 ? "internal dimension above 2" : "no radii";
    return demo;
  }
  const auto& W = s.effective_window();
  size_t best_size = 1;
  auto stars0 = slab_stars(s, radii.front());
  for (int c = 1; c <= max_c && best_size < 3; ++c) {
    std::vector<Vec> box_stars;
    for (auto& g : enum_box(s, Rational(c))) box_stars.push_back(s.star(g));
    // vertices of translates inside W, nearest translates first
    std::vector<std::pair<FieldReal, Vec>> keyed;
    for (auto& st : box_stars)
      for (auto& w : W.vertices()) {
        Vec v = w - st;
        if (W.contains_interior(v)) keyed.push_back({norm_squared(st), v});
      }
    std::stable_sort(keyed.begin(), keyed.end(), [](auto& a, auto& b) { return a.first < b.first; });
    std::vector<Vec> cand, seen;
    for (auto& [key, v] : keyed) {
      auto it = std::lower_bound(seen.begin(), seen.end(), v);
      if (it != seen.end() && *it == v) continue;
      seen.insert(it, v);
      cand.push_back(v);
    }
    for (auto& v : cand) {
      auto lines = lines_through(s, v, box_stars);
      if (s.n() == 2 && lines.size() < 2) continue;
      auto dirs = sector_directions(lines, s.n());
      DemoRadius first = demo_at(s, v, dirs, lines, radii.front(), stars0);
      if (!first.same_signature || !first.distinct_regions || first.points.size() <= best_size) continue;
      best_size = first.points.size();
      demo.c = c;
      demo.vertex = v;
      demo.directions = dirs;
      demo.radii = {first};
      if (best_size >= 3) break;
    }
  }
  if (!demo.vertex) {
    demo.detail = "no pair of cut regions sharing an acceptance signature was found";
    return demo;
  }
  std::vector<Vec> box_stars;
  for (auto& g : enum_box(s, demo.c)) box_stars.push_back(s.star(g));
  auto lines = lines_through(s, *demo.vertex, box_stars);
  demo.failure_found = true;
  for (size_t i = 1; i < radii.size(); ++i) demo.radii.push_back(demo_at(s, *demo.vertex, demo.directions, lines, radii[i], slab_stars(s, radii[i])));
  for (auto& r : demo.radii)
    if (!r.same_signature || !r.distinct_regions) demo.failure_found = false;
  if (!demo.failure_found) demo.detail = "the signatures separate at a larger radius";
  return demo;
}

}  // namespace cps
