#include "cps/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "cps/enumerate.hpp"

namespace cps {

namespace {

constexpr double kTol = 1e-7;

struct WordsHash {
  size_t operator()(const std::vector<std::uint64_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull + (h >> 31);
    return h;
  }
};

struct CellHash {
  size_t operator()(const std::vector<std::int64_t>& v) const {
    size_t h = 0x9e3779b97f4a7c15ull;
    for (auto x : v) h = (h ^ (size_t)x) * 0xff51afd7ed558ccdull + (h >> 27);
    return h;
  }
};

}  // namespace

int alpha(const Scheme& s) {
  auto fl = flags(s);
  if (fl.empty()) throw std::invalid_argument("the window has no flags");
  int a = 0;
  for (auto& f : fl) a = std::max(a, f.alpha_f);
  return a;
}

int alpha_prime(const Scheme& s) {
  auto fl = flags(s);
  if (fl.empty()) throw std::invalid_argument("the window has no flags");
  int a = 0;
  for (auto& f : fl) a = std::max(a, f.alpha_prime_f);
  return a;
}

ComplexityReport exponent_report(const Scheme& s) {
  ComplexityReport rep;
  rep.hyperplanes = all_stabilizers(s);
  rep.classes = direction_classes(s);
  rep.flags = flags(s, rep.classes);
  if (rep.flags.empty()) throw std::invalid_argument("the window has no flags");
  for (auto& f : rep.flags) {
    rep.alpha = std::max(rep.alpha, f.alpha_f);
    rep.alpha_prime = std::max(rep.alpha_prime, f.alpha_prime_f);
  }
  rep.aperiodic = is_aperiodic(s);
  rep.bounds_hold = rep.alpha_prime <= rep.alpha;
  if (rep.aperiodic) rep.bounds_hold = rep.bounds_hold && s.d() <= rep.alpha_prime && rep.alpha_prime <= s.d() * s.n();
  return rep;
}

SeriesRow count_row(const Scheme& s, const Rational& r, bool with_box) {
  SeriesRow row;
  row.r = r;
  if (s.n() <= 2) {
    auto c = arrangement_counts(s, r, with_box);
    row.p = c.acceptance;
    row.cuts = c.cut_box;
    row.cuts_slab = c.cut_slab;
    return row;
  }
  auto acc = acceptance_count(s, r);
  row.p = acc.count;
  row.cuts_slab = acc.partition.regions.size();
  if (with_box) row.cuts = cut_regions(s, r, CutVariant::box).regions.size();
  return row;
}

double slope_fit(const std::vector<std::pair<double, double>>& series) {
  if (series.size() < 3) throw std::invalid_argument("slope fit needs at least three points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (auto& [r, c] : series) {
    if (!(r > 0) || !(c > 0)) throw std::invalid_argument("slope fit needs positive values");
    double x = std::log(r), y = std::log(c);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = (double)series.size();
  double den = n * sxx - sx * sx;
  if (std::fabs(den) < 1e-300) throw std::invalid_argument("slope fit needs distinct radii");
  return (n * sxy - sx * sy) / den;
}

size_t hyperplane_hits(const Scheme& s, const AffineHyperplane& H_in, const ConvexPolytope& B, const Rational& r) {
  if (B.empty()) return 0;
  AffineHyperplane H = AffineHyperplane::make(H_in.normal, H_in.offset);
  auto [lo, hi] = B.range(H.normal);
  double lo_d = lo.to_double(), hi_d = hi.to_double();
  FieldMatrix im = s.int_map();
  Vec coefs;
  for (int j = 0; j < s.k(); ++j) {
    FieldReal a;
    for (int i = 0; i < s.n(); ++i) a += H.normal[i] * im(i, j);
    coefs.push_back(a);
  }
  IntegralForm form = IntegralForm::make(coefs, H.offset);
  std::vector<double> cd;
  for (auto& a : coefs) cd.push_back(a.to_double());
  double off = H.offset.to_double();
  std::unordered_set<IntElem, IntElemHash> inside, boundary;
  // strip {lo - b <= normal . x <= hi - b} inside the cube [-r, r]^n; the ball is filtered below
  const int n_int = s.n();
  std::vector<Halfspace> hs;
  for (int i = 0; i < n_int; ++i) {
    Vec e(n_int);
    e[i] = 1;
    hs.push_back({e, FieldReal(r)});
    e[i] = -1;
    hs.push_back({e, FieldReal(r)});
  }
  hs.push_back({H.normal, hi - H.offset});
  hs.push_back({FieldReal(-1) * H.normal, H.offset - lo});
  FieldReal reach;
  for (auto& a : H.normal) reach += a.abs() * FieldReal(r);
  if (hi - H.offset < -reach || lo - H.offset > reach) return 0;
  ConvexPolytope strip = ConvexPolytope::from_halfspaces(n_int, hs);
  if (strip.empty()) return 0;
  InternalRegion reg;
  reg.polytope = &strip;
  std::vector<std::vector<double>> im_d(n_int, std::vector<double>(s.k()));
  for (int i = 0; i < n_int; ++i)
    for (int j = 0; j < s.k(); ++j) im_d[i][j] = im(i, j).to_double();
  const double r2 = r.get_d() * r.get_d();
  const FieldReal r2_exact(r * r);
  enumerate_lattice(s, r, reg, [&](const std::int64_t* c) {
    double q = 0;
    for (int i = 0; i < n_int; ++i) {
      double x = 0;
      for (int j = 0; j < s.k(); ++j) x += (double)c[j] * im_d[i][j];
      q += x * x;
    }
    if (q > r2 * (1 + 1e-9) + 1e-9) return;
    if (q > r2 * (1 - 1e-9) - 1e-9) {
      LatticePoint g(std::vector<std::int64_t>(c, c + s.k()));
      if (norm_squared(s.project_int(g)) > r2_exact) return;
    }
    double v = off;
    for (int j = 0; j < s.k(); ++j) v += (double)c[j] * cd[j];
    if (v < lo_d - kTol || v > hi_d + kTol) return;
    IntElem e = form.eval(c);
    if (v > lo_d + kTol && v < hi_d - kTol)
      inside.insert(e);
    else
      boundary.insert(e);
  });
  size_t n = inside.size();
  for (auto& e : boundary) {
    if (inside.count(e)) continue;
    std::vector<Rational> co(s.field()->degree());
    for (int i = 0; i < s.field()->degree(); ++i) {
      co[i] = Rational(to_integer(e.c[i]), form.den);
      co[i].canonicalize();
    }
    FieldReal t(s.field(), co);
    if (lo <= t && t <= hi) ++n;
  }
  return n;
}

size_t arrangement_vertices(const std::vector<AffineHyperplane>& cuts, const ConvexPolytope& region) {
  if (cuts.empty() || region.empty()) return 0;
  size_t n = region.dim(), m = cuts.size();
  if (m < n) return 0;
  std::set<Vec> pts;
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    std::vector<Vec> rows;
    Vec rhs;
    for (size_t i : idx) {
      rows.push_back(cuts[i].normal);
      rhs.push_back(cuts[i].offset);
    }
    FieldMatrix M = FieldMatrix::from_rows(rows);
    if (rank_over_field(M) == n) {
      Vec x = solve(M, rhs);
      if (region.contains(x)) pts.insert(x);
    }
    int i = (int)n - 1;
    while (i >= 0 && idx[i] == m - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return pts.size();
}

double tile_scale(const Scheme& s) {
  double covol = std::fabs(determinant(s.coord_map()).to_double());
  double vol = volume(s.effective_window()).to_double();
  return std::pow(covol / vol, 1.0 / s.d());
}

std::vector<size_t> bruteforce_patch_counts(const Scheme& s, const std::vector<Rational>& radii,
                                            const Rational& scan_radius) {
  if (radii.empty()) return {};
  Rational rmax = *std::max_element(radii.begin(), radii.end());
  int k = s.k(), d = s.d();
  // candidate displacements, ordered by exact physical length
  auto slab = enum_slab(s, rmax);
  std::vector<FieldReal> norms;
  for (auto& g : slab) norms.push_back(s.phys_norm_squared(g));
  std::vector<size_t> order(slab.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](size_t a, size_t b) { return norms[a] < norms[b]; });
  std::unordered_map<LatticePoint, std::uint32_t, LatticePointHash> index;
  std::vector<FieldReal> sorted_norms;
  for (size_t i = 0; i < order.size(); ++i) {
    index.emplace(slab[order[i]], (std::uint32_t)i);
    sorted_norms.push_back(norms[order[i]]);
  }
  std::vector<size_t> cut;
  for (auto& r : radii) {
    FieldReal r2(Rational(r * r));
    cut.push_back(std::upper_bound(sorted_norms.begin(), sorted_norms.end(), r2) - sorted_norms.begin());
  }

  auto pts = generate_points(s, scan_radius);
  std::vector<double> T(d * k);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < k; ++j) T[i * k + j] = s.coord_map()(i, j).to_double();
  std::vector<double> phys(pts.size() * d);
  for (size_t p = 0; p < pts.size(); ++p)
    for (int i = 0; i < d; ++i) {
      double v = 0;
      for (int j = 0; j < k; ++j) v += T[i * k + j] * (double)pts[p].c[j];
      phys[p * d + i] = v;
    }
  double cell = rmax.get_d() + 1e-6, rmax2 = rmax.get_d() * rmax.get_d() + kTol;
  std::unordered_map<std::vector<std::int64_t>, std::vector<std::uint32_t>, CellHash> grid;
  std::vector<std::int64_t> key(d);
  for (size_t p = 0; p < pts.size(); ++p) {
    for (int i = 0; i < d; ++i) key[i] = (std::int64_t)std::floor(phys[p * d + i] / cell);
    grid[key].push_back((std::uint32_t)p);
  }
  double inner = scan_radius.get_d() - rmax.get_d() - kTol;
  size_t words = (slab.size() + 63) / 64;
  std::vector<std::unordered_set<std::vector<std::uint64_t>, WordsHash>> seen(radii.size());
  std::vector<std::uint64_t> bits(words);
  LatticePoint diff = LatticePoint::zero(k);
  std::vector<std::int64_t> nk(d);
  for (size_t p = 0; p < pts.size(); ++p) {
    double n2 = 0;
    for (int i = 0; i < d; ++i) n2 += phys[p * d + i] * phys[p * d + i];
    if (inner < 0 || n2 > inner * inner) continue;
    std::fill(bits.begin(), bits.end(), 0);
    for (int i = 0; i < d; ++i) key[i] = (std::int64_t)std::floor(phys[p * d + i] / cell);
    // all 3^d neighbouring grid cells
    std::vector<int> off(d, -1);
    while (true) {
      for (int i = 0; i < d; ++i) nk[i] = key[i] + off[i];
      auto it = grid.find(nk);
      if (it != grid.end())
        for (auto q : it->second) {
          double dd = 0;
          for (int i = 0; i < d; ++i) {
            double t = phys[q * d + i] - phys[p * d + i];
            dd += t * t;
          }
          if (dd > rmax2) continue;
          for (int j = 0; j < k; ++j) diff.c[j] = pts[q].c[j] - pts[p].c[j];
          auto f = index.find(diff);
          if (f != index.end()) bits[f->second >> 6] |= std::uint64_t(1) << (f->second & 63);
        }
      int i = 0;
      while (i < d && off[i] == 1) off[i++] = -1;
      if (i == d) break;
      ++off[i];
    }
    for (size_t ri = 0; ri < radii.size(); ++ri) {
      size_t c = cut[ri], w = (c + 63) / 64;
      std::vector<std::uint64_t> pre(bits.begin(), bits.begin() + w);
      if (c % 64) pre.back() &= (std::uint64_t(1) << (c % 64)) - 1;
      seen[ri].insert(std::move(pre));
    }
  }
  std::vector<size_t> out;
  for (auto& st : seen) out.push_back(st.size());
  return out;
}

}  // namespace cps
