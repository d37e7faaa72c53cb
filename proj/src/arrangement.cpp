#include "cps/arrangement.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <unordered_set>

#include "cps/enumerate.hpp"

namespace cps {

namespace {

constexpr double kTol = 1e-7;

std::pair<size_t, size_t> near_range(const std::vector<double>& a, double x) {
  size_t i = std::lower_bound(a.begin(), a.end(), x - kTol) - a.begin();
  size_t j = std::upper_bound(a.begin(), a.end(), x + kTol) - a.begin();
  return {i, j};
}

FieldReal from_int(const FieldPtr& f, const IntElem& e, const Integer& den) {
  std::vector<Rational> co(f->degree());
  for (int i = 0; i < f->degree(); ++i) {
    co[i] = Rational(to_integer(e.c[i]), den);
    co[i].canonicalize();
  }
  return FieldReal(f, co);
}

struct VecHash {
  size_t operator()(const std::vector<std::uint64_t>& v) const {
    size_t h = 1469598103934665603ull;
    for (auto x : v) h = (h ^ x) * 1099511628211ull + (h >> 29);
    return h;
  }
};

// Offsets of all translates of one direction class, as integral elements over
// a common denominator.
struct ClassForms {
  IntegralForm linear;              // normal . star(c)
  std::vector<IntElem> constants;   // sigma * facet offset, same denominator
  std::vector<double> coef_d;       // double value of each linear coefficient / den
  std::vector<double> const_d;
};

int facet_sign(const Vec& facet_normal, const Vec& class_normal) {
  for (size_t i = 0; i < class_normal.size(); ++i)
    if (!class_normal[i].is_zero()) return (facet_normal[i] / class_normal[i]).sign();
  return 1;
}

double elem_double(const IntElem& e, const std::vector<double>& pw, const Integer& den) {
  long double acc = 0;
  for (size_t i = 0; i < pw.size(); ++i) acc += (long double)e.c[i] * pw[i];
  return (double)(acc / den.get_d());
}

}  // namespace

std::vector<FieldReal> sorted_unique(std::vector<FieldReal> v) {
  std::vector<std::pair<double, size_t>> keyed(v.size());
  for (size_t i = 0; i < v.size(); ++i) keyed[i] = {v[i].to_double(), i};
  std::sort(keyed.begin(), keyed.end());
  std::vector<FieldReal> out;
  size_t i = 0;
  while (i < keyed.size()) {
    size_t j = i + 1;
    while (j < keyed.size() && keyed[j].first - keyed[j - 1].first < kTol) ++j;
    std::vector<FieldReal> run;
    for (size_t t = i; t < j; ++t) run.push_back(v[keyed[t].second]);
    std::sort(run.begin(), run.end());
    for (auto& x : run)
      if (out.empty() || !(out.back() == x)) out.push_back(x);
    i = j;
  }
  return out;
}

size_t CutFamily::line_count() const {
  size_t n = 0;
  for (auto& v : values) n += v.size();
  return n;
}

std::uint32_t CutFamily::rank(size_t c, const FieldReal& x, bool* on) const {
  auto [i, j] = near_range(approx[c], x.to_double());
  std::uint32_t r = (std::uint32_t)i;
  bool eq = false;
  for (size_t t = i; t < j; ++t) {
    int sg = (values[c][t] - x).sign();
    if (sg < 0) r = (std::uint32_t)(t + 1);
    if (sg == 0) eq = true;
  }
  if (on) *on = eq;
  return r;
}

std::vector<std::uint32_t> CutFamily::ranks(const Vec& point) const {
  std::vector<std::uint32_t> out(normals.size());
  for (size_t c = 0; c < normals.size(); ++c) out[c] = rank(c, dot(normals[c], point));
  return out;
}

std::vector<AffineHyperplane> CutFamily::hyperplanes() const {
  std::vector<AffineHyperplane> out;
  for (size_t c = 0; c < normals.size(); ++c)
    for (auto& t : values[c]) out.push_back({normals[c], t});
  return out;
}

namespace {

struct FamilyBuilder {
  const Scheme& s;
  std::vector<DirectionClass> classes;
  std::vector<ClassForms> forms;
  std::vector<double> pw;
  std::vector<double> lo_d, hi_d;
  std::vector<std::unordered_set<IntElem, IntElemHash>> seen;
  CutFamily fam;

  explicit FamilyBuilder(const Scheme& sc) : s(sc), classes(direction_classes(sc)) {
    auto& W = s.effective_window();
    auto& hs = W.halfspaces();
    double th = FieldReal::generator(s.field()).to_double();
    for (int i = 0; i < s.field()->degree(); ++i) pw.push_back(std::pow(th, i));
    FieldMatrix im = s.int_map();
    for (auto& cl : classes) {
      Vec coefs;
      for (int j = 0; j < s.k(); ++j) {
        FieldReal a;
        for (int i = 0; i < s.n(); ++i) a += cl.normal[i] * im(i, j);
        coefs.push_back(a);
      }
      for (size_t f : cl.facets) coefs.push_back(FieldReal(facet_sign(hs[f].normal, cl.normal)) * hs[f].offset);
      IntegralForm all = IntegralForm::make(coefs, FieldReal(s.field(), Rational(0)));
      ClassForms cf;
      cf.linear.den = all.den;
      cf.linear.constant = IntElem{};
      for (int j = 0; j < s.k(); ++j) cf.linear.coef.push_back(all.coef[j]);
      for (size_t f = 0; f < cl.facets.size(); ++f) cf.constants.push_back(all.coef[s.k() + f]);
      for (auto& e : cf.linear.coef) cf.coef_d.push_back(elem_double(e, pw, all.den));
      for (auto& e : cf.constants) cf.const_d.push_back(elem_double(e, pw, all.den));
      forms.push_back(std::move(cf));
      auto [lo, hi] = W.range(cl.normal);
      fam.normals.push_back(cl.normal);
      fam.lo.push_back(lo);
      fam.hi.push_back(hi);
      lo_d.push_back(lo.to_double());
      hi_d.push_back(hi.to_double());
    }
    seen.resize(classes.size());
  }

  void add(const std::int64_t* c) {
    for (size_t cl = 0; cl < classes.size(); ++cl) {
      auto& cf = forms[cl];
      double lin = 0;
      for (int j = 0; j < s.k(); ++j) lin += (double)c[j] * cf.coef_d[j];
      bool any = false;
      for (double cd : cf.const_d) {
        double v = lin + cd;
        if (v >= lo_d[cl] - kTol && v <= hi_d[cl] + kTol) any = true;
      }
      if (!any) continue;
      IntElem base = cf.linear.eval(c);
      for (size_t f = 0; f < cf.constants.size(); ++f) {
        double v = lin + cf.const_d[f];
        if (v < lo_d[cl] - kTol || v > hi_d[cl] + kTol) continue;
        seen[cl].insert(base + cf.constants[f]);
      }
    }
  }

  CutFamily finish() {
    for (size_t cl = 0; cl < classes.size(); ++cl) {
      std::vector<FieldReal> vals;
      for (auto& e : seen[cl]) {
        FieldReal x = from_int(s.field(), e, forms[cl].linear.den);
        double xd = x.to_double();
        if (xd < lo_d[cl] + kTol || xd > hi_d[cl] - kTol)
          if (x < fam.lo[cl] || x > fam.hi[cl]) continue;
        vals.push_back(std::move(x));
      }
      vals = sorted_unique(std::move(vals));
      std::vector<double> ap;
      for (auto& v : vals) ap.push_back(v.to_double());
      fam.values.push_back(std::move(vals));
      fam.approx.push_back(std::move(ap));
    }
    return std::move(fam);
  }
};

}  // namespace

CutFamily cut_family(const Scheme& s, const std::vector<LatticePoint>& translates) {
  FamilyBuilder b(s);
  for (auto& g : translates) b.add(g.c.data());
  return b.finish();
}

namespace {

CutFamily cut_family_slab(const Scheme& s, const Rational& r) {
  FamilyBuilder b(s);
  InternalRegion reg;
  reg.polytope = &s.window_difference();
  enumerate_lattice(s, r, reg, [&](const std::int64_t* c) { b.add(c); });
  return b.finish();
}

CutFamily cut_family_box(const Scheme& s, const Rational& r) {
  FamilyBuilder b(s);
  InternalRegion reg;
  reg.radius = r;
  enumerate_lattice(s, r, reg, [&](const std::int64_t* c) { b.add(c); });
  return b.finish();
}

// Rank bounds on class c for the constraint normal_c . x < u (upper) or > u.
std::int64_t upper_rank(const CutFamily& fam, size_t c, const FieldReal& u) {
  bool on = false;
  std::uint32_t r = fam.rank(c, u, &on);
  if (on) return r;
  if (u >= fam.hi[c]) return (std::int64_t)fam.values[c].size();
  if (u <= fam.lo[c]) return -1;
  throw std::logic_error("translate facet missing from the cut family");
}

std::int64_t lower_rank(const CutFamily& fam, size_t c, const FieldReal& u) {
  bool on = false;
  std::uint32_t r = fam.rank(c, u, &on);
  if (on) return (std::int64_t)r + 1;
  if (u <= fam.lo[c]) return 0;
  if (u >= fam.hi[c]) return (std::int64_t)fam.values[c].size() + 1;
  throw std::logic_error("translate facet missing from the cut family");
}

}  // namespace

bool RankBox::empty() const {
  for (size_t c = 0; c < lo.size(); ++c)
    if (lo[c] > hi[c]) return true;
  return false;
}

bool RankBox::contains(const std::uint32_t* rho) const {
  for (size_t c = 0; c < lo.size(); ++c)
    if ((std::int64_t)rho[c] < lo[c] || (std::int64_t)rho[c] > hi[c]) return false;
  return true;
}

RankBox rank_box(const Scheme& s, const CutFamily& fam, const LatticePoint& g) {
  auto& hs = s.effective_window().halfspaces();
  Vec st = s.star(g);
  size_t m = fam.normals.size();
  RankBox b;
  b.lo.assign(m, 0);
  b.hi.resize(m);
  for (size_t c = 0; c < m; ++c) b.hi[c] = (std::int64_t)fam.values[c].size();
  for (auto& h : hs) {
    AffineHyperplane H = AffineHyperplane::make(h.normal, h.offset);
    size_t c = 0;
    while (c < m && !(fam.normals[c] == H.normal)) ++c;
    if (c == m) throw std::logic_error("facet direction missing from the cut family");
    int sg = facet_sign(h.normal, fam.normals[c]);
    FieldReal u = FieldReal(sg) * h.offset - dot(fam.normals[c], st);
    if (sg > 0)
      b.hi[c] = std::min(b.hi[c], upper_rank(fam, c, u));
    else
      b.lo[c] = std::max(b.lo[c], lower_rank(fam, c, u));
  }
  return b;
}

std::vector<std::vector<std::uint32_t>> arrangement_cells(const Scheme& s, const CutFamily& fam) {
  std::vector<std::vector<std::uint32_t>> cells;
  RankBox wbox = rank_box(s, fam, LatticePoint::zero(s.k()));
  size_t m = fam.normals.size();
  if (s.n() == 1) {
    for (std::uint32_t r = 0; r <= fam.values[0].size(); ++r)
      if (wbox.contains(&r)) cells.push_back({r});
    return cells;
  }
  if (s.n() != 2) throw std::invalid_argument("arrangement cells need internal dimension <= 2");

  // generic height functional f = (1, q): no line direction is level
  FieldReal q;
  std::vector<Vec> up(m);
  for (long den = 7;; den += 2) {
    q = FieldReal(Rational(2, den));
    bool ok = true;
    for (size_t c = 0; c < m; ++c) {
      Vec u = {-fam.normals[c][1], fam.normals[c][0]};
      FieldReal h = u[0] + q * u[1];
      if (h.is_zero()) ok = false;
      if (h.sign() < 0) u = {-u[0], -u[1]};
      up[c] = u;
    }
    if (ok) break;
  }
  // classes in counterclockwise order of their upward rays
  std::vector<size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    if (a == b) return false;
    return (up[a][0] * up[b][1] - up[a][1] * up[b][0]).sign() > 0;
  });
  std::vector<size_t> pos(m);
  for (size_t i = 0; i < m; ++i) pos[order[i]] = i;
  // side[x][y][c]: sign of normal_c . (up_x + up_y)
  std::vector<std::vector<std::vector<int>>> side(m, std::vector<std::vector<int>>(m, std::vector<int>(m, 0)));
  for (size_t x = 0; x < m; ++x)
    for (size_t y = 0; y < m; ++y)
      for (size_t c = 0; c < m; ++c) side[x][y][c] = dot(fam.normals[c], up[x] + up[y]).sign();

  std::vector<std::uint32_t> rho(m), vrank(m);
  std::vector<int> through_at(m);
  for (size_t a = 0; a < m; ++a)
    for (size_t b = a + 1; b < m; ++b) {
      FieldMatrix M = FieldMatrix::from_rows({fam.normals[a], fam.normals[b]});
      FieldMatrix Minv = inverse(M);
      // normal_c . x = p_c t_a + q_c t_b at the vertex
      std::vector<FieldReal> pc(m), qc(m);
      std::vector<double> pd(m), qd(m);
      for (size_t c = 0; c < m; ++c) {
        pc[c] = fam.normals[c][0] * Minv(0, 0) + fam.normals[c][1] * Minv(1, 0);
        qc[c] = fam.normals[c][0] * Minv(0, 1) + fam.normals[c][1] * Minv(1, 1);
        pd[c] = pc[c].to_double();
        qd[c] = qc[c].to_double();
      }
      auto& va = fam.values[a];
      auto& vb = fam.values[b];
      for (size_t ia = 0; ia < va.size(); ++ia) {
        double ta = fam.approx[a][ia];
        // t_b range keeping the vertex inside the closed class ranges of W
        double blo = fam.approx[b].empty() ? 0 : fam.approx[b].front(), bhi = fam.approx[b].empty() ? -1 : fam.approx[b].back();
        for (size_t c = 0; c < m; ++c) {
          if (c == a || c == b) continue;
          double lo = fam.lo[c].to_double() - pd[c] * ta, hi = fam.hi[c].to_double() - pd[c] * ta;
          if (std::fabs(qd[c]) < 1e-12) continue;
          double x = lo / qd[c], y = hi / qd[c];
          if (x > y) std::swap(x, y);
          blo = std::max(blo, x);
          bhi = std::min(bhi, y);
        }
        size_t ib0 = std::lower_bound(fam.approx[b].begin(), fam.approx[b].end(), blo - kTol) - fam.approx[b].begin();
        size_t ib1 = std::upper_bound(fam.approx[b].begin(), fam.approx[b].end(), bhi + kTol) - fam.approx[b].begin();
        for (size_t ib = ib0; ib < ib1; ++ib) {
          double tb = fam.approx[b][ib];
          bool skip = false, outside = false;
          std::fill(through_at.begin(), through_at.end(), -1);
          through_at[a] = (int)ia;
          through_at[b] = (int)ib;
          vrank[a] = (std::uint32_t)ia;
          vrank[b] = (std::uint32_t)ib;
          for (size_t c = 0; c < m && !skip && !outside; ++c) {
            if (c == a || c == b) continue;
            double w = pd[c] * ta + qd[c] * tb;
            auto& ap = fam.approx[c];
            auto [i, j] = near_range(ap, w);
            bool near_end = w < fam.lo[c].to_double() + kTol || w > fam.hi[c].to_double() - kTol;
            if (i == j && !near_end) {
              if (w < fam.lo[c].to_double() || w > fam.hi[c].to_double()) outside = true;
              vrank[c] = (std::uint32_t)i;
              continue;
            }
            FieldReal we = pc[c] * va[ia] + qc[c] * vb[ib];
            if (we < fam.lo[c] || we > fam.hi[c]) {
              outside = true;
              break;
            }
            bool on = false;
            vrank[c] = fam.rank(c, we, &on);
            if (on) {
              through_at[c] = (int)vrank[c];
              if (c < b) skip = true;  // counted from the two smallest classes
            }
          }
          if (skip || outside) continue;
          // upward rays of the lines through the vertex, counterclockwise
          std::vector<size_t> thr;
          for (size_t c = 0; c < m; ++c)
            if (through_at[c] >= 0) thr.push_back(c);
          std::sort(thr.begin(), thr.end(), [&](size_t x, size_t y) { return pos[x] < pos[y]; });
          for (size_t t = 0; t + 1 < thr.size(); ++t) {
            size_t x = thr[t], y = thr[t + 1];
            for (size_t c = 0; c < m; ++c) {
              if (through_at[c] >= 0)
                rho[c] = (std::uint32_t)through_at[c] + (side[x][y][c] > 0 ? 1 : 0);
              else
                rho[c] = vrank[c];
            }
            if (wbox.contains(rho.data())) cells.push_back(rho);
          }
        }
      }
    }
  std::sort(cells.begin(), cells.end());
  return cells;
}

size_t count_signatures(const Scheme& s, const CutFamily& fam, const std::vector<LatticePoint>& slab,
                        const std::vector<std::vector<std::uint32_t>>& cells) {
  if (cells.empty()) return 0;
  size_t m = fam.normals.size();
  RankBox wbox = rank_box(s, fam, LatticePoint::zero(s.k()));
  // translates whose box holds all cells or none do not separate signatures
  std::vector<RankBox> boxes;
  for (auto& g : slab) {
    RankBox b = rank_box(s, fam, g);
    bool all = true, none = false;
    for (size_t c = 0; c < m; ++c) {
      if (b.lo[c] > wbox.lo[c] || b.hi[c] < wbox.hi[c]) all = false;
      if (std::max(b.lo[c], wbox.lo[c]) > std::min(b.hi[c], wbox.hi[c])) none = true;
    }
    if (!all && !none) boxes.push_back(std::move(b));
  }
  size_t nb = boxes.size(), words = (nb + 63) / 64;
  std::vector<std::int64_t> flat(2 * m * nb);
  for (size_t i = 0; i < nb; ++i)
    for (size_t c = 0; c < m; ++c) {
      flat[(2 * i) * m + c] = boxes[i].lo[c];
      flat[(2 * i + 1) * m + c] = boxes[i].hi[c];
    }
  std::unordered_set<std::vector<std::uint64_t>, VecHash> sigs;
  std::vector<std::uint64_t> bits(words);
  for (auto& rho : cells) {
    std::fill(bits.begin(), bits.end(), 0);
    for (size_t i = 0; i < nb; ++i) {
      const std::int64_t* lo = &flat[(2 * i) * m];
      const std::int64_t* hi = lo + m;
      bool in = true;
      for (size_t c = 0; c < m; ++c)
        if ((std::int64_t)rho[c] < lo[c] || (std::int64_t)rho[c] > hi[c]) {
          in = false;
          break;
        }
      if (in) bits[i >> 6] |= std::uint64_t(1) << (i & 63);
    }
    sigs.insert(bits);
  }
  return sigs.size();
}

ArrangementCounts arrangement_counts(const Scheme& s, const Rational& r, bool with_box) {
  ArrangementCounts out;
  CutFamily slab_fam = cut_family_slab(s, r);
  auto cells = arrangement_cells(s, slab_fam);
  out.cut_slab = cells.size();
  out.acceptance = count_signatures(s, slab_fam, enum_slab(s, r), cells);
  if (with_box) out.cut_box = arrangement_cells(s, cut_family_box(s, r)).size();
  return out;
}

}  // namespace cps
