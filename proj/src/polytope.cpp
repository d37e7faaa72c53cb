#include "cps/polytope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace cps {

namespace {

// Sign of offset - normal . x, decided in doubles when clear of zero.
int slack_sign(const Vec& normal, const FieldReal& offset, const Vec& x) {
  double sl = offset.to_double(), mag = 1 + std::fabs(sl);
  for (size_t j = 0; j < x.size(); ++j) {
    double t = normal[j].to_double() * x[j].to_double();
    sl -= t;
    mag += std::fabs(t);
  }
  if (std::fabs(sl) > 1e-6 * mag) return sl > 0 ? 1 : -1;
  return (offset - dot(normal, x)).sign();
}

int affine_rank(const std::vector<Vec>& pts, const std::vector<int>& idx) {
  if (idx.empty()) return -1;
  if (idx.size() == 1) return 0;
  std::vector<Vec> rows;
  for (size_t i = 1; i < idx.size(); ++i) rows.push_back(pts[idx[i]] - pts[idx[0]]);
  return (int)rank_over_field(FieldMatrix::from_rows(rows));
}

std::vector<int> common(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

template <class F>
void for_each_subset(int m, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > m) return;
  while (true) {
    f(idx);
    int i = k - 1;
    while (i >= 0 && idx[i] == m - k + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

FieldReal cross2(const Vec& a, const Vec& b) { return a[0] * b[1] - a[1] * b[0]; }

// Unit normal direction of the hyperplane through n affinely independent points.
std::optional<Vec> normal_through(const std::vector<Vec>& pts) {
  std::vector<Vec> rows;
  for (size_t i = 1; i < pts.size(); ++i) rows.push_back(pts[i] - pts[0]);
  auto ns = nullspace(FieldMatrix::from_rows(rows));
  if (ns.size() != 1) return std::nullopt;
  return ns[0];
}

}  // namespace

struct PolytopeAccess {
  static ConvexPolytope from_parts(size_t dim, std::vector<Halfspace> hs, std::vector<Vec> vs) {
    ConvexPolytope p;
    p.dim_ = dim;
    p.halfspaces_ = std::move(hs);
    p.vertices_ = std::move(vs);
    p.finalize();
    return p;
  }

  static ConvexPolytope make(size_t dim, std::vector<Halfspace> hs, std::vector<Vec> vs,
                             std::vector<std::vector<int>> inc) {
    ConvexPolytope p;
    p.dim_ = dim;
    p.affine_dim_ = (int)dim;
    p.halfspaces_ = std::move(hs);
    p.vertices_ = std::move(vs);
    p.incidence_ = std::move(inc);
    // prune halfspaces with fewer than dim tight vertices
    std::vector<int> count(p.halfspaces_.size(), 0);
    for (auto& inc_v : p.incidence_)
      for (int h : inc_v) ++count[h];
    std::vector<int> remap(p.halfspaces_.size(), -1);
    std::vector<Halfspace> kept;
    for (size_t h = 0; h < p.halfspaces_.size(); ++h)
      if (count[h] >= (int)dim) {
        remap[h] = (int)kept.size();
        kept.push_back(std::move(p.halfspaces_[h]));
      }
    p.halfspaces_ = std::move(kept);
    for (auto& inc_v : p.incidence_) {
      std::vector<int> out;
      for (int h : inc_v)
        if (remap[h] >= 0) out.push_back(remap[h]);
      inc_v = std::move(out);
    }
    return p;
  }

  static std::pair<ConvexPolytope, ConvexPolytope> split_full(const ConvexPolytope& p, const Vec& normal,
                                                              const FieldReal& offset, const std::vector<FieldReal>& val,
                                                              const std::vector<int>& sg) {
    const auto& vs = p.vertices_;
    const auto& inc = p.incidence_;
    size_t n = p.dim_;
    int m = (int)p.halfspaces_.size();
    std::vector<Vec> nv;
    std::vector<std::vector<int>> ninc;
    for (size_t i = 0; i < vs.size(); ++i) {
      if (sg[i] >= 0) continue;
      for (size_t j = 0; j < vs.size(); ++j) {
        if (sg[j] <= 0) continue;
        auto c = common(inc[i], inc[j]);
        if (c.size() + 1 < n) continue;
        FieldReal t = val[i] / (val[i] - val[j]);
        nv.push_back(vs[i] + t * (vs[j] - vs[i]));
        c.push_back(m);
        ninc.push_back(std::move(c));
      }
    }
    Vec neg_n(normal.size());
    for (size_t i = 0; i < n; ++i) neg_n[i] = -normal[i];
    auto build = [&](int side) {
      std::vector<Halfspace> hs = p.halfspaces_;
      if (side < 0) hs.push_back({normal, offset});
      else hs.push_back({neg_n, -offset});
      std::vector<Vec> out_v;
      std::vector<std::vector<int>> out_inc;
      for (size_t i = 0; i < vs.size(); ++i) {
        if (sg[i] * side < 0) continue;
        out_v.push_back(vs[i]);
        auto ii = inc[i];
        if (sg[i] == 0) ii.push_back(m);
        out_inc.push_back(std::move(ii));
      }
      for (size_t i = 0; i < nv.size(); ++i) {
        out_v.push_back(nv[i]);
        out_inc.push_back(ninc[i]);
      }
      return make(n, std::move(hs), std::move(out_v), std::move(out_inc));
    };
    return {build(1), build(-1)};
  }
};

namespace {

// Split by {normal.x >= offset} / {normal.x <= offset} without canonicalizing.
std::pair<ConvexPolytope, ConvexPolytope> split_raw(const ConvexPolytope& p, const Vec& normal, const FieldReal& offset) {
  if (p.empty()) return {p, p};
  const auto& vs = p.vertices();
  std::vector<FieldReal> val(vs.size());
  std::vector<int> sg(vs.size());
  bool pos = false, neg = false;
  for (size_t i = 0; i < vs.size(); ++i) {
    sg[i] = -slack_sign(normal, offset, vs[i]);
    if (sg[i] > 0) pos = true;
    if (sg[i] < 0) neg = true;
  }
  if (!neg && !pos) return {p, p};
  if (!neg) return {p, ConvexPolytope()};
  if (!pos) return {ConvexPolytope(), p};
  for (size_t i = 0; i < vs.size(); ++i) val[i] = dot(normal, vs[i]) - offset;
  if (!p.full_dimensional()) {
    std::vector<Halfspace> up = p.halfspaces(), down = p.halfspaces();
    Vec neg_n(normal.size());
    for (size_t i = 0; i < normal.size(); ++i) neg_n[i] = -normal[i];
    up.push_back({neg_n, -offset});
    down.push_back({normal, offset});
    return {ConvexPolytope::from_halfspaces(p.dim(), up), ConvexPolytope::from_halfspaces(p.dim(), down)};
  }
  return PolytopeAccess::split_full(p, normal, offset, val, sg);
}

}  // namespace

Halfspace Halfspace::flipped() const {
  Vec n(normal.size());
  for (size_t i = 0; i < n.size(); ++i) n[i] = -normal[i];
  return {n, -offset};
}

AffineHyperplane AffineHyperplane::make(const Vec& normal, const FieldReal& offset) {
  for (size_t i = 0; i < normal.size(); ++i) {
    if (normal[i].is_zero()) continue;
    FieldReal inv = normal[i].inverse();
    AffineHyperplane h;
    h.normal = inv * normal;
    h.offset = offset * inv;
    return h;
  }
  throw std::invalid_argument("hyperplane normal is zero");
}

void ConvexPolytope::finalize() {
  // incidence from scratch, then prune redundant halfspaces
  incidence_.assign(vertices_.size(), {});
  std::vector<std::vector<double>> hd;
  for (auto& h : halfspaces_) {
    hd.emplace_back();
    for (auto& x : h.normal) hd.back().push_back(x.to_double());
    hd.back().push_back(h.offset.to_double());
  }
  for (size_t v = 0; v < vertices_.size(); ++v) {
    std::vector<double> xd;
    for (auto& x : vertices_[v]) xd.push_back(x.to_double());
    for (size_t h = 0; h < halfspaces_.size(); ++h) {
      // clearly nonzero slacks skip the exact test
      double sl = hd[h][dim_], mag = 1 + std::fabs(sl);
      for (size_t j = 0; j < dim_; ++j) sl -= hd[h][j] * xd[j], mag += std::fabs(hd[h][j] * xd[j]);
      if (std::fabs(sl) > 1e-6 * mag) continue;
      if (halfspaces_[h].slack(vertices_[v]).is_zero()) incidence_[v].push_back((int)h);
    }
  }
  std::vector<int> all(vertices_.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = (int)i;
  affine_dim_ = affine_rank(vertices_, all);
  std::vector<std::vector<int>> tight(halfspaces_.size());
  for (size_t v = 0; v < vertices_.size(); ++v)
    for (int h : incidence_[v]) tight[h].push_back((int)v);
  std::vector<int> keep;
  std::vector<std::vector<int>> seen;
  for (size_t h = 0; h < halfspaces_.size(); ++h) {
    bool facet;
    if (affine_dim_ == (int)dim_) {
      // in the plane two distinct tight vertices already span the facet line
      facet = (int)tight[h].size() >= (int)dim_ && (dim_ <= 2 || affine_rank(vertices_, tight[h]) == (int)dim_ - 1);
      if (facet) {
        if (std::find(seen.begin(), seen.end(), tight[h]) != seen.end()) facet = false;
        else seen.push_back(tight[h]);
      }
    } else {
      facet = affine_rank(vertices_, tight[h]) >= affine_dim_ - 1;
    }
    if (facet) keep.push_back((int)h);
  }
  std::vector<int> remap(halfspaces_.size(), -1);
  std::vector<Halfspace> hs;
  for (size_t i = 0; i < keep.size(); ++i) {
    remap[keep[i]] = (int)i;
    hs.push_back(halfspaces_[keep[i]]);
  }
  halfspaces_ = std::move(hs);
  for (auto& inc : incidence_) {
    std::vector<int> out;
    for (int h : inc)
      if (remap[h] >= 0) out.push_back(remap[h]);
    inc = std::move(out);
  }
}

ConvexPolytope ConvexPolytope::from_halfspaces(size_t dim, const std::vector<Halfspace>& hs) {
  if (dim == 0) throw std::invalid_argument("dimension must be positive");
  for (auto& h : hs) {
    if (h.normal.size() != dim) throw std::invalid_argument("halfspace dimension mismatch");
    if (is_zero(h.normal)) throw std::invalid_argument("halfspace normal is zero");
  }
  int m = (int)hs.size();
  // boundedness: the recession cone {A x <= 0} must be {0}
  {
    std::vector<Vec> rows;
    for (auto& h : hs) rows.push_back(h.normal);
    if (rows.empty() || rank_over_field(FieldMatrix::from_rows(rows)) < dim)
      throw std::invalid_argument("unbounded polytope");
    bool unbounded = false;
    if (dim == 1) {
      bool pos = false, neg = false;
      for (auto& h : hs) (h.normal[0].sign() > 0 ? pos : neg) = true;
      unbounded = !(pos && neg);
    } else {
      for_each_subset(m, (int)dim - 1, [&](const std::vector<int>& idx) {
        if (unbounded) return;
        std::vector<Vec> ns;
        if (dim == 2) {
          ns.push_back({-hs[idx[0]].normal[1], hs[idx[0]].normal[0]});
        } else {
          std::vector<Vec> rows;
          for (int i : idx) rows.push_back(hs[i].normal);
          ns = nullspace(FieldMatrix::from_rows(rows));
          if (ns.size() != 1) return;
        }
        for (int sgn : {1, -1}) {
          Vec r = FieldReal(sgn) * ns[0];
          bool ok = true;
          for (auto& h : hs)
            if (dot(h.normal, r).sign() > 0) {
              ok = false;
              break;
            }
          if (ok) unbounded = true;
        }
      });
    }
    if (unbounded) throw std::invalid_argument("unbounded polytope");
  }
  ConvexPolytope p;
  p.dim_ = dim;
  p.halfspaces_ = hs;
  std::vector<std::array<double, 3>> hd;
  if (dim == 2)
    for (auto& h : hs) hd.push_back({h.normal[0].to_double(), h.normal[1].to_double(), h.offset.to_double()});
  for_each_subset(m, (int)dim, [&](const std::vector<int>& idx) {
    if (dim == 2) {
      // double prefilter: skip intersection points clearly outside
      const auto &a = hd[idx[0]], &c = hd[idx[1]];
      double dd = a[0] * c[1] - a[1] * c[0];
      // halfspaces whose slack is clearly positive need no exact check
      std::vector<char> sure(hs.size(), 0);
      if (std::fabs(dd) > 1e-6) {
        double x0 = (a[2] * c[1] - c[2] * a[1]) / dd, x1 = (a[0] * c[2] - c[0] * a[2]) / dd;
        double scale = 1 + std::fabs(x0) + std::fabs(x1);
        for (size_t i = 0; i < hd.size(); ++i) {
          auto& h = hd[i];
          double tol = 1e-6 * scale * (1 + std::fabs(h[0]) + std::fabs(h[1]) + std::fabs(h[2]));
          double sl = h[2] - h[0] * x0 - h[1] * x1;
          if (sl < -tol) return;
          sure[i] = sl > tol;
        }
      }
      const Vec &n0 = hs[idx[0]].normal, &n1 = hs[idx[1]].normal;
      FieldReal det = n0[0] * n1[1] - n0[1] * n1[0];
      if (det.is_zero()) return;
      FieldReal inv = det.inverse();
      const FieldReal &b0 = hs[idx[0]].offset, &b1 = hs[idx[1]].offset;
      Vec x{(b0 * n1[1] - b1 * n0[1]) * inv, (n0[0] * b1 - n1[0] * b0) * inv};
      for (size_t i = 0; i < hs.size(); ++i)
        if (!sure[i] && hs[i].slack(x).sign() < 0) return;
      if (std::find(p.vertices_.begin(), p.vertices_.end(), x) == p.vertices_.end()) p.vertices_.push_back(x);
      return;
    }
    FieldMatrix a(dim, dim);
    Vec b(dim);
    for (size_t i = 0; i < dim; ++i) {
      for (size_t j = 0; j < dim; ++j) a(i, j) = hs[idx[i]].normal[j];
      b[i] = hs[idx[i]].offset;
    }
    if (rank_over_field(a) < dim) return;
    Vec x = solve(a, b);
    for (auto& h : hs)
      if (h.slack(x).sign() < 0) return;
    if (std::find(p.vertices_.begin(), p.vertices_.end(), x) == p.vertices_.end()) p.vertices_.push_back(x);
  });
  if (p.vertices_.empty()) throw std::invalid_argument("empty polytope");
  p.finalize();
  return p;
}

ConvexPolytope dd_convert(size_t dim, const std::vector<Halfspace>& hs) { return ConvexPolytope::from_halfspaces(dim, hs); }

ConvexPolytope ConvexPolytope::box(const Vec& lo, const Vec& hi) {
  size_t n = lo.size();
  std::vector<Halfspace> hs;
  for (size_t i = 0; i < n; ++i) {
    Vec e(n);
    e[i] = 1;
    hs.push_back({e, hi[i]});
    Vec f(n);
    f[i] = -1;
    hs.push_back({f, -lo[i]});
  }
  return from_halfspaces(n, hs);
}

ConvexPolytope ConvexPolytope::hull(size_t dim, const std::vector<Vec>& points_in) {
  std::vector<Vec> pts;
  for (auto& q : points_in)
    if (std::find(pts.begin(), pts.end(), q) == pts.end()) pts.push_back(q);
  if (pts.empty()) throw std::invalid_argument("hull of no points");
  std::vector<Halfspace> hs;
  if (dim == 1) {
    FieldReal lo = pts[0][0], hi = pts[0][0];
    for (auto& q : pts) {
      lo = std::min(lo, q[0]);
      hi = std::max(hi, q[0]);
    }
    hs.push_back({Vec{FieldReal(1)}, hi});
    hs.push_back({Vec{FieldReal(-1)}, -lo});
    return from_halfspaces(1, hs);
  }
  if (dim == 2) {
    std::sort(pts.begin(), pts.end(), [](const Vec& a, const Vec& b) {
      int c = (a[0] - b[0]).sign();
      return c != 0 ? c < 0 : (a[1] - b[1]).sign() < 0;
    });
    std::vector<Vec> h;
    auto build = [&](auto begin, auto end) {
      size_t base = h.size();
      for (auto it = begin; it != end; ++it) {
        while (h.size() >= base + 2 && cross2(h[h.size() - 1] - h[h.size() - 2], *it - h[h.size() - 2]).sign() <= 0)
          h.pop_back();
        h.push_back(*it);
      }
      h.pop_back();
    };
    build(pts.begin(), pts.end());
    build(pts.rbegin(), pts.rend());
    if (h.size() < 3) throw std::invalid_argument("degenerate hull");
    ConvexPolytope p;
    p.dim_ = 2;
    for (size_t i = 0; i < h.size(); ++i) {
      const Vec& a = h[i];
      const Vec& b = h[(i + 1) % h.size()];
      Vec nrm{b[1] - a[1], a[0] - b[0]};
      p.halfspaces_.push_back({nrm, dot(nrm, a)});
    }
    p.vertices_ = h;
    p.affine_dim_ = 2;
    p.incidence_.resize(h.size());
    for (size_t i = 0; i < h.size(); ++i) {
      int prev = (int)((i + h.size() - 1) % h.size());
      p.incidence_[i] = {std::min(prev, (int)i), std::max(prev, (int)i)};
    }
    return p;
  }
  // dim 3: candidate facets through point triples
  int m = (int)pts.size();
  for_each_subset(m, (int)dim, [&](const std::vector<int>& idx) {
    std::vector<Vec> sub;
    for (int i : idx) sub.push_back(pts[i]);
    auto nrm = normal_through(sub);
    if (!nrm) return;
    FieldReal off = dot(*nrm, sub[0]);
    int pos = 0, neg = 0;
    for (auto& q : pts) {
      int s = (dot(*nrm, q) - off).sign();
      if (s > 0) ++pos;
      if (s < 0) ++neg;
    }
    if (pos > 0 && neg > 0) return;
    if (pos > 0) hs.push_back({FieldReal(-1) * *nrm, -off});
    else if (neg > 0) hs.push_back({*nrm, off});
  });
  if (hs.empty()) throw std::invalid_argument("degenerate hull");
  return from_halfspaces(dim, hs);
}

Vec ConvexPolytope::witness() const {
  if (empty()) throw std::logic_error("witness of empty polytope");
  Vec c(dim_);
  for (auto& v : vertices_) c = c + v;
  return FieldReal(Rational(1, (long)vertices_.size())) * c;
}

bool ConvexPolytope::contains(const Vec& x) const {
  if (empty()) return false;
  for (auto& h : halfspaces_)
    if (h.slack(x).sign() < 0) return false;
  return true;
}

bool ConvexPolytope::contains_interior(const Vec& x) const {
  if (!full_dimensional()) return false;
  for (auto& h : halfspaces_)
    if (h.slack(x).sign() <= 0) return false;
  return true;
}

bool ConvexPolytope::contains_polytope(const ConvexPolytope& other) const {
  for (auto& v : other.vertices_)
    if (!contains(v)) return false;
  return true;
}

ConvexPolytope ConvexPolytope::translated(const Vec& t) const {
  ConvexPolytope p = *this;
  for (auto& h : p.halfspaces_) h = h.translated(t);
  for (auto& v : p.vertices_) v = v + t;
  return p;
}

ConvexPolytope ConvexPolytope::negated() const {
  ConvexPolytope p = *this;
  for (auto& h : p.halfspaces_)
    for (auto& x : h.normal) x = -x;
  for (auto& v : p.vertices_)
    for (auto& x : v) x = -x;
  return p;
}

ConvexPolytope ConvexPolytope::scaled(const FieldReal& f) const {
  if (f.sign() <= 0) throw std::invalid_argument("scale factor must be positive");
  ConvexPolytope p = *this;
  for (auto& h : p.halfspaces_) h.offset *= f;
  for (auto& v : p.vertices_) v = f * v;
  return p;
}

std::vector<std::pair<FieldReal, FieldReal>> ConvexPolytope::bounding_box() const {
  std::vector<std::pair<FieldReal, FieldReal>> bb;
  for (size_t i = 0; i < dim_; ++i) {
    FieldReal lo = vertices_[0][i], hi = vertices_[0][i];
    for (auto& v : vertices_) {
      if (v[i] < lo) lo = v[i];
      if (v[i] > hi) hi = v[i];
    }
    bb.push_back({lo, hi});
  }
  return bb;
}

std::pair<FieldReal, FieldReal> ConvexPolytope::range(const Vec& dir) const {
  FieldReal lo = dot(dir, vertices_[0]), hi = lo;
  for (auto& v : vertices_) {
    FieldReal x = dot(dir, v);
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  return {lo, hi};
}


std::pair<ConvexPolytope, ConvexPolytope> split(const ConvexPolytope& p, const AffineHyperplane& h) {
  return split_raw(p, h.normal, h.offset);
}

ConvexPolytope clip(const ConvexPolytope& p, const Halfspace& h) { return split_raw(p, h.normal, h.offset).second; }

ConvexPolytope intersect(const ConvexPolytope& a, const ConvexPolytope& b) {
  ConvexPolytope cur = a;
  for (auto& h : b.halfspaces()) {
    if (cur.empty()) break;
    cur = clip(cur, h);
  }
  return cur;
}

bool interiors_intersect(const ConvexPolytope& a, const ConvexPolytope& b) {
  if (!a.full_dimensional() || !b.full_dimensional()) return false;
  ConvexPolytope c = intersect(a, b);
  return c.full_dimensional();
}

std::optional<ConvexPolytope> face_of(const ConvexPolytope& p, const AffineHyperplane& h) {
  bool pos = false, neg = false;
  std::vector<Vec> on;
  for (auto& v : p.vertices()) {
    int s = h.eval(v).sign();
    if (s > 0) pos = true;
    if (s < 0) neg = true;
    if (s == 0) on.push_back(v);
  }
  if (pos && neg) throw std::invalid_argument("hyperplane cuts the interior of the polytope");
  if (on.empty()) return std::nullopt;
  std::vector<Halfspace> hs = p.halfspaces();
  Vec neg_n(h.normal.size());
  for (size_t i = 0; i < neg_n.size(); ++i) neg_n[i] = -h.normal[i];
  hs.push_back({h.normal, h.offset});
  hs.push_back({neg_n, -h.offset});
  return PolytopeAccess::from_parts(p.dim(), std::move(hs), std::move(on));
}

ConvexPolytope minkowski_sum(const ConvexPolytope& a, const ConvexPolytope& b) {
  std::vector<Vec> pts;
  for (auto& u : a.vertices())
    for (auto& v : b.vertices()) pts.push_back(u + v);
  return ConvexPolytope::hull(a.dim(), pts);
}

ConvexPolytope minkowski_diff_self(const ConvexPolytope& w) { return minkowski_sum(w, w.negated()); }

bool angle_less(const Vec& a, const Vec& b) {
  auto half = [](const Vec& v) {
    int sy = v[1].sign();
    return (sy > 0 || (sy == 0 && v[0].sign() > 0)) ? 0 : 1;
  };
  int ha = half(a), hb = half(b);
  if (ha != hb) return ha < hb;
  return cross2(a, b).sign() > 0;
}

namespace {

std::vector<Vec> ordered_polygon(const std::vector<Vec>& pts2, const Vec& center) {
  std::vector<size_t> idx(pts2.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::vector<Vec> rel;
  for (auto& q : pts2) rel.push_back(q - center);
  std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return angle_less(rel[i], rel[j]); });
  std::vector<Vec> out;
  for (auto i : idx) out.push_back(pts2[i]);
  return out;
}

}  // namespace

FieldReal volume(const ConvexPolytope& p) {
  if (!p.full_dimensional()) return FieldReal();
  const auto& vs = p.vertices();
  size_t n = p.dim();
  if (n == 1) {
    auto bb = p.bounding_box();
    return bb[0].second - bb[0].first;
  }
  Vec c = p.witness();
  if (n == 2) {
    auto poly = ordered_polygon(vs, c);
    FieldReal twice;
    for (size_t i = 0; i < poly.size(); ++i) twice += cross2(poly[i], poly[(i + 1) % poly.size()]);
    return twice.abs() * FieldReal(Rational(1, 2));
  }
  if (n == 3) {
    FieldReal total;
    for (size_t h = 0; h < p.halfspaces().size(); ++h) {
      std::vector<Vec> face;
      for (size_t v = 0; v < vs.size(); ++v)
        if (std::find(p.incidence()[v].begin(), p.incidence()[v].end(), (int)h) != p.incidence()[v].end())
          face.push_back(vs[v]);
      const Vec& nrm = p.halfspaces()[h].normal;
      size_t drop = 0;
      while (nrm[drop].is_zero()) ++drop;
      std::vector<Vec> proj;
      for (auto& q : face) {
        Vec r;
        for (size_t i = 0; i < 3; ++i)
          if (i != drop) r.push_back(q[i]);
        proj.push_back(r);
      }
      Vec pc(2);
      for (auto& q : proj) pc = pc + q;
      pc = FieldReal(Rational(1, (long)proj.size())) * pc;
      std::vector<size_t> idx(face.size());
      for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
      std::sort(idx.begin(), idx.end(), [&](size_t i, size_t j) { return angle_less(proj[i] - pc, proj[j] - pc); });
      for (size_t t = 1; t + 1 < idx.size(); ++t) {
        FieldMatrix m = FieldMatrix::from_rows({face[idx[0]] - c, face[idx[t]] - c, face[idx[t + 1]] - c});
        total += determinant(m).abs();
      }
    }
    return total * FieldReal(Rational(1, 6));
  }
  throw std::invalid_argument("volume supports dimension <= 3");
}

namespace {

bool separated(const ConvexPolytope& a, const ConvexPolytope& b) {
  for (auto& h : a.halfspaces()) {
    bool all_out = true;
    for (auto& v : b.vertices())
      if (slack_sign(h.normal, h.offset, v) > 0) {
        all_out = false;
        break;
      }
    if (all_out) return true;
  }
  return false;
}

}  // namespace

std::vector<ConvexPolytope> subtract(const std::vector<ConvexPolytope>& cells, const ConvexPolytope& piece) {
  if (!piece.full_dimensional()) return cells;
  std::vector<ConvexPolytope> next;
  for (auto& cell : cells) {
    if (separated(piece, cell) || separated(cell, piece)) {
      next.push_back(cell);
      continue;
    }
    ConvexPolytope cur = cell;
    for (auto& h : piece.halfspaces()) {
      auto [outside, inside] = split_raw(cur, h.normal, h.offset);
      if (!outside.empty() && outside.full_dimensional()) next.push_back(std::move(outside));
      cur = std::move(inside);
      if (cur.empty()) break;
    }
  }
  return next;
}

CoverResult covering_test(const ConvexPolytope& target, const std::vector<ConvexPolytope>& pieces) {
  CoverResult res;
  if (!target.full_dimensional()) return res;
  std::vector<ConvexPolytope> uncovered{target};
  for (auto& piece : pieces) {
    uncovered = subtract(uncovered, piece);
    if (uncovered.empty()) return res;
  }
  res.covered = false;
  res.witness = uncovered.front().witness();
  return res;
}

}  // namespace cps
