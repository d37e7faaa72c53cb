#include "cps/partition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cps {

namespace {

constexpr double kTol = 1e-7;

struct Box {
  std::vector<double> lo, hi;
  bool overlaps(const Box& o) const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (hi[i] < o.lo[i] - kTol || o.hi[i] < lo[i] - kTol) return false;
    return true;
  }
  bool holds(const std::vector<double>& x) const {
    for (size_t i = 0; i < lo.size(); ++i)
      if (x[i] < lo[i] - kTol || x[i] > hi[i] + kTol) return false;
    return true;
  }
};

Box bbox(const ConvexPolytope& p) {
  Box b;
  for (auto& [lo, hi] : p.bounding_box()) {
    b.lo.push_back(lo.to_double());
    b.hi.push_back(hi.to_double());
  }
  return b;
}

RegionPartition split_by_family(const Scheme& s, const CutFamily& fam) {
  std::vector<ConvexPolytope> cur{s.effective_window()};
  for (size_t c = 0; c < fam.normals.size(); ++c) {
    auto& vals = fam.values[c];
    std::vector<ConvexPolytope> next;
    for (auto& p : cur) {
      auto [lo, hi] = p.range(fam.normals[c]);
      size_t i = std::upper_bound(vals.begin(), vals.end(), lo) - vals.begin();
      size_t j = std::lower_bound(vals.begin(), vals.end(), hi) - vals.begin();
      ConvexPolytope rest = p;
      for (size_t t = i; t < j; ++t) {
        auto [above, below] = split(rest, AffineHyperplane{fam.normals[c], vals[t]});
        if (below.full_dimensional()) next.push_back(std::move(below));
        rest = std::move(above);
      }
      if (rest.full_dimensional()) next.push_back(std::move(rest));
    }
    cur = std::move(next);
  }
  RegionPartition out;
  out.cutting_set = fam.hyperplanes();
  for (auto& p : cur) {
    Region r;
    r.witness = p.witness();
    r.ranks = fam.ranks(r.witness);
    r.poly = std::move(p);
    out.regions.push_back(std::move(r));
  }
  std::sort(out.regions.begin(), out.regions.end(), [](const Region& a, const Region& b) { return a.ranks < b.ranks; });
  for (size_t i = 0; i < out.regions.size(); ++i) out.regions[i].group = i;
  out.group_count = out.regions.size();
  return out;
}

}  // namespace

bool in_open_translate(const Scheme& s, const Vec& x, const Vec& g_int) {
  Vec y = x + g_int;
  for (auto& h : s.effective_window().halfspaces())
    if (h.slack(y).sign() <= 0) return false;
  return true;
}

RegionPartition cut_regions(const Scheme& s, const std::vector<LatticePoint>& translates) {
  auto out = split_by_family(s, cut_family(s, translates));
  return out;
}

RegionPartition cut_regions(const Scheme& s, const Rational& r, CutVariant variant) {
  return cut_regions(s, variant == CutVariant::box ? enum_box(s, r) : enum_slab(s, r));
}

AcceptanceResult acceptance_count(const Scheme& s, const Rational& r) {
  auto slab = enum_slab(s, r);
  AcceptanceResult res;
  res.partition = cut_regions(s, slab);
  auto& part = res.partition;
  part.translates = slab;
  auto& hs = s.effective_window().halfspaces();
  size_t n = s.n();
  std::vector<double> hn, ho;
  for (auto& h : hs) {
    for (auto& x : h.normal) hn.push_back(x.to_double());
    ho.push_back(h.offset.to_double());
  }
  std::vector<Vec> stars;
  std::vector<double> sd;
  for (auto& g : slab) {
    stars.push_back(s.star(g));
    for (auto& x : stars.back()) sd.push_back(x.to_double());
  }
  std::map<std::vector<bool>, size_t> groups;
  std::vector<double> wd(n), y(n);
  for (auto& reg : part.regions) {
    for (size_t i = 0; i < n; ++i) wd[i] = reg.witness[i].to_double();
    reg.signature.resize(slab.size());
    for (size_t t = 0; t < slab.size(); ++t) {
      for (size_t i = 0; i < n; ++i) y[i] = wd[i] + sd[t * n + i];
      bool in = true, unsure = false;
      for (size_t f = 0; f < hs.size() && in; ++f) {
        double sl = ho[f];
        for (size_t i = 0; i < n; ++i) sl -= hn[f * n + i] * y[i];
        if (sl < -kTol) in = false;
        else if (sl < kTol) unsure = true;
      }
      if (in && unsure) in = in_open_translate(s, reg.witness, stars[t]);
      reg.signature[t] = in;
    }
    auto it = groups.emplace(reg.signature, groups.size()).first;
    reg.group = it->second;
  }
  part.group_count = groups.size();
  res.count = groups.size();
  return res;
}

RegionPartition acceptance_domains(const Scheme& s, const std::vector<LatticePoint>& slab,
                                   const std::vector<std::vector<bool>>& signatures) {
  RegionPartition out;
  out.translates = slab;
  auto& W = s.effective_window();
  auto& hs = W.halfspaces();
  // offsets of facet f of W - g_int: b_f - normal_f . g_int
  std::vector<std::vector<FieldReal>> off(slab.size());
  std::vector<std::vector<double>> off_d(slab.size());
  std::vector<ConvexPolytope> tr;
  std::vector<Box> boxes;
  std::vector<std::vector<double>> normal_d;
  for (auto& h : hs) {
    normal_d.emplace_back();
    for (auto& x : h.normal) normal_d.back().push_back(x.to_double());
  }
  for (size_t i = 0; i < slab.size(); ++i) {
    Vec st = s.star(slab[i]);
    for (auto& h : hs) {
      off[i].push_back(h.offset - dot(h.normal, st));
      off_d[i].push_back(off[i].back().to_double());
    }
    for (auto& x : st) x = -x;
    tr.push_back(W.translated(st));
    boxes.push_back(bbox(tr.back()));
  }
  for (size_t gi = 0; gi < signatures.size(); ++gi) {
    auto& sig = signatures[gi];
    // the intersection of the in-translates keeps the smallest offset per facet
    std::vector<Halfspace> core_hs;
    for (size_t f = 0; f < hs.size(); ++f) {
      std::optional<size_t> best;
      for (size_t i = 0; i < slab.size(); ++i) {
        if (!sig[i]) continue;
        if (!best || off_d[i][f] < off_d[*best][f] - kTol ||
            (off_d[i][f] < off_d[*best][f] + kTol && off[i][f] < off[*best][f]))
          best = i;
      }
      // facet f of W is parallel to facet f of each translate: keep the tighter
      core_hs.push_back({hs[f].normal, best && off[*best][f] < hs[f].offset ? off[*best][f] : hs[f].offset});
    }
    ConvexPolytope core = ConvexPolytope::from_halfspaces(s.n(), core_hs);
    if (!core.full_dimensional()) continue;
    std::vector<ConvexPolytope> pieces{core};
    Box cb = bbox(core);
    // facet images of the core vertices, for a cheap separation test
    std::vector<std::vector<double>> proj(hs.size());
    for (auto& v : core.vertices()) {
      std::vector<double> vd;
      for (auto& x : v) vd.push_back(x.to_double());
      for (size_t f = 0; f < hs.size(); ++f) {
        double a = 0;
        for (size_t j = 0; j < vd.size(); ++j) a += normal_d[f][j] * vd[j];
        proj[f].push_back(a);
      }
    }
    auto separated = [&](size_t i) {
      for (size_t f = 0; f < hs.size(); ++f)
        if (*std::min_element(proj[f].begin(), proj[f].end()) > off_d[i][f] + kTol) return true;
      return false;
    };
    for (size_t i = 0; i < slab.size() && !pieces.empty(); ++i)
      if (!sig[i] && cb.overlaps(boxes[i]) && !separated(i)) pieces = subtract(pieces, tr[i]);
    for (auto& p : pieces) {
      Region r;
      r.witness = p.witness();
      r.signature = sig;
      r.group = gi;
      r.poly = std::move(p);
      out.regions.push_back(std::move(r));
    }
  }
  out.group_count = signatures.size();
  return out;
}

namespace {

// Uniform grid over bounding boxes for point location.
struct Locator {
  std::vector<Box> boxes;
  std::vector<double> lo, step;
  std::vector<size_t> dims;
  std::vector<std::vector<size_t>> buckets;

  explicit Locator(const RegionPartition& p) {
    for (auto& r : p.regions) boxes.push_back(bbox(r.poly));
    if (boxes.empty()) return;
    size_t n = boxes[0].lo.size();
    std::vector<double> hi(n);
    lo = boxes[0].lo;
    hi = boxes[0].hi;
    for (auto& b : boxes)
      for (size_t i = 0; i < n; ++i) {
        lo[i] = std::min(lo[i], b.lo[i]);
        hi[i] = std::max(hi[i], b.hi[i]);
      }
    size_t per = std::max<size_t>(1, (size_t)std::pow((double)boxes.size(), 1.0 / n));
    size_t total = 1;
    for (size_t i = 0; i < n; ++i) {
      dims.push_back(per);
      step.push_back(std::max(1e-12, (hi[i] - lo[i]) / per));
      total *= per;
    }
    buckets.resize(total);
    for (size_t r = 0; r < boxes.size(); ++r) {
      std::vector<size_t> a(n), b(n);
      for (size_t i = 0; i < n; ++i) {
        a[i] = cell(i, boxes[r].lo[i] - kTol);
        b[i] = cell(i, boxes[r].hi[i] + kTol);
      }
      std::vector<size_t> cur = a;
      while (true) {
        buckets[flat(cur)].push_back(r);
        size_t i = 0;
        while (i < n && cur[i] == b[i]) cur[i] = a[i], ++i;
        if (i == n) break;
        ++cur[i];
      }
    }
  }
  size_t cell(size_t i, double x) const {
    double t = std::floor((x - lo[i]) / step[i]);
    if (t < 0) return 0;
    return std::min(dims[i] - 1, (size_t)t);
  }
  size_t flat(const std::vector<size_t>& c) const {
    size_t f = 0;
    for (size_t i = c.size(); i-- > 0;) f = f * dims[i] + c[i];
    return f;
  }
  const std::vector<size_t>& candidates(const std::vector<double>& x) const {
    std::vector<size_t> c(x.size());
    for (size_t i = 0; i < x.size(); ++i) c[i] = cell(i, x[i]);
    return buckets[flat(c)];
  }
};

}  // namespace

bool refines(const RegionPartition& p1, const RegionPartition& p2) {
  if (p2.regions.empty()) return true;
  Locator loc(p2);
  std::map<size_t, std::vector<size_t>> members;
  for (size_t i = 0; i < p2.regions.size(); ++i) members[p2.regions[i].group].push_back(i);
  // candidates: p1 regions whose witness lies in the group
  std::map<size_t, std::vector<size_t>> located;
  for (size_t j = 0; j < p1.regions.size(); ++j) {
    auto& w = p1.regions[j].witness;
    std::vector<double> wd;
    for (auto& x : w) wd.push_back(x.to_double());
    for (size_t i : loc.candidates(wd))
      if (loc.boxes[i].holds(wd) && p2.regions[i].poly.contains_interior(w)) {
        located[p2.regions[i].group].push_back(j);
        break;
      }
  }
  for (auto& [g, idx] : members) {
    std::vector<ConvexPolytope> pieces;
    for (size_t i : idx) pieces.push_back(p2.regions[i].poly);
    bool found = false;
    for (size_t j : located[g]) {
      auto& cand = p1.regions[j].poly;
      bool inside = pieces.size() == 1 ? pieces[0].contains_polytope(cand) : covering_test(cand, pieces).covered;
      if (inside) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

FieldReal partition_volume(const RegionPartition& p) {
  FieldReal v;
  for (auto& r : p.regions) v += volume(r.poly);
  return v;
}

}  // namespace cps
