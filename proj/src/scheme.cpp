#include "cps/scheme.hpp"

#include <algorithm>
#include <stdexcept>

#include "cps/enumerate.hpp"

namespace cps {

bool LatticePoint::is_zero() const {
  for (auto x : c)
    if (x != 0) return false;
  return true;
}

LatticePoint LatticePoint::operator+(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

LatticePoint LatticePoint::operator-(const LatticePoint& o) const {
  LatticePoint r = *this;
  for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

LatticePoint LatticePoint::operator-() const {
  LatticePoint r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

IntVec LatticePoint::to_intvec() const {
  IntVec v;
  for (auto x : c) v.push_back(Integer((long)x));
  return v;
}

LatticePoint LatticePoint::from_intvec(const IntVec& v) {
  LatticePoint p;
  for (auto& x : v) {
    if (!fits_int64(x)) throw std::overflow_error("lattice coefficient exceeds 64 bits");
    p.c.push_back(x.get_si());
  }
  return p;
}

size_t LatticePointHash::operator()(const LatticePoint& p) const {
  size_t h = 1469598103934665603ull;
  for (auto x : p.c) {
    h ^= (size_t)x;
    h *= 1099511628211ull;
  }
  return h;
}

IntegralForm IntegralForm::make(const Vec& coefficients, const FieldReal& constant) {
  IntegralForm f;
  Integer l = constant.denominator();
  for (auto& a : coefficients) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), a.denominator().get_mpz_t());
  f.den = l;
  for (auto& a : coefficients) f.coef.push_back(a.scaled(l));
  f.constant = constant.scaled(l);
  return f;
}

IntElem IntegralForm::eval(const std::int64_t* c) const {
  IntElem r = constant;
  for (size_t j = 0; j < coef.size(); ++j)
    if (c[j] != 0) r += (i128)c[j] * coef[j];
  return r;
}

Scheme Scheme::make(std::string name, FieldPtr field, int k, int d, FieldMatrix G, FieldMatrix phys_basis,
                    FieldMatrix int_basis, ConvexPolytope window, Vec window_shift, bool) {
  if (k < 2 || d < 1 || d >= k) throw std::invalid_argument("need 0 < d < k");
  if (G.rows() != (size_t)k || G.cols() != (size_t)k) throw std::invalid_argument("G must be k x k");
  if (phys_basis.rows() != (size_t)k || phys_basis.cols() != (size_t)d) throw std::invalid_argument("phys_basis must be k x d");
  if (int_basis.rows() != (size_t)k || int_basis.cols() != (size_t)(k - d))
    throw std::invalid_argument("int_basis must be k x (k-d)");
  if (window.dim() != (size_t)(k - d) || window_shift.size() != (size_t)(k - d))
    throw std::invalid_argument("window dimension must be k-d");
  Scheme s;
  s.name_ = std::move(name);
  s.field_ = std::move(field);
  s.k_ = k;
  s.d_ = d;
  s.G_ = std::move(G);
  s.phys_basis_ = std::move(phys_basis);
  s.int_basis_ = std::move(int_basis);
  s.window_ = std::move(window);
  s.shift_ = std::move(window_shift);
  FieldMatrix basis(k, k);
  for (int r = 0; r < k; ++r) {
    for (int c = 0; c < d; ++c) basis(r, c) = s.phys_basis_(r, c);
    for (int c = 0; c < k - d; ++c) basis(r, d + c) = s.int_basis_(r, c);
  }
  FieldMatrix binv;
  try {
    binv = inverse(basis);
  } catch (const std::domain_error&) {
    throw std::invalid_argument("invalid basis: [phys_basis | int_basis] is singular");
  }
  if (rank_over_field(s.G_) < (size_t)k) throw std::invalid_argument("invalid basis: G is singular");
  s.coord_ = binv * s.G_;
  if (!s.window_.full_dimensional()) throw std::invalid_argument("degenerate window");
  ConvexPolytope shifted = s.window_.translated(s.shift_);
  std::vector<Halfspace> hs;
  for (auto& h : shifted.halfspaces()) {
    size_t i = 0;
    while (h.normal[i].is_zero()) ++i;
    FieldReal scale = h.normal[i].abs().inverse();
    hs.push_back({scale * h.normal, h.offset * scale});
  }
  s.eff_window_ = ConvexPolytope::from_halfspaces(k - d, hs);
  s.diff_window_ = minkowski_diff_self(s.eff_window_);
  return s;
}

Scheme Scheme::with_shift(Vec shift) const {
  return make(name_, field_, k_, d_, G_, phys_basis_, int_basis_, window_, std::move(shift));
}

FieldMatrix Scheme::phys_map() const {
  std::vector<size_t> rows;
  for (int i = 0; i < d_; ++i) rows.push_back(i);
  return coord_.select_rows(rows);
}

FieldMatrix Scheme::int_map() const {
  std::vector<size_t> rows;
  for (int i = d_; i < k_; ++i) rows.push_back(i);
  return coord_.select_rows(rows);
}

namespace {

Vec apply_rows(const FieldMatrix& m, int from, int to, const LatticePoint& g) {
  if (g.size() != m.cols()) throw std::invalid_argument("lattice point dimension mismatch");
  Vec out(to - from);
  for (int r = from; r < to; ++r)
    for (size_t j = 0; j < m.cols(); ++j)
      if (g.c[j] != 0) out[r - from] += m(r, j) * FieldReal((long)g.c[j]);
  return out;
}

}  // namespace

Vec Scheme::project_phys(const LatticePoint& g) const { return apply_rows(coord_, 0, d_, g); }
Vec Scheme::project_int(const LatticePoint& g) const { return apply_rows(coord_, d_, k_, g); }
FieldReal Scheme::phys_norm_squared(const LatticePoint& g) const { return norm_squared(project_phys(g)); }

Vec project_phys(const Scheme& s, const LatticePoint& g) { return s.project_phys(g); }
Vec project_int(const Scheme& s, const LatticePoint& g) { return s.project_int(g); }
Vec star(const Scheme& s, const LatticePoint& g) { return s.project_int(g); }

bool is_aperiodic(const Scheme& s) { return integer_kernel(s.int_map()).rank() == 0; }

ValidationReport validate(const Scheme& s, const Rational& radius) {
  ValidationReport rep;
  rep.basis_invertible = true;
  rep.nonsingular_radius = radius;
  rep.phys_injective = integer_kernel(s.phys_map()).rank() == 0;
  if (!rep.phys_injective) rep.messages.push_back("projection to physical space is not injective on the lattice");
  // density: no nonzero integer functional on the lattice vanishes on E_phys
  FieldMatrix coeff_phys = inverse(s.G()) * s.phys_basis();
  rep.internal_dense = integer_kernel(coeff_phys.transpose()).rank() == 0;
  if (!rep.internal_dense) rep.messages.push_back("internal projection of the lattice is not dense");
  rep.window_ok = s.effective_window().full_dimensional();
  rep.aperiodic = is_aperiodic(s);
  rep.nonsingular = true;
  const auto& W = s.effective_window();
  FieldMatrix im = s.int_map();
  for (size_t h = 0; h < W.halfspaces().size() && rep.nonsingular; ++h) {
    const Halfspace& hs = W.halfspaces()[h];
    FieldMatrix row(1, s.k());
    for (int j = 0; j < s.k(); ++j) row(0, j) = dot(hs.normal, im.column(j));
    auto coset = affine_integer_solutions(row, {hs.offset});
    if (!coset) continue;
    auto face = face_of(W, AffineHyperplane::make(hs.normal, hs.offset));
    std::vector<std::pair<Rational, Rational>> box;
    for (int i = 0; i < s.d(); ++i) box.push_back({-radius, radius});
    for (auto& [lo, hi] : face->bounding_box()) box.push_back({rational_bounds(lo).first, rational_bounds(hi).second});
    enumerate_coset(s, coset->x0, coset->lattice.basis, box, [&](const LatticePoint& g) {
      if (!rep.nonsingular) return;
      if (s.phys_norm_squared(g) > FieldReal(radius * radius)) return;
      if (!face->contains(s.project_int(g))) return;
      rep.nonsingular = false;
      rep.singular_witness = g;
      rep.singular_facet = h;
    });
  }
  if (!rep.nonsingular)
    rep.messages.push_back("origin is singular: a lattice point within the radius projects onto the window boundary");
  return rep;
}

std::vector<LatticePoint> enum_slab(const Scheme& s, const Rational& r) {
  std::vector<LatticePoint> out;
  InternalRegion reg;
  reg.polytope = &s.window_difference();
  int k = s.k();
  enumerate_lattice(s, r, reg, [&](const std::int64_t* c) { out.emplace_back(std::vector<std::int64_t>(c, c + k)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> enum_box(const Scheme& s, const Rational& r) {
  std::vector<LatticePoint> out;
  InternalRegion reg;
  reg.radius = r;
  int k = s.k();
  enumerate_lattice(s, r, reg, [&](const std::int64_t* c) { out.emplace_back(std::vector<std::int64_t>(c, c + k)); });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<LatticePoint> generate_points(const Scheme& s, const Rational& R) {
  std::vector<LatticePoint> out;
  InternalRegion reg;
  reg.polytope = &s.effective_window();
  int k = s.k();
  enumerate_lattice(s, R, reg, [&](const std::int64_t* c) { out.emplace_back(std::vector<std::int64_t>(c, c + k)); });
  std::sort(out.begin(), out.end());
  return out;
}

bool in_window(const Scheme& s, const Vec& x) { return s.effective_window().contains(x); }

Patch patch(const Scheme& s, const LatticePoint& y, const Rational& r, const std::vector<LatticePoint>& slab) {
  Vec ys = s.star(y);
  if (!in_window(s, ys)) throw std::invalid_argument("point is not in the model set");
  Patch p;
  p.center = y;
  p.radius_sq = r * r;
  for (auto& g : slab) {
    if (in_window(s, ys + s.star(g))) p.p_in.push_back(g);
    else p.p_out.push_back(g);
  }
  return p;
}

Patch patch(const Scheme& s, const LatticePoint& y, const Rational& r) { return patch(s, y, r, enum_slab(s, r)); }

}  // namespace cps
