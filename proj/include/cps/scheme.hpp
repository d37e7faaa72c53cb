#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cps/lattice.hpp"
#include "cps/polytope.hpp"

namespace cps {

// Element of Gamma in coefficients with respect to the generator columns of G.
struct LatticePoint {
  std::vector<std::int64_t> c;

  LatticePoint() = default;
  explicit LatticePoint(std::vector<std::int64_t> v) : c(std::move(v)) {}
  static LatticePoint zero(size_t k) { return LatticePoint(std::vector<std::int64_t>(k, 0)); }

  size_t size() const { return c.size(); }
  bool is_zero() const;
  auto operator<=>(const LatticePoint&) const = default;
  LatticePoint operator+(const LatticePoint& o) const;
  LatticePoint operator-(const LatticePoint& o) const;
  LatticePoint operator-() const;
  IntVec to_intvec() const;
  static LatticePoint from_intvec(const IntVec& v);
};

struct LatticePointHash {
  size_t operator()(const LatticePoint& p) const;
};

// Affine map c -> (sum_j c_j coef[j] + constant) / den with coordinates in Z[theta].
struct IntegralForm {
  std::vector<IntElem> coef;
  IntElem constant;
  Integer den = 1;

  static IntegralForm make(const Vec& coefficients, const FieldReal& constant);
  IntElem eval(const std::int64_t* c) const;
};

class Scheme {
 public:
  static Scheme make(std::string name, FieldPtr field, int k, int d, FieldMatrix G, FieldMatrix phys_basis,
                     FieldMatrix int_basis, ConvexPolytope window, Vec window_shift, bool trust_irreducible = false);

  const std::string& name() const { return name_; }
  const FieldPtr& field() const { return field_; }
  int k() const { return k_; }
  int d() const { return d_; }
  int n() const { return k_ - d_; }
  const FieldMatrix& G() const { return G_; }
  const FieldMatrix& phys_basis() const { return phys_basis_; }
  const FieldMatrix& int_basis() const { return int_basis_; }
  const ConvexPolytope& window() const { return window_; }
  const Vec& window_shift() const { return shift_; }
  // Shifted window with facet normals scaled so that the first nonzero
  // coordinate has absolute value one.
  const ConvexPolytope& effective_window() const { return eff_window_; }
  const ConvexPolytope& window_difference() const { return diff_window_; }
  // Rows 0..d-1: physical coordinates; rows d..k-1: internal coordinates.
  const FieldMatrix& coord_map() const { return coord_; }
  FieldMatrix phys_map() const;
  FieldMatrix int_map() const;

  Vec project_phys(const LatticePoint& g) const;
  Vec project_int(const LatticePoint& g) const;
  Vec star(const LatticePoint& g) const { return project_int(g); }
  FieldReal phys_norm_squared(const LatticePoint& g) const;

  Scheme with_shift(Vec shift) const;

 private:
  std::string name_;
  FieldPtr field_;
  int k_ = 0, d_ = 0;
  FieldMatrix G_, phys_basis_, int_basis_, coord_;
  ConvexPolytope window_, eff_window_, diff_window_;
  Vec shift_;
};

struct ValidationReport {
  bool basis_invertible = false;
  bool phys_injective = false;
  bool internal_dense = false;
  bool window_ok = false;
  bool nonsingular = false;
  bool aperiodic = false;
  Rational nonsingular_radius;
  std::optional<LatticePoint> singular_witness;
  std::optional<size_t> singular_facet;
  std::vector<std::string> messages;

  bool ok() const { return basis_invertible && phys_injective && internal_dense && window_ok && nonsingular; }
};

ValidationReport validate(const Scheme& s, const Rational& nonsingular_radius);
bool is_aperiodic(const Scheme& s);

Vec project_phys(const Scheme& s, const LatticePoint& g);
Vec project_int(const Scheme& s, const LatticePoint& g);
Vec star(const Scheme& s, const LatticePoint& g);

// Slab S(r): |g_phys| <= r and g_int in W - W.
std::vector<LatticePoint> enum_slab(const Scheme& s, const Rational& r);
// Box B(r): |g_phys| <= r and |g_int| <= r.
std::vector<LatticePoint> enum_box(const Scheme& s, const Rational& r);
// Points of the model set with |y_phys| <= R.
std::vector<LatticePoint> generate_points(const Scheme& s, const Rational& R);

struct Patch {
  LatticePoint center;
  Rational radius_sq;
  std::vector<LatticePoint> p_in, p_out;
};

bool in_window(const Scheme& s, const Vec& internal_point);
Patch patch(const Scheme& s, const LatticePoint& y, const Rational& r);
Patch patch(const Scheme& s, const LatticePoint& y, const Rational& r, const std::vector<LatticePoint>& slab);

}  // namespace cps
