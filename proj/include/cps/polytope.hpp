#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "cps/linalg.hpp"

namespace cps {

// {x : normal . x <= offset}
struct Halfspace {
  Vec normal;
  FieldReal offset;

  FieldReal slack(const Vec& x) const { return offset - dot(normal, x); }
  Halfspace translated(const Vec& t) const { return {normal, offset + dot(normal, t)}; }
  Halfspace flipped() const;
};

// {x : normal . x = offset}, first nonzero normal coordinate equal to 1.
struct AffineHyperplane {
  Vec normal;
  FieldReal offset;

  static AffineHyperplane make(const Vec& normal, const FieldReal& offset);
  FieldReal eval(const Vec& x) const { return dot(normal, x) - offset; }
  bool operator==(const AffineHyperplane& o) const { return normal == o.normal && offset == o.offset; }
};

class ConvexPolytope {
 public:
  ConvexPolytope() = default;  // the empty set

  static ConvexPolytope from_halfspaces(size_t dim, const std::vector<Halfspace>& hs);
  static ConvexPolytope hull(size_t dim, const std::vector<Vec>& points);
  static ConvexPolytope box(const Vec& lo, const Vec& hi);

  bool empty() const { return vertices_.empty(); }
  size_t dim() const { return dim_; }
  int affine_dim() const { return affine_dim_; }
  bool full_dimensional() const { return !empty() && affine_dim_ == (int)dim_; }
  const std::vector<Halfspace>& halfspaces() const { return halfspaces_; }
  const std::vector<Vec>& vertices() const { return vertices_; }
  // Indices of the halfspaces tight at each vertex.
  const std::vector<std::vector<int>>& incidence() const { return incidence_; }

  Vec witness() const;
  bool contains(const Vec& x) const;
  bool contains_interior(const Vec& x) const;
  bool contains_polytope(const ConvexPolytope& other) const;
  ConvexPolytope translated(const Vec& t) const;
  ConvexPolytope negated() const;
  // Scaling about the origin by a positive factor.
  ConvexPolytope scaled(const FieldReal& factor) const;
  // Per-coordinate [min, max] over the vertices.
  std::vector<std::pair<FieldReal, FieldReal>> bounding_box() const;
  std::pair<FieldReal, FieldReal> range(const Vec& direction) const;

 private:
  friend struct PolytopeAccess;
  void finalize();

  size_t dim_ = 0;
  int affine_dim_ = -1;
  std::vector<Halfspace> halfspaces_;
  std::vector<Vec> vertices_;
  std::vector<std::vector<int>> incidence_;
};

ConvexPolytope dd_convert(size_t dim, const std::vector<Halfspace>& hs);
// P ∩ H; nullopt when empty.  Throws when H cuts the interior of P.
std::optional<ConvexPolytope> face_of(const ConvexPolytope& p, const AffineHyperplane& h);
ConvexPolytope minkowski_diff_self(const ConvexPolytope& w);
ConvexPolytope minkowski_sum(const ConvexPolytope& a, const ConvexPolytope& b);
// (P ∩ {normal.x >= offset}, P ∩ {normal.x <= offset}); a side is empty when
// the interior of P lies strictly on the other side.
std::pair<ConvexPolytope, ConvexPolytope> split(const ConvexPolytope& p, const AffineHyperplane& h);
ConvexPolytope clip(const ConvexPolytope& p, const Halfspace& h);
ConvexPolytope intersect(const ConvexPolytope& a, const ConvexPolytope& b);
bool interiors_intersect(const ConvexPolytope& a, const ConvexPolytope& b);
FieldReal volume(const ConvexPolytope& p);

struct CoverResult {
  bool covered = true;
  Vec witness;  // interior point of an uncovered part when !covered
};
CoverResult covering_test(const ConvexPolytope& target, const std::vector<ConvexPolytope>& pieces);
// Full-dimensional convex pieces of closure(cells minus piece).
std::vector<ConvexPolytope> subtract(const std::vector<ConvexPolytope>& cells, const ConvexPolytope& piece);

// Exact angular order of 2-d vectors (counterclockwise from the positive x axis).
bool angle_less(const Vec& a, const Vec& b);

}  // namespace cps
