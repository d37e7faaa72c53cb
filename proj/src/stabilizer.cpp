#include "cps/stabilizer.hpp"

#include <stdexcept>

namespace cps {

namespace {

IntegerLattice kernel_of_form(const Scheme& s, const Vec& normal) {
  FieldMatrix im = s.int_map();
  FieldMatrix row(1, s.k());
  for (int c = 0; c < s.k(); ++c) {
    FieldReal acc;
    for (int j = 0; j < s.n(); ++j) acc += normal[j] * im(j, c);
    row(0, c) = acc;
  }
  return integer_kernel(row);
}

int projected_rank(const Scheme& s, const IntegerLattice& l) {
  if (l.rank() == 0) return 0;
  std::vector<Vec> rows;
  for (auto& b : l.basis) rows.push_back(s.star(LatticePoint::from_intvec(b)));
  return (int)rank_over_field(FieldMatrix::from_rows(rows));
}

std::optional<size_t> find_class(const std::vector<DirectionClass>& cls, const Vec& normal) {
  for (size_t i = 0; i < cls.size(); ++i)
    if (cls[i].normal == normal) return i;
  return std::nullopt;
}

}  // namespace

AffineHyperplane facet_hyperplane(const Scheme& s, size_t i) {
  auto& h = s.effective_window().halfspaces().at(i);
  return AffineHyperplane::make(h.normal, h.offset);
}

std::vector<DirectionClass> direction_classes(const Scheme& s) {
  std::vector<DirectionClass> out;
  auto& hs = s.effective_window().halfspaces();
  for (size_t i = 0; i < hs.size(); ++i) {
    AffineHyperplane H = facet_hyperplane(s, i);
    auto c = find_class(out, H.normal);
    if (c) {
      out[*c].facets.push_back(i);
      continue;
    }
    DirectionClass dc;
    dc.normal = H.normal;
    dc.facets = {i};
    IntegerLattice st = kernel_of_form(s, H.normal);
    dc.rk = (int)st.rank();
    dc.beta = projected_rank(s, st);
    out.push_back(std::move(dc));
  }
  return out;
}

HyperplaneData stabilizer(const Scheme& s, const AffineHyperplane& H_in) {
  AffineHyperplane H = AffineHyperplane::make(H_in.normal, H_in.offset);
  auto& W = s.effective_window();
  std::optional<size_t> facet;
  for (size_t i = 0; i < W.halfspaces().size(); ++i)
    if (facet_hyperplane(s, i) == H) facet = i;
  if (!facet) throw std::invalid_argument("hyperplane does not support a facet of the window");
  HyperplaneData hd;
  hd.H = H;
  hd.facet = *facet;
  auto classes = direction_classes(s);
  hd.direction_class = *find_class(classes, H.normal);
  hd.V_H = nullspace(FieldMatrix::from_rows({H.normal}));
  hd.stab = kernel_of_form(s, H.normal);
  hd.rk = (int)hd.stab.rank();
  hd.beta = projected_rank(s, hd.stab);
  hd.face = *face_of(W, H);
  for (size_t i : classes[hd.direction_class].facets)
    if (i != hd.facet) hd.opposite = facet_hyperplane(s, i);
  return hd;
}

std::vector<HyperplaneData> all_stabilizers(const Scheme& s) {
  std::vector<HyperplaneData> out;
  for (size_t i = 0; i < s.effective_window().halfspaces().size(); ++i)
    out.push_back(stabilizer(s, facet_hyperplane(s, i)));
  return out;
}

std::vector<std::vector<size_t>> flags_of_normals(const std::vector<Vec>& normals, size_t n) {
  std::vector<std::vector<size_t>> out;
  size_t m = normals.size();
  if (n == 0 || n > m) return out;
  std::vector<size_t> idx(n);
  for (size_t i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    std::vector<Vec> rows;
    for (size_t i : idx) rows.push_back(normals[i]);
    if (rank_over_field(FieldMatrix::from_rows(rows)) == n) out.push_back(idx);
    int i = (int)n - 1;
    while (i >= 0 && idx[i] == m - n + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (size_t j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<Flag> flags(const Scheme& s, const std::vector<DirectionClass>& classes) {
  std::vector<Vec> normals;
  for (auto& c : classes) normals.push_back(c.normal);
  std::vector<Flag> out;
  for (auto& members : flags_of_normals(normals, s.n())) {
    Flag f;
    f.members = members;
    for (size_t i : members) {
      f.alpha_f += s.k() - classes[i].rk - 1;
      f.alpha_prime_f += s.d() - classes[i].rk + classes[i].beta;
    }
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Flag> flags(const Scheme& s) { return flags(s, direction_classes(s)); }

}  // namespace cps
