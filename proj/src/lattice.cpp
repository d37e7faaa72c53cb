#include "cps/lattice.hpp"

#include <stdexcept>

namespace cps {

namespace {

bool zero_row(const IntVec& r) {
  for (auto& x : r)
    if (x != 0) return false;
  return true;
}

// Row reduction by unimodular operations into echelon form; the same
// operations are applied to 'companion' (may be null).
void echelon(IntMatrix& a, IntMatrix* companion) {
  size_t rows = a.size();
  if (rows == 0) return;
  size_t cols = a[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    // Euclid on column c among rows r..end
    while (true) {
      size_t best = rows;
      for (size_t i = r; i < rows; ++i)
        if (a[i][c] != 0 && (best == rows || abs(a[i][c]) < abs(a[best][c]))) best = i;
      if (best == rows) break;
      std::swap(a[r], a[best]);
      if (companion) std::swap((*companion)[r], (*companion)[best]);
      bool done = true;
      for (size_t i = r + 1; i < rows; ++i) {
        if (a[i][c] == 0) continue;
        Integer q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][c].get_mpz_t(), a[r][c].get_mpz_t());
        for (size_t j = c; j < cols; ++j) a[i][j] -= q * a[r][j];
        if (companion)
          for (size_t j = 0; j < (*companion)[i].size(); ++j) (*companion)[i][j] -= q * (*companion)[r][j];
        if (a[i][c] != 0) done = false;
      }
      if (done) break;
    }
    if (a[r][c] == 0) continue;
    if (a[r][c] < 0) {
      for (auto& x : a[r]) x = -x;
      if (companion)
        for (auto& x : (*companion)[r]) x = -x;
    }
    ++r;
  }
}

}  // namespace

IntMatrix hnf(const IntMatrix& m) {
  IntMatrix a = m;
  echelon(a, nullptr);
  IntMatrix out;
  for (auto& r : a)
    if (!zero_row(r)) out.push_back(r);
  // reduce entries above pivots
  for (size_t i = 0; i < out.size(); ++i) {
    size_t p = 0;
    while (out[i][p] == 0) ++p;
    for (size_t u = 0; u < i; ++u) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), out[u][p].get_mpz_t(), out[i][p].get_mpz_t());
      if (q != 0)
        for (size_t j = 0; j < out[u].size(); ++j) out[u][j] -= q * out[i][j];
    }
  }
  return out;
}

IntegerLattice IntegerLattice::from_generators(size_t ambient, const IntMatrix& gens) {
  IntegerLattice l;
  l.ambient = ambient;
  l.basis = hnf(gens);
  return l;
}

bool IntegerLattice::contains(const IntVec& v) const {
  IntVec rest = v;
  for (auto& b : basis) {
    size_t p = 0;
    while (b[p] == 0) ++p;
    for (size_t j = 0; j < p; ++j)
      if (rest[j] != 0) return false;
    if (rest[p] % b[p] != 0) return false;
    Integer q = rest[p] / b[p];
    for (size_t j = 0; j < rest.size(); ++j) rest[j] -= q * b[j];
  }
  return zero_row(rest);
}

IntMatrix expand_rows(const FieldMatrix& m, const Vec* rhs, IntVec* rhs_out) {
  int g = 1;
  for (size_t r = 0; r < m.rows(); ++r)
    for (size_t c = 0; c < m.cols(); ++c)
      if (m(r, c).field()) g = std::max(g, m(r, c).field()->degree());
  if (rhs)
    for (auto& x : *rhs)
      if (x.field()) g = std::max(g, x.field()->degree());
  IntMatrix out;
  if (rhs_out) rhs_out->clear();
  for (size_t r = 0; r < m.rows(); ++r) {
    for (int t = 0; t < g; ++t) {
      std::vector<Rational> row(m.cols());
      Integer l = 1;
      for (size_t c = 0; c < m.cols(); ++c) {
        row[c] = m(r, c).coeff(t);
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), row[c].get_den_mpz_t());
      }
      Rational b = rhs ? (*rhs)[r].coeff(t) : Rational(0);
      mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), b.get_den_mpz_t());
      IntVec irow(m.cols());
      for (size_t c = 0; c < m.cols(); ++c) irow[c] = Rational(row[c] * l).get_num();
      out.push_back(irow);
      if (rhs_out) rhs_out->push_back(Rational(b * l).get_num());
    }
  }
  return out;
}

IntegerLattice integer_kernel(const FieldMatrix& m) {
  size_t k = m.cols();
  IntMatrix a = expand_rows(m, nullptr, nullptr);
  // [A^T | I] reduced: rows with zero left part span the kernel.
  IntMatrix at(k, IntVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < k; ++j) at[j][i] = a[i][j];
  IntMatrix u(k, IntVec(k, 0));
  for (size_t i = 0; i < k; ++i) u[i][i] = 1;
  if (!a.empty()) echelon(at, &u);
  IntMatrix gens;
  for (size_t i = 0; i < k; ++i)
    if (a.empty() || zero_row(at[i])) gens.push_back(u[i]);
  return IntegerLattice::from_generators(k, gens);
}

std::optional<AffineCoset> affine_integer_solutions(const FieldMatrix& m, const Vec& b) {
  size_t k = m.cols();
  IntVec rhs;
  IntMatrix a = expand_rows(m, &b, &rhs);
  IntMatrix at(k, IntVec(a.size()));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < k; ++j) at[j][i] = a[i][j];
  IntMatrix u(k, IntVec(k, 0));
  for (size_t i = 0; i < k; ++i) u[i][i] = 1;
  if (!a.empty()) echelon(at, &u);
  // E = U A^T in echelon form; solve E^T y = rhs.
  IntVec y(k, 0);
  IntVec residual = rhs;
  for (size_t i = 0; i < k; ++i) {
    if (a.empty() || zero_row(at[i])) continue;
    size_t p = 0;
    while (at[i][p] == 0) ++p;
    if (residual[p] % at[i][p] != 0) return std::nullopt;
    y[i] = residual[p] / at[i][p];
    for (size_t j = 0; j < residual.size(); ++j) residual[j] -= y[i] * at[i][j];
  }
  if (!zero_row(residual)) return std::nullopt;
  AffineCoset out;
  out.x0.assign(k, 0);
  for (size_t i = 0; i < k; ++i)
    for (size_t j = 0; j < k; ++j) out.x0[j] += y[i] * u[i][j];
  out.lattice = integer_kernel(m);
  // canonical particular solution: reduce against the kernel basis
  for (auto& bv : out.lattice.basis) {
    size_t p = 0;
    while (bv[p] == 0) ++p;
    Integer q;
    mpz_fdiv_q(q.get_mpz_t(), out.x0[p].get_mpz_t(), bv[p].get_mpz_t());
    for (size_t j = 0; j < k; ++j) out.x0[j] -= q * bv[j];
  }
  return out;
}

IntegerLattice complement_subgroup(const IntegerLattice& l) {
  std::vector<bool> pivot(l.ambient, false);
  for (auto& b : l.basis) {
    size_t p = 0;
    while (b[p] == 0) ++p;
    pivot[p] = true;
  }
  IntMatrix gens;
  for (size_t j = 0; j < l.ambient; ++j) {
    if (pivot[j]) continue;
    IntVec e(l.ambient, 0);
    e[j] = 1;
    gens.push_back(e);
  }
  return IntegerLattice::from_generators(l.ambient, gens);
}

Integer abs_determinant(const IntMatrix& square) {
  IntMatrix a = square;
  echelon(a, nullptr);
  Integer d = 1;
  for (size_t i = 0; i < a.size(); ++i) d *= a[i][i];
  return abs(d);
}

}  // namespace cps
