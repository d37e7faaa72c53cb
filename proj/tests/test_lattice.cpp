#include "cps/lattice.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cps;
using namespace testing_support;

namespace {

IntVec iv(std::initializer_list<long> xs) {
  IntVec v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

FieldMatrix row_matrix(const Vec& row) { return FieldMatrix::from_rows({row}); }

bool satisfies(const FieldMatrix& m, const IntVec& v, const Vec& b) {
  Vec x;
  for (auto& c : v) x.push_back(FieldReal(Rational(c)));
  Vec r = m * x;
  return r == b;
}

// Enumerate the integer box [-R, R]^m.
template <class F>
void box_scan(size_t m, long R, F&& f) {
  IntVec v(m, Integer(-R));
  while (true) {
    f(v);
    size_t i = 0;
    while (i < m && v[i] == R) v[i++] = -R;
    if (i == m) return;
    v[i] += 1;
  }
}

}  // namespace

TEST_CASE("rank over field") {
  CHECK(rank_over_field(FieldMatrix::identity(3)) == 3);
  auto g = golden_field();
  FieldReal phi = FieldReal::generator(g);
  CHECK(rank_over_field(FieldMatrix::from_rows({{FieldReal(1), phi}, {phi, phi + FieldReal(1)}})) == 1);
  auto s = sqrt2_field();
  FieldReal r2 = FieldReal::generator(s);
  auto m = FieldMatrix::from_rows({{FieldReal(1), r2}, {FieldReal(1), -r2}, {r2, FieldReal(1)}, {-r2, FieldReal(1)}});
  CHECK(rank_over_field(m) == 2);
  // oracle: the 2x2 minor of the first two rows has determinant -2 sqrt2 != 0
  CHECK(!determinant(m.select_rows({0, 1})).is_zero());
}

TEST_CASE("integer kernel examples") {
  auto k1 = integer_kernel(row_matrix({FieldReal(1), FieldReal(1), FieldReal(0)}));
  CHECK(k1.basis == IntMatrix{iv({1, -1, 0}), iv({0, 0, 1})});

  auto c = cubic_field();
  FieldReal t = FieldReal::generator(c);
  auto k2 = integer_kernel(row_matrix({FieldReal(1), t, t * t}));
  CHECK(k2.rank() == 0);
  // oracle: the expanded rational coefficient matrix of 1, t, t^2 is nonsingular
  IntMatrix expanded = expand_rows(row_matrix({FieldReal(1), t, t * t}), nullptr, nullptr);
  CHECK(abs_determinant(expanded) != 0);

  // second internal coordinate of the triangle generators (0, 1, t^2)
  auto k3 = integer_kernel(row_matrix({FieldReal(0), FieldReal(1), t * t}));
  CHECK(k3.basis == IntMatrix{iv({1, 0, 0})});
}

TEST_CASE("hermite normal form examples") {
  CHECK(hnf({iv({1, 0}), iv({0, 1})}) == IntMatrix{iv({1, 0}), iv({0, 1})});
  IntMatrix h = hnf({iv({2, 4}), iv({6, 8})});
  CHECK(h == IntMatrix{iv({2, 0}), iv({0, 4})});
  CHECK(abs_determinant(h) == 8);
  CHECK(abs_determinant({iv({2, 4}), iv({6, 8})}) == 8);
  CHECK(hnf({iv({0, 0}), iv({0, 0})}).empty());
}

TEST_CASE("affine integer solutions examples") {
  auto r = affine_integer_solutions(row_matrix({FieldReal(1), FieldReal(0), FieldReal(0)}), {FieldReal(5)});
  REQUIRE(r);
  CHECK(r->x0 == iv({5, 0, 0}));
  CHECK(r->lattice.basis == IntMatrix{iv({0, 1, 0}), iv({0, 0, 1})});

  auto c = cubic_field();
  FieldReal t = FieldReal::generator(c);
  auto m = row_matrix({FieldReal(1), t, t * t});
  auto r2 = affine_integer_solutions(m, {FieldReal(c, 1)});
  REQUIRE(r2);
  CHECK(r2->x0 == iv({1, 0, 0}));
  CHECK(r2->lattice.rank() == 0);
  CHECK(!affine_integer_solutions(m, {t * FieldReal(Rational(1, 2))}));
}

TEST_CASE("complement subgroup examples") {
  auto check = [](const IntegerLattice& l) {
    auto c = complement_subgroup(l);
    CHECK(c.rank() + l.rank() == l.ambient);
    IntMatrix all = l.basis;
    for (auto& b : c.basis) all.push_back(b);
    CHECK(hnf(all).size() == l.ambient);  // trivial intersection and finite index
    return c;
  };
  auto c1 = check(IntegerLattice::from_generators(2, {iv({1, 0})}));
  CHECK(c1.basis == IntMatrix{iv({0, 1})});
  check(IntegerLattice::from_generators(2, {iv({2, 0})}));
  check(IntegerLattice::from_generators(3, {iv({1, 1, 0}), iv({0, 2, 1})}));
}

TEST_CASE("randomized integer kernel completeness") {
  std::mt19937_64 rng(777);
  auto c = cubic_field();
  auto s = sqrt2_field();
  for (int trial = 0; trial < 100; ++trial) {
    size_t m = 3;
    auto f = (trial % 3 == 0) ? c : s;
    std::uniform_int_distribution<int> d(-2, 2);
    Vec row;
    for (size_t j = 0; j < m; ++j) {
      std::vector<Rational> co(f->degree());
      for (auto& x : co) x = d(rng);
      if (trial % 2 == 0) std::fill(co.begin() + 1, co.end(), 0);  // rational rows give larger kernels
      row.push_back(FieldReal(f, co));
    }
    FieldMatrix mat = row_matrix(row);
    auto k = integer_kernel(mat);
    for (auto& b : k.basis) CHECK(satisfies(mat, b, {FieldReal()}));
    box_scan(m, 5, [&](const IntVec& v) {
      if (satisfies(mat, v, {FieldReal()})) CHECK(k.contains(v));
    });
  }
}

TEST_CASE("randomized hnf preserves the row lattice") {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<int> d(-9, 9);
  for (int trial = 0; trial < 100; ++trial) {
    size_t rows = 1 + trial % 4, cols = 1 + (trial / 4) % 4;
    IntMatrix m(rows, IntVec(cols));
    for (auto& r : m)
      for (auto& x : r) x = d(rng);
    IntMatrix h = hnf(m);
    auto lh = IntegerLattice{cols, h};
    for (auto& r : m) CHECK(lh.contains(r));
    auto lm = IntegerLattice::from_generators(cols, m);
    for (auto& r : h) CHECK(lm.contains(r));
    if (rows == cols && h.size() == rows) CHECK(abs_determinant(h) == abs_determinant(m));
  }
}

TEST_CASE("randomized affine solutions against brute force") {
  std::mt19937_64 rng(4242);
  auto s = sqrt2_field();
  std::uniform_int_distribution<int> d(-3, 3);
  for (int trial = 0; trial < 100; ++trial) {
    Vec row;
    for (int j = 0; j < 3; ++j) row.push_back(FieldReal(s, std::vector<Rational>{Rational(d(rng)), Rational(trial % 2 ? d(rng) : 0)}));
    FieldMatrix mat = row_matrix(row);
    Vec b{FieldReal(s, std::vector<Rational>{Rational(d(rng)), Rational(d(rng))})};
    auto sol = affine_integer_solutions(mat, b);
    if (sol) {
      CHECK(satisfies(mat, sol->x0, b));
      for (auto& bv : sol->lattice.basis) {
        IntVec y = sol->x0;
        for (size_t j = 0; j < y.size(); ++j) y[j] += bv[j];
        CHECK(satisfies(mat, y, b));
      }
    }
    box_scan(3, 5, [&](const IntVec& v) {
      if (!satisfies(mat, v, b)) return;
      REQUIRE(sol);
      IntVec diff = v;
      for (size_t j = 0; j < v.size(); ++j) diff[j] -= sol->x0[j];
      CHECK(sol->lattice.contains(diff));
    });
  }
}
