#include "cps/builtins.hpp"

#include <stdexcept>

namespace cps {

namespace {

FieldReal q(long a, long b = 1) { return FieldReal(Rational(a, b)); }

Vec zero_shift(int n) { return Vec(n); }

ConvexPolytope zonotope(const std::vector<Vec>& gens) {
  std::vector<Vec> pts;
  size_t n = gens[0].size();
  for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
    Vec p(n);
    for (size_t i = 0; i < gens.size(); ++i)
      if (mask & (1u << i)) p = p + gens[i];
    pts.push_back(p);
  }
  return ConvexPolytope::hull(n, pts);
}

Scheme fibonacci(bool shifted) {
  auto f = make_field({Integer(-5), 0, 1}, 2, 3);
  FieldReal r5 = FieldReal::generator(f);
  FieldReal phi = (FieldReal(1) + r5) * q(1, 2);
  FieldMatrix G = FieldMatrix::identity(2);
  FieldMatrix P = FieldMatrix::from_rows({{phi}, {q(1)}});
  FieldMatrix I = FieldMatrix::from_rows({{q(-1)}, {phi}});
  // window: internal projection of the unit square
  FieldReal denom = phi * phi + q(1);
  FieldReal e1 = q(-1) / denom, e2 = phi / denom;
  ConvexPolytope W = ConvexPolytope::hull(1, {{e1}, {e2}, {FieldReal()}, {e1 + e2}});
  Vec shift = shifted ? Vec{q(1, 1000)} : zero_shift(1);
  return Scheme::make("fibonacci", f, 2, 1, G, P, I, W, shift);
}

FieldPtr cubic_field() { return make_field({Integer(-1), 3, 3, 1}, Rational(1, 4), Rational(3, 10)); }

FieldMatrix cubic_generators(const FieldReal& t) {
  return FieldMatrix::from_columns({{q(1), q(1), q(0)}, {t, q(0), q(1)}, {t * t, t, t * t}});
}

Vec cubic_shift(const FieldReal& t) { return {-(t * t) * q(1, 100), -t * q(1, 100)}; }

Scheme triangle(bool shifted) {
  auto f = cubic_field();
  FieldReal t = FieldReal::generator(f);
  FieldMatrix P = FieldMatrix::from_rows({{q(1)}, {q(0)}, {q(0)}});
  FieldMatrix I = FieldMatrix::from_rows({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  ConvexPolytope W = ConvexPolytope::hull(2, {{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  return Scheme::make("triangle", f, 3, 1, cubic_generators(t), P, I, W, shifted ? cubic_shift(t) : zero_shift(2));
}

Scheme cubic_canonical(bool shifted) {
  auto f = cubic_field();
  FieldReal t = FieldReal::generator(f);
  FieldMatrix P = FieldMatrix::from_rows({{q(1)}, {q(0)}, {q(0)}});
  FieldMatrix I = FieldMatrix::from_rows({{q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  ConvexPolytope W = zonotope({{q(1), q(0)}, {q(0), q(1)}, {t, t * t}});
  return Scheme::make("cubic-3-1", f, 3, 1, cubic_generators(t), P, I, W, shifted ? cubic_shift(t) : zero_shift(2));
}

Scheme ammann_beenker(bool shifted) {
  auto f = make_field({Integer(-2), 0, 1}, 1, 2);
  FieldReal h = FieldReal::generator(f) * q(1, 2);  // sqrt(2)/2
  // star vectors: physical angle j*pi/4, internal angle 3j*pi/4
  std::vector<Vec> a = {{q(1), q(0)}, {h, h}, {q(0), q(1)}, {-h, h}};
  std::vector<Vec> b = {{q(1), q(0)}, {-h, h}, {q(0), q(-1)}, {h, h}};
  FieldMatrix P(4, 2), I(4, 2);
  for (int j = 0; j < 4; ++j)
    for (int c = 0; c < 2; ++c) {
      P(j, c) = a[j][c] * q(1, 2);
      I(j, c) = b[j][c] * q(1, 2);
    }
  ConvexPolytope W = zonotope(b);
  Vec shift = shifted ? Vec{q(1, 100), q(1, 300)} : zero_shift(2);
  return Scheme::make("ab4", f, 4, 2, FieldMatrix::identity(4), P, I, W, shift);
}

Scheme square(bool shifted) {
  auto f = make_field({Integer(-2), 0, 1}, 1, 2);
  FieldReal r2 = FieldReal::generator(f);
  // columns: (physical part; internal part)
  std::vector<Vec> gens = {
      {q(1), q(0), q(1), r2},
      {q(0), q(1), q(1), -r2},
      {r2, q(1, 3), r2, q(1)},
      {q(1, 5), r2, -r2, q(1)},
  };
  FieldMatrix G = FieldMatrix::from_columns(gens);
  FieldMatrix P = FieldMatrix::from_rows({{q(1), q(0)}, {q(0), q(1)}, {q(0), q(0)}, {q(0), q(0)}});
  FieldMatrix I = FieldMatrix::from_rows({{q(0), q(0)}, {q(0), q(0)}, {q(1), q(0)}, {q(0), q(1)}});
  ConvexPolytope W = ConvexPolytope::box({q(0), q(0)}, {r2, r2});
  Vec shift = shifted ? Vec{q(-1, 100), q(-1, 300)} : zero_shift(2);
  return Scheme::make("square-4-2", f, 4, 2, G, P, I, W, shift);
}

}  // namespace

std::vector<std::string> builtin_names() { return {"fibonacci", "triangle", "cubic-3-1", "ab4", "square-4-2"}; }

Scheme builtin_scheme(const std::string& name, bool shifted) {
  if (name == "fibonacci") return fibonacci(shifted);
  if (name == "triangle") return triangle(shifted);
  if (name == "cubic-3-1") return cubic_canonical(shifted);
  if (name == "ab4") return ammann_beenker(shifted);
  if (name == "square-4-2") return square(shifted);
  throw std::invalid_argument("unknown builtin scheme: " + name);
}

}  // namespace cps
