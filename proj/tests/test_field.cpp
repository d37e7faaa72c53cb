#include <algorithm>
#include <cmath>

#include "cps/field.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cps;
using namespace testing_support;

namespace {

// Independent root oracle: long-double bisection on the cubic.
long double cubic_root() {
  long double lo = 0.25L, hi = 0.3L;
  for (int i = 0; i < 200; ++i) {
    long double mid = (lo + hi) / 2;
    long double v = mid * mid * mid + 3 * mid * mid + 3 * mid - 1;
    (v < 0 ? lo : hi) = mid;
  }
  return lo;
}

RationalInterval imul(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

}  // namespace

TEST_CASE("golden ratio squares to itself plus one") {
  auto f = golden_field();
  FieldReal phi = FieldReal::generator(f);
  CHECK(phi * phi == phi + FieldReal(1));
  CHECK((phi + FieldReal(f, 0)) == phi);
}

TEST_CASE("cube of theta plus one is two") {
  auto f = cubic_field();
  FieldReal t = FieldReal::generator(f);
  FieldReal x = t + FieldReal(1);
  FieldReal cube = x * x * x;
  CHECK(cube == FieldReal(f, 2));
  // interval cross-check at 50 bits
  RationalInterval ti = t.approx(50);
  RationalInterval xi{ti.lo + 1, ti.hi + 1};
  RationalInterval ci = imul(imul(xi, xi), xi);
  CHECK(ci.lo <= 2);
  CHECK(ci.hi >= 2);
}

TEST_CASE("sign examples") {
  auto g = golden_field();
  FieldReal phi = FieldReal::generator(g);
  CHECK(FieldReal(g, 0).sign() == 0);
  CHECK((phi * phi - phi - FieldReal(1)).sign() == 0);
  auto c = cubic_field();
  FieldReal t = FieldReal::generator(c);
  long double root = cubic_root();
  CHECK(root < 0.5L);
  CHECK((FieldReal(2) * t - FieldReal(1)).sign() == -1);
}

TEST_CASE("approx examples") {
  auto one = FieldReal(1).approx(10);
  CHECK(one.contains(1));
  CHECK(one.width() <= Rational(1, 1024));
  auto phi = FieldReal::generator(golden_field()).approx(20);
  CHECK(phi.width() <= Rational(1, 1 << 20));
  // decimal truncation of (1+sqrt 5)/2
  CHECK(phi.lo >= Rational(1618033, 1000000));
  CHECK(phi.hi <= Rational(1618034, 1000000));
  auto th = FieldReal::generator(cubic_field()).approx(20);
  CHECK(th.width() <= Rational(1, 1 << 20));
  CHECK(th.lo >= Rational(259921, 1000000));
  CHECK(th.hi <= Rational(259922, 1000000));
  long double root = cubic_root();
  CHECK(th.lo.get_d() <= (double)root + 1e-12);
  CHECK(th.hi.get_d() >= (double)root - 1e-12);
}

TEST_CASE("arithmetic errors") {
  auto f = golden_field();
  FieldReal phi = FieldReal::generator(f);
  CHECK_THROWS_AS(phi / FieldReal(f, 0), std::domain_error);
  auto h = cubic_field();
  CHECK_THROWS_AS(phi + FieldReal::generator(h), std::invalid_argument);
  CHECK(phi.inverse() * phi == FieldReal(1));
}

TEST_CASE("field construction validation") {
  CHECK_THROWS(make_field({Integer(-4), 0, 1}, 1, 3));         // reducible
  CHECK_THROWS(make_field({Integer(-2), 0, 1}, -2, 2));        // two roots
  CHECK_THROWS(make_field({Integer(-2), 0, 2}, 1, 2));         // not monic
  CHECK_NOTHROW(make_field({Integer(-2), 0, 0, 0, 1}, 1, 2));  // x^4 - 2, certified mod p
  // x^4 + 1 is reducible mod every prime; requires the trust flag
  CHECK_THROWS(make_field({Integer(1), 0, 0, 0, 1}, -1, 1));
  // (x^2-2)(x^2-3) is reducible with no rational root
  CHECK_THROWS(make_field({Integer(6), 0, -5, 0, 1}, Rational(13, 10), Rational(3, 2)));
  auto trusted = make_field({Integer(6), 0, -5, 0, 1}, Rational(13, 10), Rational(3, 2), true);
  CHECK(trusted->irreducibility_trusted());
}

TEST_CASE("randomized field properties") {
  std::mt19937_64 rng(12345);
  for (auto f : {golden_field(), cubic_field(), sqrt2_field()}) {
    std::vector<FieldReal> elems;
    for (int i = 0; i < 100; ++i) elems.push_back(random_element(rng, f));
    for (int i = 0; i < 100; ++i) {
      const FieldReal& a = elems[i];
      const FieldReal& b = elems[(i * 37 + 11) % 100];
      CHECK((a * b).sign() == a.sign() * b.sign());
      CHECK((a - a).is_zero());
      CHECK(FieldReal(f, a.coeffs()) == a);
      auto ia = a.approx(40), ib = b.approx(40);
      RationalInterval s{ia.lo + ib.lo, ia.hi + ib.hi};
      int expect = s.lo > 0 ? 1 : s.hi < 0 ? -1 : 2;
      if (expect != 2) CHECK((a + b).sign() == expect);
      if (!b.is_zero()) CHECK((a / b) * b == a);
    }
    std::vector<FieldReal> sorted = elems;
    std::sort(sorted.begin(), sorted.end());
    for (size_t i = 0; i + 1 < sorted.size(); ++i) CHECK(sorted[i] <= sorted[i + 1]);
    for (int t = 0; t < 300; ++t) {
      const FieldReal& a = elems[rng() % 100];
      const FieldReal& b = elems[rng() % 100];
      const FieldReal& c = elems[rng() % 100];
      if (a <= b && b <= c) CHECK(a <= c);
      CHECK(((a < b) + (b < a) + (a == b)) == 1);
    }
  }
}

TEST_CASE("fast integer sign agrees with exact sign near cancellation") {
  auto f = sqrt2_field();
  // convergents p/q of sqrt 2 make p - q*sqrt2 tiny
  i128 p = 1, q = 1;
  for (int i = 0; i < 30; ++i) {
    IntElem e;
    e.c[0] = p;
    e.c[1] = -q;
    FieldReal x(f, std::vector<Rational>{Rational(to_integer(p)), Rational(-to_integer(q))});
    int expect = (p * p - 2 * q * q) > 0 ? 1 : -1;
    CHECK(f->sign(e) == expect);
    CHECK(x.sign() == expect);
    i128 np = p + 2 * q, nq = p + q;
    p = np;
    q = nq;
  }
}
