#pragma once

#include <array>
#include <compare>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "cps/rational.hpp"

namespace cps {

inline constexpr int kMaxFieldDegree = 8;

struct RationalInterval {
  Rational lo, hi;
  bool contains(const Rational& q) const { return lo <= q && q <= hi; }
  Rational width() const { return hi - lo; }
};

// Element of Z[theta] with machine-integer coordinates, used on hot paths.
struct IntElem {
  std::array<i128, kMaxFieldDegree> c{};

  bool is_zero() const {
    for (auto v : c)
      if (v != 0) return false;
    return true;
  }
  bool operator==(const IntElem&) const = default;
};

IntElem operator+(const IntElem& a, const IntElem& b);
IntElem operator-(const IntElem& a, const IntElem& b);
IntElem operator-(const IntElem& a);
IntElem operator*(i128 s, const IntElem& a);
IntElem& operator+=(IntElem& a, const IntElem& b);
IntElem& operator-=(IntElem& a, const IntElem& b);

struct IntElemHash {
  size_t operator()(const IntElem& e) const;
};

class NumberField {
 public:
  NumberField(std::vector<Integer> min_poly, Rational lo, Rational hi, bool trust_irreducible = false);

  int degree() const { return degree_; }
  const std::vector<Integer>& min_poly() const { return min_poly_; }
  const RationalInterval& root_interval() const { return given_interval_; }
  bool irreducibility_trusted() const { return trusted_; }
  bool same_as(const NumberField& other) const;

  // Embedding sign of sum coeffs[i] * theta^i.
  int sign(std::span<const Rational> coeffs) const;
  int sign(const IntElem& e) const;
  RationalInterval approx(std::span<const Rational> coeffs, int bits) const;

  // Reduction of a polynomial product modulo min_poly.
  std::vector<Rational> multiply(std::span<const Rational> a, std::span<const Rational> b) const;
  IntElem multiply(const IntElem& a, const IntElem& b) const;

  // value * 2^fixed_shift() lies in [lo, hi]; valid only when fast_ok(e).
  struct Fixed {
    i128 lo, hi;
  };
  bool fast_ok(const IntElem& e) const;
  Fixed fixed(const IntElem& e) const;
  int fixed_shift() const { return shift_; }
  // floor / ceil bounds of the embedding of e / den (den > 0), conservative.
  std::int64_t floor_bound(const IntElem& e, i128 den) const;
  std::int64_t ceil_bound(const IntElem& e, i128 den) const;

  Rational eval_min_poly(const Rational& x) const;
  // Double value with absolute error below 1e-9; false when that is not assured.
  bool quick_double(std::span<const Rational> coeffs, double& out) const;

 private:
  int sign_exact(std::span<const Rational> coeffs) const;
  RationalInterval eval_interval(std::span<const Rational> coeffs, const std::vector<RationalInterval>& powers) const;
  std::vector<RationalInterval> power_intervals(const RationalInterval& t) const;
  RationalInterval bisect(const RationalInterval& t) const;

  int degree_ = 1;
  std::vector<Integer> min_poly_;  // c0..cg, monic
  RationalInterval given_interval_;
  RationalInterval fine_interval_;
  std::vector<RationalInterval> fine_powers_;
  bool trusted_ = false;
  int shift_ = 0;
  std::array<i128, kMaxFieldDegree> fixed_powers_{};
  std::array<double, kMaxFieldDegree> double_powers_{};
  bool sign_at_lo_positive_ = false;
};

using FieldPtr = std::shared_ptr<const NumberField>;

FieldPtr make_field(std::vector<Integer> min_poly, Rational lo, Rational hi, bool trust_irreducible = false);
FieldPtr rational_field();

// Exact real algebraic number sum coeffs[i] * theta^i.  A value without a
// field is a plain rational and adopts the field of its partner in mixed
// arithmetic.
class FieldReal {
 public:
  FieldReal() = default;
  FieldReal(const Rational& q) : coeffs_{q} { canonicalize_coeffs(); }
  FieldReal(long v) : coeffs_{Rational(v)} { canonicalize_coeffs(); }
  FieldReal(int v) : coeffs_{Rational(v)} { canonicalize_coeffs(); }
  FieldReal(FieldPtr field, const Rational& q);
  FieldReal(FieldPtr field, std::vector<Rational> coeffs);
  static FieldReal generator(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  // Coefficient vector padded to the field degree (size 1 when fieldless).
  std::vector<Rational> coeffs() const;
  const Rational& coeff(int i) const;
  bool is_rational() const;
  Rational rational_value() const;

  int sign() const;
  bool is_zero() const;
  RationalInterval approx(int bits) const;
  double to_double() const;
  FieldReal inverse() const;
  FieldReal abs() const { return sign() < 0 ? -*this : *this; }

  FieldReal& operator+=(const FieldReal& b);
  FieldReal& operator-=(const FieldReal& b);
  FieldReal& operator*=(const FieldReal& b);
  FieldReal& operator/=(const FieldReal& b);
  friend FieldReal operator+(FieldReal a, const FieldReal& b) { return a += b; }
  friend FieldReal operator-(FieldReal a, const FieldReal& b) { return a -= b; }
  friend FieldReal operator*(FieldReal a, const FieldReal& b) { return a *= b; }
  friend FieldReal operator/(FieldReal a, const FieldReal& b) { return a /= b; }
  FieldReal operator-() const;

  friend bool operator==(const FieldReal& a, const FieldReal& b);
  friend std::strong_ordering operator<=>(const FieldReal& a, const FieldReal& b);

  // Integer coordinates after scaling by the positive integer 'scale'.
  IntElem scaled(const Integer& scale) const;
  // Least common multiple of the coefficient denominators.
  Integer denominator() const;

  std::string to_string() const;

 private:
  void adopt(const FieldReal& other);
  void trim();
  void canonicalize_coeffs();

  FieldPtr field_;
  std::vector<Rational> coeffs_;  // trailing zeros trimmed; empty = 0
};

FieldPtr common_field(const FieldReal& a, const FieldReal& b);
FieldReal field_arith(const FieldReal& a, const FieldReal& b, char op);

}  // namespace cps
