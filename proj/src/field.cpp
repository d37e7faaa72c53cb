#include "cps/field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cps {

namespace {

i128 checked_add(i128 a, i128 b) {
  i128 r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Z[theta] coordinate overflow");
  return r;
}

i128 checked_mul(i128 a, i128 b) {
  i128 r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Z[theta] coordinate overflow");
  return r;
}

i128 abs128(i128 v) { return v < 0 ? -v : v; }

i128 floor_div(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

i128 ceil_div(i128 a, i128 b) { return -floor_div(-a, b); }

RationalInterval mul_interval(const RationalInterval& a, const RationalInterval& b) {
  Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
  return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

// Polynomials over F_p, coefficient vectors low to high.
using ModPoly = std::vector<long>;

void mod_trim(ModPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

long mod_inv(long a, long p) {
  long r = 1, e = p - 2;
  a %= p;
  while (e > 0) {
    if (e & 1) r = r * a % p;
    a = a * a % p;
    e >>= 1;
  }
  return r;
}

ModPoly mod_rem(ModPoly a, const ModPoly& m, long p) {
  mod_trim(a);
  long inv = mod_inv(m.back(), p);
  while (a.size() >= m.size()) {
    long c = a.back() * inv % p;
    size_t off = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[off + i] = ((a[off + i] - c * m[i]) % p + p) % p;
    mod_trim(a);
  }
  return a;
}

ModPoly mod_mulmod(const ModPoly& a, const ModPoly& b, const ModPoly& m, long p) {
  if (a.empty() || b.empty()) return {};
  ModPoly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  return mod_rem(r, m, p);
}

ModPoly mod_gcd(ModPoly a, ModPoly b, long p) {
  mod_trim(a);
  mod_trim(b);
  while (!b.empty()) {
    ModPoly r = mod_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

bool irreducible_mod_p(const std::vector<Integer>& f, long p) {
  ModPoly m(f.size());
  for (size_t i = 0; i < f.size(); ++i) {
    Integer r = f[i] % p;
    if (r < 0) r += p;
    m[i] = r.get_si();
  }
  int g = (int)f.size() - 1;
  ModPoly x = {0, 1};
  ModPoly power = x;  // x^(p^i) mod m
  for (int i = 1; i <= g / 2; ++i) {
    ModPoly base = power, acc = {1};
    long e = p;
    while (e > 0) {
      if (e & 1) acc = mod_mulmod(acc, base, m, p);
      base = mod_mulmod(base, base, m, p);
      e >>= 1;
    }
    power = acc;
    ModPoly diff = power;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    ModPoly g_ = mod_gcd(m, diff, p);
    if (g_.size() > 1) return false;
  }
  // square-freeness: gcd(m, m') trivial
  ModPoly dm;
  for (size_t i = 1; i < m.size(); ++i) dm.push_back((long)(i % p) * m[i] % p);
  mod_trim(dm);
  if (dm.empty()) return false;
  return mod_gcd(m, dm, p).size() == 1;
}

bool has_integer_root(const std::vector<Integer>& f, const NumberField& F) {
  Integer c0 = abs(f[0]);
  if (c0 == 0) return true;
  // Integer roots of a monic polynomial divide c0 and are bounded by 1 + max |c_i|.
  Integer bound = 0;
  for (auto& c : f) bound = std::max(bound, Integer(abs(c)));
  bound += 1;
  Integer lim = std::min(bound, c0);
  if (lim > 2000000) {
    throw std::invalid_argument("min_poly constant term too large for the irreducibility check; set trust_irreducible");
  }
  for (Integer d = 1; d <= lim; ++d) {
    if (c0 % d != 0) continue;
    if (F.eval_min_poly(Rational(d)) == 0 || F.eval_min_poly(Rational(-d)) == 0) return true;
  }
  return false;
}

// Sturm sequence sign variations of polynomial p at x.
using QPoly = std::vector<Rational>;

void qtrim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly qrem(QPoly a, const QPoly& b) {
  qtrim(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational c = a.back() / b.back();
    size_t off = a.size() - b.size();
    for (size_t i = 0; i < b.size(); ++i) a[off + i] -= c * b[i];
    a.pop_back();
    qtrim(a);
  }
  return a;
}

Rational qeval(const QPoly& p, const Rational& x) {
  Rational r = 0;
  for (size_t i = p.size(); i-- > 0;) r = r * x + p[i];
  return r;
}

int sturm_variations(const std::vector<QPoly>& seq, const Rational& x) {
  int count = 0, last = 0;
  for (auto& p : seq) {
    Rational v = qeval(p, x);
    int s = sgn(v);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

IntElem operator+(const IntElem& a, const IntElem& b) {
  IntElem r;
  for (int i = 0; i < kMaxFieldDegree; ++i) r.c[i] = checked_add(a.c[i], b.c[i]);
  return r;
}

IntElem operator-(const IntElem& a, const IntElem& b) {
  IntElem r;
  for (int i = 0; i < kMaxFieldDegree; ++i) r.c[i] = checked_add(a.c[i], -b.c[i]);
  return r;
}

IntElem operator-(const IntElem& a) {
  IntElem r;
  for (int i = 0; i < kMaxFieldDegree; ++i) r.c[i] = -a.c[i];
  return r;
}

IntElem operator*(i128 s, const IntElem& a) {
  IntElem r;
  for (int i = 0; i < kMaxFieldDegree; ++i) r.c[i] = checked_mul(s, a.c[i]);
  return r;
}

IntElem& operator+=(IntElem& a, const IntElem& b) {
  for (int i = 0; i < kMaxFieldDegree; ++i) a.c[i] = checked_add(a.c[i], b.c[i]);
  return a;
}

IntElem& operator-=(IntElem& a, const IntElem& b) {
  for (int i = 0; i < kMaxFieldDegree; ++i) a.c[i] = checked_add(a.c[i], -b.c[i]);
  return a;
}

size_t IntElemHash::operator()(const IntElem& e) const {
  size_t h = 1469598103934665603ull;
  for (auto v : e.c) {
    h ^= (size_t)(uint64_t)v ^ (size_t)(uint64_t)(v >> 64) * 31;
    h *= 1099511628211ull;
  }
  return h;
}

NumberField::NumberField(std::vector<Integer> min_poly, Rational lo, Rational hi, bool trust_irreducible)
    : min_poly_(std::move(min_poly)), given_interval_{lo, hi}, trusted_(trust_irreducible) {
  if (min_poly_.size() < 2) throw std::invalid_argument("min_poly must have degree >= 1");
  if (min_poly_.back() != 1) throw std::invalid_argument("min_poly must be monic");
  degree_ = (int)min_poly_.size() - 1;
  if (degree_ > kMaxFieldDegree) throw std::invalid_argument("field degree exceeds 8");
  if (lo > hi) throw std::invalid_argument("root interval is empty");

  QPoly p(min_poly_.begin(), min_poly_.end());
  if (degree_ == 1) {
    Rational root = -p[0];
    if (!given_interval_.contains(root)) throw std::invalid_argument("root interval does not contain the root");
  } else {
    if (qeval(p, lo) == 0 || qeval(p, hi) == 0)
      throw std::invalid_argument("root interval endpoint is a rational root; min_poly is reducible");
    QPoly dp;
    for (int i = 1; i <= degree_; ++i) dp.push_back(p[i] * i);
    std::vector<QPoly> seq = {p, dp};
    while (true) {
      QPoly r = qrem(seq[seq.size() - 2], seq.back());
      if (r.empty()) break;
      for (auto& c : r) c = -c;
      seq.push_back(r);
    }
    if (seq.back().size() > 1) throw std::invalid_argument("min_poly is not square-free");
    int roots = sturm_variations(seq, lo) - sturm_variations(seq, hi);
    if (roots != 1) throw std::invalid_argument("root interval must isolate exactly one real root");
    if (!trusted_) {
      if (has_integer_root(min_poly_, *this)) throw std::invalid_argument("min_poly is reducible (rational root)");
      if (degree_ >= 4) {
        bool proven = false;
        for (long q = 3; q < 2000 && !proven; q += 2) {
          bool prime = true;
          for (long t = 3; t * t <= q; t += 2)
            if (q % t == 0) prime = false;
          if (prime && irreducible_mod_p(min_poly_, q)) proven = true;
        }
        if (!proven)
          throw std::invalid_argument("could not certify irreducibility of min_poly; set trust_irreducible");
      }
    }
  }

  sign_at_lo_positive_ = eval_min_poly(lo) > 0;
  fine_interval_ = given_interval_;
  if (degree_ == 1) {
    fine_interval_ = {-p[0], -p[0]};
  } else {
    Rational target = Rational(1, Integer(1) << 140);
    while (fine_interval_.width() > target || (fine_interval_.lo <= 0 && fine_interval_.hi >= 0))
      fine_interval_ = bisect(fine_interval_);
  }
  fine_powers_ = power_intervals(fine_interval_);

  Rational maxabs = 1;
  for (auto& iv : fine_powers_) maxabs = std::max({maxabs, Rational(abs(iv.lo)), Rational(abs(iv.hi))});
  Integer m = ceil_of(maxabs);
  int bits = (int)mpz_sizeinbase(m.get_mpz_t(), 2);
  shift_ = 58 - bits;
  if (shift_ < 8) throw std::invalid_argument("root magnitude too large");
  for (int i = 0; i < degree_; ++i) {
    Integer f = floor_of(fine_powers_[i].lo * Rational(Integer(1) << shift_));
    fixed_powers_[i] = to_i128(f);
    double_powers_[i] = fine_powers_[i].lo.get_d();
  }
}

bool NumberField::quick_double(std::span<const Rational> coeffs, double& out) const {
  double v = 0, mag = 0;
  for (size_t i = 0; i < coeffs.size(); ++i) {
    double t = coeffs[i].get_d() * double_powers_[i];
    v += t;
    mag += std::fabs(t);
  }
  out = v;
  // rounding error is a few ulps of mag
  return mag < 1e6 && std::isfinite(mag);
}

bool NumberField::same_as(const NumberField& o) const {
  if (this == &o) return true;
  if (min_poly_ != o.min_poly_) return false;
  return !(fine_interval_.hi < o.fine_interval_.lo || o.fine_interval_.hi < fine_interval_.lo);
}

Rational NumberField::eval_min_poly(const Rational& x) const {
  Rational r = 0;
  for (size_t i = min_poly_.size(); i-- > 0;) r = r * x + Rational(min_poly_[i]);
  return r;
}

RationalInterval NumberField::bisect(const RationalInterval& t) const {
  Rational mid = (t.lo + t.hi) / 2;
  Rational v = eval_min_poly(mid);
  if (v == 0) return {mid, mid};
  if ((v > 0) == sign_at_lo_positive_) return {mid, t.hi};
  return {t.lo, mid};
}

std::vector<RationalInterval> NumberField::power_intervals(const RationalInterval& t) const {
  std::vector<RationalInterval> pw;
  pw.push_back({Rational(1), Rational(1)});
  for (int i = 1; i < degree_; ++i) pw.push_back(mul_interval(pw.back(), t));
  return pw;
}

RationalInterval NumberField::eval_interval(std::span<const Rational> coeffs,
                                            const std::vector<RationalInterval>& powers) const {
  RationalInterval r{0, 0};
  for (size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] == 0) continue;
    if (coeffs[i] > 0) {
      r.lo += coeffs[i] * powers[i].lo;
      r.hi += coeffs[i] * powers[i].hi;
    } else {
      r.lo += coeffs[i] * powers[i].hi;
      r.hi += coeffs[i] * powers[i].lo;
    }
  }
  return r;
}

int NumberField::sign_exact(std::span<const Rational> coeffs) const {
  bool all_zero = true;
  for (auto& c : coeffs)
    if (c != 0) all_zero = false;
  if (all_zero) return 0;
  RationalInterval t = fine_interval_;
  auto powers = fine_powers_;
  while (true) {
    RationalInterval v = eval_interval(coeffs, powers);
    if (v.lo > 0) return 1;
    if (v.hi < 0) return -1;
    if (t.lo == t.hi) return 0;  // rational root: exact evaluation
    for (int i = 0; i < 16; ++i) t = bisect(t);
    powers = power_intervals(t);
  }
}

int NumberField::sign(std::span<const Rational> coeffs) const {
  if (coeffs.size() > (size_t)degree_) throw std::invalid_argument("coefficient vector longer than field degree");
  Integer l = 1;
  bool all_zero = true;
  for (auto& c : coeffs) {
    if (c != 0) all_zero = false;
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  }
  if (all_zero) return 0;
  if (coeffs.size() == 1) return sgn(coeffs[0]);
  if (mpz_sizeinbase(l.get_mpz_t(), 2) < 60) {
    IntElem e;
    bool ok = true;
    for (size_t i = 0; i < coeffs.size() && ok; ++i) {
      Integer v = coeffs[i].get_num() * (l / coeffs[i].get_den());
      if (!fits_int64(v)) ok = false;
      else e.c[i] = v.get_si();
    }
    if (ok) return sign(e);
  }
  return sign_exact(coeffs);
}

bool NumberField::fast_ok(const IntElem& e) const {
  const i128 lim = (i128)1 << 62;
  for (int i = 0; i < degree_; ++i)
    if (e.c[i] >= lim || e.c[i] <= -lim) return false;
  return true;
}

NumberField::Fixed NumberField::fixed(const IntElem& e) const {
  i128 s = 0, err = 0;
  for (int i = 0; i < degree_; ++i) {
    s += e.c[i] * fixed_powers_[i];
    err += 2 * abs128(e.c[i]);
  }
  return {s - err, s + err};
}

int NumberField::sign(const IntElem& e) const {
  if (fast_ok(e)) {
    Fixed f = fixed(e);
    if (f.lo > 0) return 1;
    if (f.hi < 0) return -1;
    if (e.is_zero()) return 0;
  }
  std::vector<Rational> q(degree_);
  for (int i = 0; i < degree_; ++i) q[i] = Rational(to_integer(e.c[i]));
  return sign_exact(q);
}

std::int64_t NumberField::floor_bound(const IntElem& e, i128 den) const {
  if (fast_ok(e) && den < ((i128)1 << 60)) {
    Fixed f = fixed(e);
    return (std::int64_t)floor_div(f.lo, den << shift_);
  }
  std::vector<Rational> q(degree_);
  for (int i = 0; i < degree_; ++i) q[i] = Rational(to_integer(e.c[i]), to_integer(den));
  RationalInterval iv = approx(q, 4);
  return floor_of(iv.lo).get_si();
}

std::int64_t NumberField::ceil_bound(const IntElem& e, i128 den) const {
  if (fast_ok(e) && den < ((i128)1 << 60)) {
    Fixed f = fixed(e);
    return (std::int64_t)ceil_div(f.hi, den << shift_);
  }
  std::vector<Rational> q(degree_);
  for (int i = 0; i < degree_; ++i) q[i] = Rational(to_integer(e.c[i]), to_integer(den));
  RationalInterval iv = approx(q, 4);
  return ceil_of(iv.hi).get_si();
}

RationalInterval NumberField::approx(std::span<const Rational> coeffs, int bits) const {
  if (bits < 1) throw std::invalid_argument("bits must be >= 1");
  Rational target(1, Integer(1) << bits);
  RationalInterval t = fine_interval_;
  auto powers = fine_powers_;
  while (true) {
    RationalInterval v = eval_interval(coeffs, powers);
    if (v.width() <= target) return v;
    if (t.lo == t.hi) return v;
    for (int i = 0; i < 16; ++i) t = bisect(t);
    powers = power_intervals(t);
  }
}

std::vector<Rational> NumberField::multiply(std::span<const Rational> a, std::span<const Rational> b) const {
  std::vector<Rational> prod(std::max<size_t>(a.size() + b.size(), 1), 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j) prod[i + j] += a[i] * b[j];
  }
  for (int i = (int)prod.size() - 1; i >= degree_; --i) {
    if (prod[i] == 0) continue;
    Rational c = prod[i];
    prod[i] = 0;
    for (int j = 0; j < degree_; ++j) prod[i - degree_ + j] -= c * Rational(min_poly_[j]);
  }
  prod.resize(degree_);
  return prod;
}

IntElem NumberField::multiply(const IntElem& a, const IntElem& b) const {
  std::array<i128, 2 * kMaxFieldDegree> prod{};
  for (int i = 0; i < degree_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < degree_; ++j) prod[i + j] = checked_add(prod[i + j], checked_mul(a.c[i], b.c[j]));
  }
  for (int i = 2 * degree_ - 2; i >= degree_; --i) {
    i128 c = prod[i];
    if (c == 0) continue;
    prod[i] = 0;
    for (int j = 0; j < degree_; ++j) {
      i128 m = (i128)mpz_get_si(min_poly_[j].get_mpz_t());
      prod[i - degree_ + j] = checked_add(prod[i - degree_ + j], -checked_mul(c, m));
    }
  }
  IntElem r;
  for (int i = 0; i < degree_; ++i) r.c[i] = prod[i];
  return r;
}

FieldPtr make_field(std::vector<Integer> min_poly, Rational lo, Rational hi, bool trust_irreducible) {
  return std::make_shared<const NumberField>(std::move(min_poly), lo, hi, trust_irreducible);
}

FieldPtr rational_field() {
  static FieldPtr q = make_field({Integer(0), Integer(1)}, Rational(-1), Rational(1));
  return q;
}

// ---------------------------------------------------------------- FieldReal

FieldReal::FieldReal(FieldPtr field, const Rational& q) : field_(std::move(field)), coeffs_{q} { canonicalize_coeffs(); }

FieldReal::FieldReal(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)), coeffs_(std::move(coeffs)) {
  if (field_ && (int)coeffs_.size() > field_->degree()) throw std::invalid_argument("too many coefficients for field");
  if (!field_ && coeffs_.size() > 1) throw std::invalid_argument("fieldless value must be rational");
  canonicalize_coeffs();
}

FieldReal FieldReal::generator(FieldPtr field) {
  if (field->degree() == 1) return FieldReal(field, -Rational(field->min_poly()[0]));
  return FieldReal(field, std::vector<Rational>{0, 1});
}

void FieldReal::canonicalize_coeffs() {
  for (auto& c : coeffs_) c.canonicalize();
  trim();
}

void FieldReal::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::vector<Rational> FieldReal::coeffs() const {
  std::vector<Rational> out = coeffs_;
  out.resize(field_ ? field_->degree() : 1, 0);
  return out;
}

const Rational& FieldReal::coeff(int i) const {
  static const Rational zero = 0;
  return (size_t)i < coeffs_.size() ? coeffs_[i] : zero;
}

bool FieldReal::is_rational() const { return coeffs_.size() <= 1; }

Rational FieldReal::rational_value() const {
  if (!is_rational()) throw std::domain_error("value is irrational");
  return coeff(0);
}

void FieldReal::adopt(const FieldReal& other) {
  if (!other.field_) return;
  if (!field_) {
    field_ = other.field_;
    return;
  }
  if (field_ != other.field_ && !field_->same_as(*other.field_)) throw std::invalid_argument("field mismatch");
}

FieldPtr common_field(const FieldReal& a, const FieldReal& b) {
  if (a.field() && b.field() && a.field() != b.field() && !a.field()->same_as(*b.field()))
    throw std::invalid_argument("field mismatch");
  return a.field() ? a.field() : b.field();
}

FieldReal& FieldReal::operator+=(const FieldReal& b) {
  adopt(b);
  if (coeffs_.size() < b.coeffs_.size()) coeffs_.resize(b.coeffs_.size(), 0);
  for (size_t i = 0; i < b.coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  trim();
  return *this;
}

FieldReal& FieldReal::operator-=(const FieldReal& b) {
  adopt(b);
  if (coeffs_.size() < b.coeffs_.size()) coeffs_.resize(b.coeffs_.size(), 0);
  for (size_t i = 0; i < b.coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  trim();
  return *this;
}

FieldReal& FieldReal::operator*=(const FieldReal& b) {
  adopt(b);
  if (coeffs_.empty()) return *this;
  if (b.coeffs_.empty()) {
    coeffs_.clear();
    return *this;
  }
  if (b.coeffs_.size() == 1) {
    for (auto& c : coeffs_) c *= b.coeffs_[0];
  } else if (coeffs_.size() == 1) {
    Rational s = coeffs_[0];
    coeffs_ = b.coeffs_;
    for (auto& c : coeffs_) c *= s;
  } else {
    coeffs_ = field_->multiply(coeffs_, b.coeffs_);
  }
  trim();
  return *this;
}

FieldReal FieldReal::inverse() const {
  if (coeffs_.empty()) throw std::domain_error("division by zero");
  if (coeffs_.size() == 1) return FieldReal(field_, Rational(1) / coeffs_[0]);
  int g = field_->degree();
  // Solve (a * s) = 1 using the multiplication matrix of a.
  std::vector<std::vector<Rational>> m(g, std::vector<Rational>(g + 1, 0));
  std::vector<Rational> basis(g, 0);
  for (int j = 0; j < g; ++j) {
    std::fill(basis.begin(), basis.end(), 0);
    basis[j] = 1;
    auto col = field_->multiply(coeffs_, basis);
    for (int i = 0; i < g; ++i) m[i][j] = col[i];
  }
  m[0][g] = 1;
  for (int c = 0; c < g; ++c) {
    int piv = -1;
    for (int r = c; r < g; ++r)
      if (m[r][c] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::domain_error("element is a zero divisor; min_poly reducible");
    std::swap(m[c], m[piv]);
    Rational inv = 1 / m[c][c];
    for (int j = c; j <= g; ++j) m[c][j] *= inv;
    for (int r = 0; r < g; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rational f = m[r][c];
      for (int j = c; j <= g; ++j) m[r][j] -= f * m[c][j];
    }
  }
  std::vector<Rational> s(g);
  for (int i = 0; i < g; ++i) s[i] = m[i][g];
  return FieldReal(field_, s);
}

FieldReal& FieldReal::operator/=(const FieldReal& b) {
  adopt(b);
  if (b.coeffs_.empty()) throw std::domain_error("division by zero");
  if (b.coeffs_.size() == 1) {
    for (auto& c : coeffs_) c /= b.coeffs_[0];
    return *this;
  }
  return *this *= b.inverse();
}

FieldReal FieldReal::operator-() const {
  FieldReal r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

int FieldReal::sign() const {
  if (coeffs_.empty()) return 0;
  if (coeffs_.size() == 1) return sgn(coeffs_[0]);
  return field_->sign(coeffs_);
}

bool FieldReal::is_zero() const { return coeffs_.empty(); }

RationalInterval FieldReal::approx(int bits) const {
  if (bits < 1) throw std::invalid_argument("bits must be >= 1");
  if (coeffs_.size() <= 1) return {coeff(0), coeff(0)};
  return field_->approx(coeffs_, bits);
}

double FieldReal::to_double() const {
  if (coeffs_.empty()) return 0;
  if (coeffs_.size() == 1) return coeffs_[0].get_d();
  double v;
  if (field_->quick_double(coeffs_, v)) return v;
  auto iv = approx(60);
  return Rational((iv.lo + iv.hi) / 2).get_d();
}

bool operator==(const FieldReal& a, const FieldReal& b) {
  common_field(a, b);
  return a.coeffs_ == b.coeffs_;
}

std::strong_ordering operator<=>(const FieldReal& a, const FieldReal& b) {
  int s = (a - b).sign();
  return s < 0 ? std::strong_ordering::less : s > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
}

Integer FieldReal::denominator() const {
  Integer l = 1;
  for (auto& c : coeffs_) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
  return l;
}

IntElem FieldReal::scaled(const Integer& scale) const {
  IntElem e;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    Rational v = coeffs_[i] * Rational(scale);
    if (v.get_den() != 1) throw std::invalid_argument("scale does not clear denominators");
    e.c[i] = to_i128(v.get_num());
  }
  return e;
}

std::string FieldReal::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += (coeffs_[i] > 0) ? " + " : " - ";
    else if (coeffs_[i] < 0) out += "-";
    std::string mag = Rational(::abs(coeffs_[i])).get_str();
    if (i == 0) out += mag;
    else {
      if (mag != "1") out += mag + "*";
      out += (i == 1) ? "t" : "t^" + std::to_string(i);
    }
  }
  return out;
}

FieldReal field_arith(const FieldReal& a, const FieldReal& b, char op) {
  switch (op) {
    case '+': return a + b;
    case '-': return a - b;
    case '*': return a * b;
    case '/': return a / b;
  }
  throw std::invalid_argument("unknown operator");
}

}  // namespace cps
