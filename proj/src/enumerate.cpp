#include "cps/enumerate.hpp"

#include <cmath>
#include <stdexcept>

namespace cps {

std::pair<Rational, Rational> rational_bounds(const FieldReal& x) {
  auto iv = x.approx(40);
  return {iv.lo, iv.hi};
}

namespace {

Rational upper(const FieldReal& x) { return rational_bounds(x).second; }

Rational row_norm_upper(const FieldMatrix& m, size_t r) {
  FieldReal s;
  for (size_t j = 0; j < m.cols(); ++j) s += m(r, j) * m(r, j);
  return sqrt_upper(upper(s));
}

std::int64_t ceil64(const Rational& q) {
  Integer c = ceil_of(q);
  if (!fits_int64(c)) throw std::overflow_error("enumeration bound too large");
  return c.get_si();
}

std::int64_t floor64(const Rational& q) {
  Integer c = floor_of(q);
  if (!fits_int64(c)) throw std::overflow_error("enumeration bound too large");
  return c.get_si();
}

double magnitude(const FieldReal& x) { return std::fabs(x.to_double()); }

// Squared-norm test sum (forms)^2 <= radius^2 for forms sharing one denominator.
struct NormBound {
  std::vector<IntegralForm> forms;
  IntElem limit;  // p^2 * den^2
  i128 q2 = 1;
  FieldPtr field;

  void init(const FieldMatrix& rows, const Rational& radius, const FieldPtr& f) {
    field = f;
    Integer l = 1;
    for (size_t r = 0; r < rows.rows(); ++r)
      for (size_t j = 0; j < rows.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), rows(r, j).denominator().get_mpz_t());
    forms.clear();
    for (size_t r = 0; r < rows.rows(); ++r) {
      IntegralForm fm;
      fm.den = l;
      for (size_t j = 0; j < rows.cols(); ++j) fm.coef.push_back(rows(r, j).scaled(l));
      forms.push_back(fm);
    }
    Integer p = radius.get_num(), q = radius.get_den();
    limit = IntElem{};
    limit.c[0] = to_i128(p * p * l * l);
    q2 = to_i128(q * q);
  }

  bool ok(const std::int64_t* c) const {
    IntElem s{};
    for (auto& fm : forms) {
      IntElem v = fm.eval(c);
      s += field->multiply(v, v);
    }
    return field->sign(limit - q2 * s) >= 0;
  }
};

}  // namespace

void enumerate_lattice(const Scheme& s, const Rational& phys_radius, const InternalRegion& region,
                       const std::function<void(const std::int64_t*)>& f) {
  if (phys_radius < 0) return;
  const int k = s.k(), d = s.d(), n = s.n();
  const FieldPtr& field = s.field();
  FieldMatrix Tp = s.phys_map(), Ti = s.int_map();

  // Choose n columns J with the best conditioned internal block.
  std::vector<size_t> best_J;
  double best = -1;
  {
    std::vector<size_t> idx(n);
    for (int i = 0; i < n; ++i) idx[i] = i;
    while (true) {
      FieldReal det = determinant(Ti.select_columns(idx));
      if (!det.is_zero() && magnitude(det) > best) {
        best = magnitude(det);
        best_J = idx;
      }
      int i = n - 1;
      while (i >= 0 && idx[i] == (size_t)(k - n + i)) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  if (best_J.empty()) throw std::domain_error("internal projection has deficient rank");
  std::vector<size_t> J = best_J, K;
  for (int j = 0; j < k; ++j)
    if (std::find(J.begin(), J.end(), (size_t)j) == J.end()) K.push_back(j);

  FieldMatrix BJinv = inverse(Ti.select_columns(J));
  FieldMatrix Cmat = BJinv * Ti.select_columns(K);       // n x d
  FieldMatrix AJ = Tp.select_columns(J);
  FieldMatrix M = Tp.select_columns(K);
  FieldMatrix AJC = AJ * Cmat;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) M(i, j) -= AJC(i, j);
  FieldMatrix Minv = inverse(M);
  FieldMatrix MN = Minv * (AJ * BJinv);  // d x n

  // outer bounds on c_K
  std::vector<std::int64_t> outer_lo(d), outer_hi(d);
  for (int i = 0; i < d; ++i) {
    Rational b = phys_radius * row_norm_upper(Minv, i);
    if (region.polytope) {
      Rational m = 0;
      for (auto& v : region.polytope->vertices()) {
        FieldReal x;
        for (int j = 0; j < n; ++j) x += MN(i, j) * v[j];
        m = std::max(m, upper(x.abs()));
      }
      b += m;
    } else {
      b += *region.radius * row_norm_upper(MN, i);
    }
    outer_hi[i] = ceil64(b);
    outer_lo[i] = -outer_hi[i];
  }

  // inner bounds: c_J in [lo_j, hi_j] - Cmat c_K
  std::vector<IntegralForm> lo_form(n), hi_form(n);
  for (int j = 0; j < n; ++j) {
    FieldReal lo, hi;
    if (region.polytope) {
      bool first = true;
      for (auto& v : region.polytope->vertices()) {
        FieldReal x;
        for (int l = 0; l < n; ++l) x += BJinv(j, l) * v[l];
        if (first || x < lo) lo = x;
        if (first || x > hi) hi = x;
        first = false;
      }
    } else {
      Rational b = *region.radius * row_norm_upper(BJinv, j);
      lo = FieldReal(-b);
      hi = FieldReal(b);
    }
    Vec neg_c(d);
    for (int i = 0; i < d; ++i) neg_c[i] = -Cmat(j, i);
    lo_form[j] = IntegralForm::make(neg_c, lo);
    hi_form[j] = IntegralForm::make(neg_c, hi);
  }

  // exact filters
  NormBound phys_norm;
  phys_norm.init(Tp, phys_radius, field);
  NormBound int_norm;
  std::vector<IntegralForm> facet_forms;
  std::vector<std::vector<double>> facet_coef;  // double images, used to narrow the innermost coordinate
  std::vector<double> facet_const;
  if (region.polytope) {
    for (auto& h : region.polytope->halfspaces()) {
      Vec coef(k);
      for (int j = 0; j < k; ++j) {
        FieldReal x;
        for (int l = 0; l < n; ++l) x += h.normal[l] * Ti(l, j);
        coef[j] = -x;
      }
      facet_forms.push_back(IntegralForm::make(coef, h.offset));
      std::vector<double> a;
      for (auto& x : coef) a.push_back(x.to_double());
      facet_coef.push_back(std::move(a));
      facet_const.push_back(h.offset.to_double());
    }
  } else {
    int_norm.init(Ti, *region.radius, field);
  }

  std::vector<std::int64_t> cK(d), cJ(n), c(k), jlo(n), jhi(n);
  const size_t last = J[n - 1];
  auto narrow_last = [&](std::int64_t& lo, std::int64_t& hi) {
    for (size_t f = 0; f < facet_coef.size(); ++f) {
      double rest = facet_const[f], scale = std::fabs(facet_const[f]);
      for (int j = 0; j < k; ++j) {
        if ((size_t)j == last) continue;
        double t = facet_coef[f][j] * (double)c[j];
        rest += t;
        scale += std::fabs(t);
      }
      double a = facet_coef[f][last];
      if (std::fabs(a) < 1e-12) continue;
      double bound = -rest / a, slop = 1 + 1e-9 * (scale / std::fabs(a) + std::fabs(bound));
      if (a > 0) {
        double b = std::floor(bound - slop);
        if (b > (double)lo) lo = b > 9e18 ? hi + 1 : (std::int64_t)b;
      } else {
        double b = std::ceil(bound + slop);
        if (b < (double)hi) hi = b < -9e18 ? lo - 1 : (std::int64_t)b;
      }
    }
  };

  for (int i = 0; i < d; ++i) cK[i] = outer_lo[i];
  while (true) {
    bool empty = false;
    for (int j = 0; j < n; ++j) {
      jlo[j] = field->floor_bound(lo_form[j].eval(cK.data()), to_i128(lo_form[j].den));
      jhi[j] = field->ceil_bound(hi_form[j].eval(cK.data()), to_i128(hi_form[j].den));
      if (jlo[j] > jhi[j]) empty = true;
    }
    if (!empty) {
      for (int i = 0; i < d; ++i) c[K[i]] = cK[i];
      for (int j = 0; j < n; ++j) cJ[j] = jlo[j];
      std::int64_t last_hi = jhi[n - 1];
      auto start_row = [&]() {
        for (int j = 0; j + 1 < n; ++j) c[J[j]] = cJ[j];
        std::int64_t lo = jlo[n - 1], hi = jhi[n - 1];
        if (region.polytope) narrow_last(lo, hi);
        cJ[n - 1] = lo;
        last_hi = hi;
      };
      start_row();
      while (true) {
        if (cJ[n - 1] > last_hi) {
          int j = n - 2;
          while (j >= 0 && cJ[j] == jhi[j]) --j;
          if (j < 0) break;
          ++cJ[j];
          for (int t = j + 1; t < n - 1; ++t) cJ[t] = jlo[t];
          start_row();
          continue;
        }
        for (int j = 0; j < n; ++j) c[J[j]] = cJ[j];
        bool ok = true;
        if (region.polytope) {
          for (auto& fm : facet_forms)
            if (field->sign(fm.eval(c.data())) < 0) {
              ok = false;
              break;
            }
        } else {
          ok = int_norm.ok(c.data());
        }
        if (ok && phys_norm.ok(c.data())) f(c.data());
        ++cJ[n - 1];
      }
    }
    int i = d - 1;
    while (i >= 0 && cK[i] == outer_hi[i]) --i;
    if (i < 0) break;
    ++cK[i];
    for (int t = i + 1; t < d; ++t) cK[t] = outer_lo[t];
  }
}

void enumerate_coset(const Scheme& s, const IntVec& x0, const IntMatrix& basis,
                     const std::vector<std::pair<Rational, Rational>>& box,
                     const std::function<void(const LatticePoint&)>& f) {
  const int k = s.k();
  const FieldMatrix& T = s.coord_map();
  auto in_box = [&](const LatticePoint& g) {
    Vec z = s.coord_map() * Vec(g.c.begin(), g.c.end());
    for (int j = 0; j < k; ++j) {
      if (z[j] < FieldReal(box[j].first) || z[j] > FieldReal(box[j].second)) return false;
    }
    return true;
  };
  size_t rk = basis.size();
  LatticePoint base = LatticePoint::from_intvec(x0);
  if (rk == 0) {
    if (in_box(base)) f(base);
    return;
  }
  FieldMatrix B(k, rk);
  for (size_t i = 0; i < rk; ++i)
    for (int j = 0; j < k; ++j) B(j, i) = FieldReal(Rational(basis[i][j]));
  FieldMatrix Phi = T * B;
  Vec z0 = T * Vec(base.c.begin(), base.c.end());
  std::vector<size_t> S;
  for (int j = k - 1; j >= 0 && S.size() < rk; --j) {
    auto trial = S;
    trial.push_back(j);
    if (rank_over_field(Phi.select_rows(trial)) == trial.size()) S = trial;
  }
  FieldMatrix Sinv = inverse(Phi.select_rows(S));
  std::vector<std::int64_t> lo(rk), hi(rk);
  for (size_t i = 0; i < rk; ++i) {
    Rational a = 0, b = 0;
    for (size_t t = 0; t < rk; ++t) {
      auto [zlo, zhi] = rational_bounds(z0[S[t]]);
      Rational l = box[S[t]].first - zhi, h = box[S[t]].second - zlo;
      auto [clo, chi] = rational_bounds(Sinv(i, t));
      Rational p[4] = {clo * l, clo * h, chi * l, chi * h};
      a += *std::min_element(p, p + 4);
      b += *std::max_element(p, p + 4);
    }
    lo[i] = floor64(a);
    hi[i] = ceil64(b);
  }
  std::vector<std::int64_t> t = lo;
  while (true) {
    LatticePoint g = base;
    for (size_t i = 0; i < rk; ++i)
      for (int j = 0; j < k; ++j) g.c[j] += t[i] * basis[i][j].get_si();
    if (in_box(g)) f(g);
    int i = (int)rk - 1;
    while (i >= 0 && t[i] == hi[i]) --i;
    if (i < 0) break;
    ++t[i];
    for (size_t u = i + 1; u < rk; ++u) t[u] = lo[u];
  }
}

}  // namespace cps
