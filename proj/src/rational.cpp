#include "cps/rational.hpp"

#include <stdexcept>

namespace cps {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.pop_back();
  size_t start = s.find_first_not_of(" \t");
  if (start == std::string::npos) throw std::invalid_argument("empty rational");
  s = s.substr(start);
  auto dot = s.find('.');
  if (dot != std::string::npos) {
    if (s.find('/') != std::string::npos) throw std::invalid_argument("bad rational: " + s);
    std::string digits = s.substr(0, dot) + s.substr(dot + 1);
    size_t frac = s.size() - dot - 1;
    Integer num;
    if (num.set_str(digits, 10) != 0) throw std::invalid_argument("bad rational: " + s);
    Integer den = 1;
    for (size_t i = 0; i < frac; ++i) den *= 10;
    Rational q(num, den);
    q.canonicalize();
    return q;
  }
  Rational q;
  if (s[0] == '+') s = s.substr(1);
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational: " + s);
  if (q.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Integer floor_of(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_of(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational sqrt_upper(const Rational& q) {
  if (q < 0) throw std::invalid_argument("sqrt of negative");
  if (q == 0) return 0;
  // sqrt(q) <= ceil(sqrt(ceil(q * 4^s))) / 2^s
  const unsigned s = 32;
  Integer scale = Integer(1) << (2 * s);
  Integer t = ceil_of(q * scale);
  Integer root;
  mpz_sqrt(root.get_mpz_t(), t.get_mpz_t());
  if (root * root < t) root += 1;
  return Rational(root, Integer(1) << s);
}

bool fits_int64(const Integer& z) { return mpz_fits_slong_p(z.get_mpz_t()) != 0; }

bool fits_i128(const Integer& z) { return mpz_sizeinbase(z.get_mpz_t(), 2) <= 125; }

Integer to_integer(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? (unsigned __int128)(-(v + 1)) + 1 : (unsigned __int128)v;
  uint64_t hi = (uint64_t)(u >> 64), lo = (uint64_t)u;
  Integer r = hi;
  r <<= 64;
  r += Integer(std::to_string(lo));
  return neg ? Integer(-r) : r;
}

i128 to_i128(const Integer& z) {
  if (!fits_i128(z)) throw std::overflow_error("integer exceeds 125 bits");
  Integer a = abs(z);
  Integer hi = a >> 64;
  Integer lo = a - (hi << 64);
  unsigned __int128 u = ((unsigned __int128)mpz_get_ui(hi.get_mpz_t()) << 64) |
                        (unsigned __int128)std::stoull(lo.get_str());
  i128 v = (i128)u;
  return z < 0 ? -v : v;
}

}  // namespace cps
