#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cps {

using Integer = mpz_class;
using Rational = mpq_class;
using i128 = __int128;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

Integer floor_of(const Rational& q);
Integer ceil_of(const Rational& q);

// Smallest dyadic-free rational bound u with u >= sqrt(q), for q >= 0.
Rational sqrt_upper(const Rational& q);

bool fits_int64(const Integer& z);
Integer to_integer(i128 v);
i128 to_i128(const Integer& z);
bool fits_i128(const Integer& z);

}  // namespace cps
