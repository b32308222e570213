#pragma once

#include <gmpxx.h>

#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace pfopt {

using Integer = mpz_class;
using Rational = mpq_class;

/// IEEE binary128. Used for the dense pencil path where Hankel conditioning
/// eats most of a double's mantissa by r = 8.
using Extended = boost::multiprecision::float128;

namespace detail {

// Exact integer (at most digits+1 significant bits after the caller's
// shift) to a binary float, rounded once.
template <class Real>
Real integer_to_real(const Integer& z) {
  std::size_t count = 0;
  std::vector<std::uint32_t> words((mpz_sizeinbase(z.get_mpz_t(), 2) + 31) / 32 + 1);
  mpz_export(words.data(), &count, 1, sizeof(std::uint32_t), 0, 0, z.get_mpz_t());
  Real acc = 0;
  for (std::size_t i = 0; i < count; ++i) {
    acc = acc * Real(4294967296.0) + Real(words[i]);
  }
  return acc;
}

}  // namespace detail

/// Correctly rounded (round-to-nearest) conversion of an exact rational.
template <class Real>
Real to_real(const Rational& q) {
  using std::ldexp;
  if (sgn(q) == 0) return Real(0);
  Integer num = abs(q.get_num());
  const Integer& den = q.get_den();
  constexpr long kBits = std::numeric_limits<Real>::digits + 8;
  const long e = static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                 static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2));
  const long shift = kBits - e;
  Integer quot, rem;
  if (shift >= 0) {
    Integer scaled = num << static_cast<mp_bitcnt_t>(shift);
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), scaled.get_mpz_t(), den.get_mpz_t());
  } else {
    Integer scaled = den << static_cast<mp_bitcnt_t>(-shift);
    mpz_tdiv_qr(quot.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), scaled.get_mpz_t());
  }
  // Sticky bit so the single rounding below sees inexact tails.
  if (sgn(rem) != 0) mpz_setbit(quot.get_mpz_t(), 0);
  Real value = ldexp(detail::integer_to_real<Real>(quot), static_cast<int>(-shift));
  return sgn(q) < 0 ? -value : value;
}

inline double to_double(const Rational& q) { return to_real<double>(q); }

/// Exact rational value of a finite double.
inline Rational from_double(double x) {
  Rational q(x);
  q.canonicalize();
  return q;
}

/// Parses "p", "-p", "p/q" with arbitrary-size integers. Throws ValidationError.
Rational parse_rational(const std::string& text);
Integer parse_integer(const std::string& text);

std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace pfopt
