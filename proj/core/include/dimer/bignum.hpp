#ifndef DIMER_BIGNUM_HPP
#define DIMER_BIGNUM_HPP

#include <gmpxx.h>

#include <cstdint>
#include <string>

namespace dimer {

using BigInt = mpz_class;
using BigRat = mpq_class;

// Natural log of a positive big integer. The argument is split into
// mantissa and exponent and the log evaluated with 192-bit intermediates,
// so the only loss is the final rounding to double.
double log_bigint(const BigInt& value);

// Natural log of a positive exact rational, same precision contract.
double log_bigrat(const BigRat& value);

// Exact binomial coefficient C(n, k).
BigInt binomial(unsigned long n, unsigned long k);

// Exact factorial.
BigInt factorial(unsigned long n);

// Canonical decimal string (used by the JSON serializers, which store
// counts as decimal strings to preserve exactness).
std::string to_decimal(const BigInt& value);
BigInt bigint_from_decimal(const std::string& text);

// Rational p = num/den kept exact end to end. GMP canonicalizes on
// construction, so equal densities compare equal.
BigRat make_rational(long num, long den);

}  // namespace dimer

#endif
