#include "dimer/bignum.hpp"

#include <mpfr.h>

#include <stdexcept>

namespace dimer {

namespace {
constexpr mpfr_prec_t kLogPrecision = 192;
}

double log_bigint(const BigInt& value) {
    if (value <= 0) throw std::domain_error("log_bigint: argument must be positive");
    mpfr_t x;
    mpfr_init2(x, kLogPrecision);
    mpfr_set_z(x, value.get_mpz_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return out;
}

double log_bigrat(const BigRat& value) {
    if (value <= 0) throw std::domain_error("log_bigrat: argument must be positive");
    mpfr_t x;
    mpfr_init2(x, kLogPrecision);
    mpfr_set_q(x, value.get_mpq_t(), MPFR_RNDN);
    mpfr_log(x, x, MPFR_RNDN);
    double out = mpfr_get_d(x, MPFR_RNDN);
    mpfr_clear(x);
    return out;
}

BigInt binomial(unsigned long n, unsigned long k) {
    BigInt out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

BigInt factorial(unsigned long n) {
    BigInt out;
    mpz_fac_ui(out.get_mpz_t(), n);
    return out;
}

std::string to_decimal(const BigInt& value) { return value.get_str(10); }

BigInt bigint_from_decimal(const std::string& text) {
    if (text.empty()) throw std::invalid_argument("bigint_from_decimal: empty string");
    return BigInt(text, 10);
}

BigRat make_rational(long num, long den) {
    if (den == 0) throw std::domain_error("make_rational: zero denominator");
    BigRat q(num, den);
    q.canonicalize();
    return q;
}

}  // namespace dimer
