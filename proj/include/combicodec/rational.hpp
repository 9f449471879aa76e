#pragma once

// Exact arithmetic carriers. All model probabilities are GMP rationals kept
// in lowest terms; floating point only appears when reporting information
// content.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace combicodec {

using Integer = mpz_class;
using Rational = mpq_class;

/// Base class for every error the library raises.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Object or file content that is invalid under the model or format.
class DataError : public Error {
public:
    using Error::Error;
};

/// A coding context that is missing fields or carries inconsistent ones.
class ContextError : public Error {
public:
    using Error::Error;
};

inline Integer to_integer(std::uint64_t v) {
    Integer z;
    mpz_import(z.get_mpz_t(), 1, 1, sizeof(v), 0, 0, &v);
    return z;
}

/// Converts a non-negative Integer known to fit into 64 bits.
std::uint64_t to_u64(const Integer& z);

/// Parses "p/q" or "p" (decimal integers) into a canonical rational.
Rational parse_rational(std::string_view text);

/// Canonical "p/q" form, or "p" when the denominator is 1.
std::string to_string(const Rational& r);

/// log2 of a positive integer, accurate to about 1e-15 in absolute terms
/// regardless of magnitude.
double log2_integer(const Integer& z);

/// -log2(p) for a rational 0 < p <= 1.
double information_bits(const Rational& p);

/// C(n, k) as a big integer; zero when k > n.
Integer binomial(std::uint64_t n, std::uint64_t k);

Integer factorial(std::uint64_t n);

/// a (a+1) ... (a+n-1); equals Gamma(a+n)/Gamma(a).
Rational rising_factorial(const Rational& a, std::uint64_t n);

}  // namespace combicodec
