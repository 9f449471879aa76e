#include "combicodec/rational.hpp"

#include <cmath>
#include <limits>

namespace combicodec {

std::uint64_t to_u64(const Integer& z) {
    if (sgn(z) < 0 || mpz_sizeinbase(z.get_mpz_t(), 2) > 64)
        throw Error("integer out of 64-bit range: " + z.get_str());
    std::uint64_t v = 0;
    mpz_export(&v, nullptr, 1, sizeof(v), 0, 0, z.get_mpz_t());
    return v;
}

Rational parse_rational(std::string_view text) {
    auto is_digits = [](std::string_view s) {
        if (s.empty()) return false;
        for (char c : s)
            if (c < '0' || c > '9') return false;
        return true;
    };
    const auto slash = text.find('/');
    const auto num = text.substr(0, slash);
    const auto den = slash == std::string_view::npos ? std::string_view("1")
                                                     : text.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den))
        throw DataError("malformed rational '" + std::string(text) + "'");
    Rational r{Integer(std::string(num)), Integer(std::string(den))};
    if (sgn(r.get_den()) == 0)
        throw DataError("zero denominator in '" + std::string(text) + "'");
    r.canonicalize();
    return r;
}

std::string to_string(const Rational& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

double log2_integer(const Integer& z) {
    if (sgn(z) <= 0) throw Error("log2 of a non-positive integer");
    long exponent = 0;
    const double mantissa = mpz_get_d_2exp(&exponent, z.get_mpz_t());
    return static_cast<double>(exponent) + std::log2(mantissa);
}

double information_bits(const Rational& p) {
    if (sgn(p) <= 0)
        throw DataError("object has zero probability (infinite information content)");
    if (p > 1) throw Error("probability exceeds one: " + to_string(p));
    return log2_integer(p.get_den()) - log2_integer(p.get_num());
}

Integer binomial(std::uint64_t n, std::uint64_t k) {
    Integer r;
    if (k > n) return r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Integer factorial(std::uint64_t n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

Rational rising_factorial(const Rational& a, std::uint64_t n) {
    // Accumulate numerator and denominator separately and reduce once.
    const Integer& p = a.get_num();
    const Integer& q = a.get_den();
    Integer num = 1;
    Integer term = p;
    for (std::uint64_t i = 0; i < n; ++i) {
        num *= term;
        term += q;
    }
    Integer den;
    mpz_pow_ui(den.get_mpz_t(), q.get_mpz_t(), n);
    Rational r{num, den};
    r.canonicalize();
    return r;
}

}  // namespace combicodec
