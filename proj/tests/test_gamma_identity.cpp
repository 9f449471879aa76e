// Beta-binomial via rising factorials against a direct Gamma-ratio evaluation
// in 256-bit floating point.

#include "combicodec/discrete_models.hpp"

#include <doctest.h>
#include <mpfr.h>

#include <cmath>
#include <random>

using namespace combicodec;

namespace {

class Real {
public:
    Real() { mpfr_init2(v_, 256); }
    ~Real() { mpfr_clear(v_); }
    Real(const Real&) = delete;
    Real& operator=(const Real&) = delete;
    mpfr_ptr get() { return v_; }

private:
    mpfr_t v_;
};

void set(Real& out, const Rational& q) { mpfr_set_q(out.get(), q.get_mpq_t(), MPFR_RNDN); }

// log Gamma(x) for x > 0
void lgamma_of(Real& out, const Rational& x) {
    Real t;
    set(t, x);
    int sign = 0;
    mpfr_lgamma(out.get(), &sign, t.get(), MPFR_RNDN);
}

double gamma_ratio_pmf(std::uint64_t k, std::uint64_t K, const Rational& a, const Rational& b) {
    Real acc, term;
    mpfr_set_z(acc.get(), binomial(K, k).get_mpz_t(), MPFR_RNDN);
    mpfr_log(acc.get(), acc.get(), MPFR_RNDN);
    auto add = [&](const Rational& x, int sign) {
        lgamma_of(term, x);
        if (sign > 0)
            mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
        else
            mpfr_sub(acc.get(), acc.get(), term.get(), MPFR_RNDN);
    };
    add(a + Rational(static_cast<unsigned long>(k)), +1);
    add(b + Rational(static_cast<unsigned long>(K - k)), +1);
    add(a + b, +1);
    add(a + b + Rational(static_cast<unsigned long>(K)), -1);
    add(a, -1);
    add(b, -1);
    mpfr_exp(acc.get(), acc.get(), MPFR_RNDN);
    return mpfr_get_d(acc.get(), MPFR_RNDN);
}

}  // namespace

TEST_CASE("rising-factorial Beta-binomial equals the Gamma-ratio form") {
    std::mt19937_64 rng(17);
    int compared = 0;
    for (int trial = 0; trial < 300; ++trial) {
        const Rational a(static_cast<long>(1 + rng() % 40), static_cast<long>(1 + rng() % 9));
        const Rational b(static_cast<long>(1 + rng() % 40), static_cast<long>(1 + rng() % 9));
        const std::uint64_t K = rng() % 60;
        for (std::uint64_t k = 0; k <= K; ++k) {
            const double exact = beta_binomial_pmf(k, K, a, b).get_d();
            const double reference = gamma_ratio_pmf(k, K, a, b);
            CHECK(std::abs(exact - reference) <= 1e-12);
            ++compared;
        }
    }
    CHECK(compared > 1000);
}
