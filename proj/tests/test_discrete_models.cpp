#include "combicodec/discrete_models.hpp"

#include <doctest.h>

using namespace combicodec;

namespace {

Rational r(const char* s) { return parse_rational(s); }

std::vector<Rational> row(const ExactPmf& pmf) { return pmf.probabilities(); }

std::vector<Rational> rs(std::initializer_list<const char*> items) {
    std::vector<Rational> out;
    for (auto s : items) out.push_back(r(s));
    return out;
}

}  // namespace

TEST_CASE("rational helpers") {
    CHECK(parse_rational("6/4") == Rational(3, 2));
    CHECK(parse_rational("7") == Rational(7));
    CHECK_THROWS_AS(parse_rational("1/0"), DataError);
    CHECK_THROWS_AS(parse_rational("x"), DataError);
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK_THROWS_AS(parse_rational("-1"), DataError);
    CHECK(binomial(40, 20) == Integer("137846528820"));
    CHECK(factorial(20) == Integer("2432902008176640000"));
    CHECK(rising_factorial(r("1/2"), 3) == r("15/8"));
    CHECK(information_bits(r("1/8")) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(information_bits(Rational(0)), DataError);
    CHECK(to_u64(to_integer(~std::uint64_t{0})) == ~std::uint64_t{0});
}

TEST_CASE("alphabet and multiset basics") {
    const Alphabet a({"A", "B", "C"});
    CHECK(a.symbol("B") == 1);
    CHECK_FALSE(a.find("D").has_value());
    CHECK_THROWS_WITH_AS(a.symbol("D"), doctest::Contains("'D'"), DataError);
    CHECK_THROWS_AS(Alphabet({"A", "A"}), Error);
    CHECK_THROWS_AS(Alphabet(std::vector<std::string>{}), Error);

    // m = {A,B,B}: K=3, k_A=1, k_B=2
    const std::vector<Symbol> x{0, 1, 1};
    const Multiset m = Multiset::histogram(x, 3);
    CHECK(m.size() == 3);
    CHECK(m.count(0) == 1);
    CHECK(m.count(1) == 2);
    CHECK(m.count(2) == 0);
    CHECK(m.sorted_elements() == std::vector<Symbol>{0, 1, 1});
    CHECK(Multiset({1, 1, 0}).is_submultiset_of(m));
    CHECK_FALSE(Multiset({2, 0, 0}).is_submultiset_of(m));
}

TEST_CASE("source distribution and Dirichlet parameters") {
    const std::vector<std::uint64_t> w{1, 2, 0, 1};
    const auto d = SourceDistribution::from_weights(w);
    CHECK(d.mass(1) == r("1/2"));
    CHECK(d.mass(2) == 0);
    CHECK_THROWS_AS(SourceDistribution(rs({"1/2", "1/3"})), Error);

    const DirichletParams p(rs({"1/2", "1/3", "2"}));
    CHECK(p.total() == r("17/6"));
    CHECK_THROWS_AS(DirichletParams(rs({"1", "0"})), Error);
}

// Frozen values below were produced by tests/oracle/derive_values.py.
TEST_CASE("binomial pmf") {
    CHECK(binomial_pmf(1, 2, r("1/2")) == r("1/2"));
    CHECK(binomial_pmf(2, 3, r("1/3")) == r("2/9"));
    CHECK(binomial_pmf(0, 0, r("1/3")) == 1);
    CHECK(row(binomial_distribution(2, r("1/2"))) == rs({"1/4", "1/2", "1/4"}));
    CHECK(row(binomial_distribution(3, Rational(1))) == rs({"0", "0", "0", "1"}));
}

TEST_CASE("Beta-binomial pmf") {
    for (std::uint64_t K = 0; K <= 6; ++K)
        for (std::uint64_t k = 0; k <= K; ++k) CHECK(beta_binomial_pmf(k, K, 1, 1) == Rational(1, K + 1));
    CHECK(beta_binomial_pmf(1, 2, 2, 1) == r("1/3"));
    CHECK(row(beta_binomial_distribution(3, 2, 1)) == rs({"1/10", "1/5", "3/10", "2/5"}));
    CHECK(row(beta_binomial_distribution(3, r("1/2"), r("3/2"))) == rs({"35/64", "15/64", "9/64", "5/64"}));
    CHECK(row(beta_binomial_distribution(2, r("1/2"), r("3/2"))) == rs({"5/8", "1/4", "1/8"}));
}

TEST_CASE("counting functions") {
    CHECK(multiset_count(3, 2) == 6);
    CHECK(multiset_count(2, 3) == 4);
    CHECK(multiset_count(4, 5) == 56);
    CHECK(multiset_count(1, 9) == 1);
    CHECK(multiset_count(5, 0) == 1);
    CHECK(multiset_count(0, 3) == 0);
    CHECK(multiset_count(0, 0) == 1);
    CHECK(permutation_count(Multiset({1, 1, 1})) == 6);
    CHECK(permutation_count(Multiset({1, 2})) == 3);
    CHECK(permutation_count(Multiset(std::vector<std::uint64_t>{2})) == 1);
}

TEST_CASE("permutation step") {
    // m = {v, ^, ^} with v = symbol 0
    const Multiset m({1, 2});
    CHECK(row(permutation_step_dist(m, Multiset({0, 0}))) == rs({"1/3", "2/3"}));
    CHECK(row(permutation_step_dist(m, Multiset({0, 1}))) == rs({"1/2", "1/2"}));
    CHECK(row(permutation_step_dist(m, Multiset({1, 1}))) == rs({"0", "1"}));
}

TEST_CASE("multiset step for the iid model") {
    const auto d = SourceDistribution::uniform(2);
    const BinomialStep first = multiset_step_dist(d, 0, 2, 0);
    CHECK(first.trials == 2);
    CHECK(first.theta == r("1/2"));
    // m = {A,B}: P(k_A = 1 | 2, 1/2) and the forced last symbol give 1/2
    CHECK(binomial_pmf(1, first.trials, first.theta) == r("1/2"));
    const BinomialStep last = multiset_step_dist(d, 1, 1, r("1/2"));
    CHECK(last.theta == 1);

    const auto skew = SourceDistribution(rs({"1/6", "1/3", "1/2"}));
    const BinomialStep mid = multiset_step_dist(skew, 1, 2, r("1/6"));
    CHECK(mid.theta == r("2/5"));
    CHECK(binomial_pmf(1, 3, r("1/6")) * binomial_pmf(1, 2, mid.theta) == r("1/6"));
}

TEST_CASE("combination step") {
    // M = {A,A,B}, K = 2
    CHECK(row(combination_step_dist(2, 3, 2)) == rs({"0", "2/3", "1/3"}));
    CHECK(row(combination_step_dist(1, 1, 1)) == rs({"0", "1"}));
    CHECK(row(combination_step_dist(3, 5, 0)) == rs({"1"}));
}

TEST_CASE("Dirichlet predictive") {
    CHECK(row(dirichlet_predictive(DirichletParams::symmetric(2, 1), Multiset({1, 0}))) == rs({"2/3", "1/3"}));
    CHECK(row(dirichlet_predictive(DirichletParams::symmetric(2, r("1/2")), Multiset({2, 0}))) ==
          rs({"5/6", "1/6"}));
}

TEST_CASE("adaptive multiset step") {
    const auto p = DirichletParams::symmetric(2, 1);
    const BetaBinomialStep first = adaptive_multiset_step_dist(p, 0, 2, 0);
    CHECK(first.trials == 2);
    CHECK(row(beta_binomial_distribution(first.trials, first.alpha, first.beta)) == rs({"1/3", "1/3", "1/3"}));
    const BetaBinomialStep last = adaptive_multiset_step_dist(p, 1, 1, 1);
    CHECK(last.beta == 0);
}

TEST_CASE("uniform multiset step") {
    CHECK(row(uniform_multiset_step_dist(2, 3)) == rs({"1/4", "1/4", "1/4", "1/4"}));
    CHECK(row(uniform_multiset_step_dist(3, 2)) == rs({"1/2", "1/3", "1/6"}));
    CHECK(row(uniform_multiset_step_dist(1, 4)) == rs({"0", "0", "0", "0", "1"}));
}

TEST_CASE("truncated permutation probability") {
    const Multiset m({2, 1});
    const std::vector<Symbol> ab{0, 1}, aa{0, 0}, ba{1, 0};
    CHECK(truncated_perm_prob(m, ab) == r("1/3"));
    CHECK(truncated_perm_prob(m, aa) == r("1/3"));
    CHECK(truncated_perm_prob(m, ba) == r("1/3"));
    const std::vector<Symbol> a{0}, b{1};
    CHECK(truncated_perm_prob(m, a) == r("2/3"));
    CHECK(truncated_perm_prob(m, b) == r("1/3"));
    // K = M reduces to the uniform ordering
    const std::vector<Symbol> aab{0, 0, 1};
    CHECK(truncated_perm_prob(m, aab) == Rational(1) / Rational(permutation_count(m)));
}

TEST_CASE("every step distribution is exactly normalized") {
    for (std::uint64_t K = 0; K <= 8; ++K) {
        CHECK(binomial_distribution(K, r("2/7")).total() > 0);
        Rational s = 0;
        for (auto& p : row(beta_binomial_distribution(K, r("3/4"), r("5/3")))) s += p;
        CHECK(s == 1);
        s = 0;
        for (auto& p : row(binomial_distribution(K, r("2/7")))) s += p;
        CHECK(s == 1);
        for (std::uint64_t n = 1; n <= 4; ++n) {
            s = 0;
            for (auto& p : row(uniform_multiset_step_dist(n, K))) s += p;
            CHECK(s == 1);
        }
    }
}
