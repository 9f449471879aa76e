#include "combicodec/exact_oracle.hpp"
#include "combicodec/object_codecs.hpp"
#include "combicodec/random_instances.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace combicodec;

namespace {

const double kLog2_6 = 2.584962500721156;
const double kLog2_3 = 1.584962500721156;

Alphabet ab() { return Alphabet({"A", "B"}); }

template <class T>
T round_trip(const CodingContext& ctx, const T& object) {
    return std::get<T>(decode(ctx, encode(ctx, Object{object})));
}

std::uint64_t bits(const CodingContext& ctx, const Object& object) { return encode(ctx, object).bit_length; }

}  // namespace

TEST_CASE("model names and ids") {
    for (Model m : kAllModels) {
        CHECK(parse_model(model_name(m)) == m);
        CHECK(model_from_id(static_cast<std::uint8_t>(m)) == m);
    }
    CHECK_FALSE(parse_model("nope").has_value());
    CHECK_FALSE(model_from_id(8).has_value());
}

TEST_CASE("context validation") {
    auto ctx = CodingContext::sequence(ab(), SourceDistribution::uniform(2), 3);
    CHECK_NOTHROW(ctx.validate());
    ctx.prior = DirichletParams::symmetric(2, 1);
    CHECK_THROWS_AS(ctx.validate(), ContextError);
    CHECK_THROWS_AS(CodingContext::combination(ab(), Multiset({1, 1}), 3).validate(), ContextError);
    CHECK_THROWS_AS(CodingContext::sequence(ab(), SourceDistribution::uniform(3), 3).validate(), ContextError);
}

TEST_CASE("sequence codec") {
    const auto ctx = CodingContext::sequence(ab(), SourceDistribution::uniform(2), 8);
    const Sequence x{0, 1, 1, 0, 1, 0, 0, 1};
    CHECK(ic_sequence(ctx, x) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(bits(ctx, x) <= 10);
    CHECK(round_trip(ctx, x) == x);

    const auto empty = CodingContext::sequence(ab(), SourceDistribution::uniform(2), 0);
    CHECK(bits(empty, Sequence{}) <= 2);
    CHECK(round_trip(empty, Sequence{}).empty());

    const std::vector<std::uint64_t> w{1, 0};
    const auto degenerate = CodingContext::sequence(ab(), SourceDistribution::from_weights(w), 50);
    const Sequence all_a(50, 0);
    CHECK(bits(degenerate, all_a) <= 2);
    CHECK(round_trip(degenerate, all_a) == all_a);
    Sequence with_b = all_a;
    with_b[7] = 1;
    CHECK_THROWS_WITH_AS(encode(degenerate, with_b), doctest::Contains("'B'"), DataError);
    CHECK_THROWS_AS(encode(ctx, Sequence{0, 1}), DataError);
}

TEST_CASE("multiset codec") {
    const auto ctx = CodingContext::multiset(ab(), SourceDistribution::uniform(2), 2);
    const Multiset m({1, 1});
    CHECK(model_probability(ctx, m) == Rational(1, 2));
    CHECK(ic_multiset(ctx, m) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bits(ctx, m) <= 3);
    CHECK(round_trip(ctx, m) == m);
    CHECK_THROWS_AS(encode(ctx, Multiset({2, 1})), DataError);

    const auto single = CodingContext::multiset(Alphabet({"A"}), SourceDistribution::uniform(1), 40);
    CHECK(bits(single, Multiset(std::vector<std::uint64_t>{40})) <= 2);
}

TEST_CASE("permutation codec") {
    const Alphabet xyz({"X", "Y", "Z"});
    const auto ctx = CodingContext::permutation(xyz, Multiset({1, 1, 1}));
    CHECK(enumerate_permutations(*ctx.given).size() == 6);
    for (const auto& x : enumerate_permutations(*ctx.given)) {
        CHECK(ic_permutation(ctx, x) == doctest::Approx(kLog2_6).epsilon(1e-12));
        CHECK(static_cast<double>(bits(ctx, x)) <= kLog2_6 + 2);
        CHECK(round_trip(ctx, x) == x);
    }
    const Alphabet tri({"v", "^"});
    const auto ctx3 = CodingContext::permutation(tri, Multiset({1, 2}));
    CHECK(enumerate_permutations(*ctx3.given).size() == 3);
    for (const auto& x : enumerate_permutations(*ctx3.given)) {
        CHECK(static_cast<double>(bits(ctx3, x)) <= kLog2_3 + 2);
        CHECK(round_trip(ctx3, x) == x);
    }
    const auto same = CodingContext::permutation(Alphabet({"A"}), Multiset(std::vector<std::uint64_t>{3}));
    CHECK(bits(same, Sequence{0, 0, 0}) <= 2);
    CHECK_THROWS_AS(encode(ctx, Sequence{0, 0, 1}), DataError);
}

TEST_CASE("truncated permutation codec") {
    const auto ctx = CodingContext::truncated_permutation(ab(), Multiset({2, 1}), 2);
    const Sequence x{0, 1};
    CHECK(model_probability(ctx, x) == Rational(1, 3));
    CHECK(round_trip(ctx, x) == x);
    CHECK_THROWS_AS(encode(ctx, Sequence{1, 1}), DataError);

    const auto none = CodingContext::truncated_permutation(ab(), Multiset({2, 1}), 0);
    CHECK(bits(none, Sequence{}) <= 2);

    const auto full = CodingContext::truncated_permutation(ab(), Multiset({2, 1}), 3);
    const auto perm = CodingContext::permutation(ab(), Multiset({2, 1}));
    for (const auto& y : enumerate_permutations(Multiset({2, 1}))) {
        CHECK(encode(full, y) == encode(perm, y));
        CHECK(model_probability(full, y) == model_probability(perm, y));
    }
}

TEST_CASE("truncated permutation uniformity boundary") {
    // distinct elements: every prefix equally likely
    const auto distinct = CodingContext::truncated_permutation(Alphabet::numbered(4), Multiset({1, 1, 1, 1}), 2);
    const auto prefixes = enumerate_prefixes(*distinct.given, 2, {4, 5, 100000});
    for (const auto& p : prefixes) CHECK(ic_trunc_permutation(distinct, p) == ic_trunc_permutation(distinct, prefixes[0]));
    // duplicates and K < M: at least two prefixes differ
    const auto dup = CodingContext::truncated_permutation(Alphabet::numbered(3), Multiset({2, 1, 1}), 2);
    bool differ = false;
    const auto dp = enumerate_prefixes(*dup.given, 2);
    for (const auto& p : dp) differ |= model_probability(dup, p) != model_probability(dup, dp[0]);
    CHECK(differ);
}

TEST_CASE("combination codec") {
    const auto ctx = CodingContext::combination(ab(), Multiset({2, 1}), 2);
    CHECK(model_probability(ctx, Multiset({1, 1})) == Rational(2, 3));
    CHECK(model_probability(ctx, Multiset({2, 0})) == Rational(1, 3));
    CHECK(round_trip(ctx, Multiset({1, 1})) == Multiset({1, 1}));
    CHECK(round_trip(ctx, Multiset({2, 0})) == Multiset({2, 0}));
    CHECK_THROWS_AS(encode(ctx, Multiset({0, 2})), DataError);

    const auto all = CodingContext::combination(ab(), Multiset({2, 1}), 3);
    CHECK(bits(all, Multiset({2, 1})) <= 2);
    const auto none = CodingContext::combination(ab(), Multiset({2, 1}), 0);
    CHECK(bits(none, Multiset({0, 0})) <= 2);
}

TEST_CASE("uniform multiset codec") {
    const auto ctx = CodingContext::uniform_multiset(Alphabet::numbered(3), 2);
    for (const auto& m : enumerate_multisets(3, 2)) {
        CHECK(model_probability(ctx, m) == Rational(1, 6));
        CHECK(static_cast<double>(bits(ctx, m)) <= kLog2_6 + 2);
        CHECK(round_trip(ctx, m) == m);
    }
    const auto ctx2 = CodingContext::uniform_multiset(ab(), 3);
    for (const auto& m : enumerate_multisets(2, 3)) CHECK(model_probability(ctx2, m) == Rational(1, 4));
    const auto one = CodingContext::uniform_multiset(Alphabet({"A"}), 17);
    CHECK(bits(one, Multiset(std::vector<std::uint64_t>{17})) <= 2);
    CHECK_THROWS_AS(encode(ctx, Multiset({1, 0, 0})), DataError);
}

TEST_CASE("adaptive sequence codec") {
    const auto ctx = CodingContext::adaptive_sequence(ab(), DirichletParams::symmetric(2, 1), 2);
    CHECK(model_probability(ctx, Sequence{0, 1}) == Rational(1, 6));
    for (std::uint64_t n = 0; n <= 20; ++n) {
        const auto c = CodingContext::adaptive_sequence(ab(), DirichletParams::symmetric(2, 1), n);
        const Sequence x(n, 0);
        CHECK(model_probability(c, x) == Rational(1, n + 1));
        CHECK(round_trip(c, x) == x);
    }
    const auto single = CodingContext::adaptive_sequence(Alphabet({"A"}), DirichletParams::symmetric(1, 3), 30);
    CHECK(bits(single, Sequence(30, 0)) <= 2);
}

TEST_CASE("adaptive multiset codec") {
    const auto ctx = CodingContext::adaptive_multiset(ab(), DirichletParams::symmetric(2, 1), 2);
    for (const auto& m : enumerate_multisets(2, 2)) {
        CHECK(model_probability(ctx, m) == Rational(1, 3));
        CHECK(ic_adaptive_multiset(ctx, m) == doctest::Approx(kLog2_3).epsilon(1e-12));
        CHECK(round_trip(ctx, m) == m);
    }
    const auto skew = CodingContext::adaptive_multiset(
        Alphabet::numbered(3), DirichletParams({parse_rational("1/2"), 1, parse_rational("3/2")}), 3);
    CHECK(model_probability(skew, Multiset({1, 0, 2})) == Rational(3, 32));
    const auto empty = CodingContext::adaptive_multiset(ab(), DirichletParams::symmetric(2, 1), 0);
    CHECK(bits(empty, Multiset({0, 0})) <= 2);
}

TEST_CASE("split and join") {
    const Sequence x{1, 0, 1};
    const auto s = split_sequence(x, 2);
    CHECK(s.multiset == Multiset({1, 2}));
    CHECK(s.ordering == x);
    CHECK(join(s.multiset, s.ordering) == x);
    CHECK(split_sequence(Sequence{}, 2).multiset.size() == 0);
    CHECK_THROWS_AS(join(Multiset({2, 1}), x), DataError);

    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        Sequence y(rng() % 30);
        for (auto& v : y) v = static_cast<Symbol>(rng() % 5);
        const auto sp = split_sequence(y, 5);
        CHECK(join(sp.multiset, sp.ordering) == y);
    }
}

TEST_CASE("information content is additive under the split") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        const auto job = random_job(Model::sequence, rng, {12, 80});
        const auto& x = std::get<Sequence>(job.object);
        const auto sp = split_sequence(x, job.context.alphabet.size());
        const auto ms = CodingContext::multiset(job.context.alphabet, *job.context.source, x.size());
        const auto pm = CodingContext::permutation(job.context.alphabet, sp.multiset);
        CHECK(std::abs(ic_sequence(job.context, x) - ic_multiset(ms, sp.multiset) - ic_permutation(pm, sp.ordering)) <=
              1e-6);
    }
}

TEST_CASE("adaptive analogue of the split") {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 200; ++t) {
        const auto job = random_job(Model::adaptive_sequence, rng, {12, 80});
        const auto& x = std::get<Sequence>(job.object);
        const auto sp = split_sequence(x, job.context.alphabet.size());
        const auto ms = CodingContext::adaptive_multiset(job.context.alphabet, *job.context.prior, x.size());
        const auto pm = CodingContext::permutation(job.context.alphabet, sp.multiset);
        CHECK(std::abs(ic_adaptive_sequence(job.context, x) - ic_adaptive_multiset(ms, sp.multiset) -
                       ic_permutation(pm, sp.ordering)) <= 1e-6);
    }
}

TEST_CASE("zero-probability objects have infinite content") {
    const std::vector<std::uint64_t> w{1, 0};
    const auto ctx = CodingContext::sequence(ab(), SourceDistribution::from_weights(w), 1);
    CHECK(model_probability(ctx, Sequence{1}) == 0);
    CHECK_THROWS_AS(ic_sequence(ctx, Sequence{1}), DataError);
}

TEST_CASE("alphabet order changes payloads but not round trips") {
    const Alphabet fwd({"A", "B", "C"}), rev({"C", "B", "A"});
    const auto cf = CodingContext::multiset(fwd, SourceDistribution(std::vector<Rational>{Rational(1, 2), Rational(1, 3), Rational(1, 6)}), 5);
    const auto cr = CodingContext::multiset(rev, SourceDistribution(std::vector<Rational>{Rational(1, 6), Rational(1, 3), Rational(1, 2)}), 5);
    const Multiset mf({2, 1, 2}), mr({2, 1, 2});
    CHECK(round_trip(cf, mf) == mf);
    CHECK(round_trip(cr, mr) == mr);
    CHECK(model_probability(cf, mf) == model_probability(cr, mr));
}

TEST_CASE("coarse frequency resolution still round-trips") {
    std::mt19937_64 rng(8);
    for (Model m : kAllModels)
        for (int t = 0; t < 30; ++t) {
            auto job = random_job(m, rng, {6, 20});
            job.context.freq_bits = 12;
            CHECK(decode(job.context, encode(job.context, job.object)) == job.object);
        }
}
