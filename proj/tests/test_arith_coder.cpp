#include "combicodec/arith_coder.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace combicodec;

namespace {

std::vector<Rational> q(std::initializer_list<const char*> items) {
    std::vector<Rational> out;
    for (auto s : items) out.push_back(parse_rational(s));
    return out;
}

FrequencyTable random_table(std::mt19937_64& rng, unsigned f) {
    std::uniform_int_distribution<std::size_t> size(1, 12);
    std::uniform_int_distribution<std::uint64_t> weight(0, 50);
    std::vector<Integer> w(size(rng));
    for (auto& x : w) x = to_integer(weight(rng));
    w[rng() % w.size()] += 1;
    return discretize(ExactPmf(std::move(w)), f);
}

}  // namespace

// Frozen values below were produced by tests/oracle/derive_values.py.
TEST_CASE("discretize reproduces the frozen tables") {
    CHECK(discretize(q({"1/2", "1/2"}), 16).counts() == std::vector<std::uint64_t>{32768, 32768});
    CHECK(discretize(q({"2/3", "1/3"}), 3).counts() == std::vector<std::uint64_t>{5, 3});
    CHECK(discretize(q({"1", "0"}), 4).counts() == std::vector<std::uint64_t>{16, 0});
    CHECK(discretize(q({"1/3", "1/3", "1/3"}), 4).counts() == std::vector<std::uint64_t>{6, 5, 5});
    CHECK(discretize(q({"1/1000", "999/1000"}), 4).counts() == std::vector<std::uint64_t>{1, 15});
    CHECK(discretize(q({"1/7", "2/7", "4/7"}), 5).counts() == std::vector<std::uint64_t>{5, 9, 18});
    CHECK(discretize(q({"1/100", "1/100", "1/100", "97/100"}), 2).counts() ==
          std::vector<std::uint64_t>{1, 1, 1, 1});
}

TEST_CASE("discretize rejects bad input") {
    CHECK_THROWS_AS(discretize(q({"1/5", "1/5", "1/5", "1/5", "1/5"}), 2), Error);
    CHECK_THROWS_AS(discretize(q({"1/2", "1/3"}), 8), Error);
    CHECK_THROWS_AS(discretize(q({"3/2", "-1/2"}), 8), Error);
    CHECK_THROWS_AS(discretize(q({"1"}), 0), Error);
    CHECK_THROWS_AS(discretize(q({"1"}), 33), Error);
}

TEST_CASE("discretize keeps zeros at zero and feeds every positive outcome") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<Integer> w(1 + rng() % 40);
        for (auto& x : w) x = (rng() % 3 == 0) ? Integer(0) : to_integer(1 + rng() % 1000000);
        w[0] += 1;
        const ExactPmf pmf(w);
        const unsigned f = 6 + static_cast<unsigned>(rng() % 27);
        const FrequencyTable t = discretize(pmf, f);
        std::uint64_t sum = 0;
        for (std::size_t i = 0; i < w.size(); ++i) {
            CHECK((t.count(i) == 0) == (w[i] == 0));
            sum += t.count(i);
        }
        CHECK(sum == t.total());
        CHECK(t == discretize_serial(pmf, f));
    }
}

TEST_CASE("fast and serial discretize agree on wide and huge-denominator pmfs") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Integer> w(200 + rng() % 400);
        for (auto& x : w) {
            x = to_integer(rng());
            x *= to_integer(rng());  // totals above 2^64 take the big-integer path
        }
        const ExactPmf pmf(w);
        CHECK(discretize(pmf, 32) == discretize_serial(pmf, 32));
    }
}

TEST_CASE("frequency table lookup") {
    const FrequencyTable t({3, 0, 5}, 3);
    CHECK(t.cum_low(2) == 3);
    CHECK(t.cum_high(2) == 8);
    CHECK(t.find(0) == 0);
    CHECK(t.find(2) == 0);
    CHECK(t.find(3) == 2);
    CHECK(t.find(7) == 2);
    CHECK_THROWS_AS(FrequencyTable({3, 4}, 3), Error);
}

TEST_CASE("certain events cost nothing") {
    const FrequencyTable t({16, 0}, 4);
    Encoder enc;
    for (int i = 0; i < 100; ++i) enc.encode(t, 0);
    const EncodedBlob blob = enc.finish();
    CHECK(blob.bit_length <= 2);
    Decoder dec(blob);
    for (int i = 0; i < 100; ++i) CHECK(dec.decode(t) == 0);
}

TEST_CASE("empty message flushes to at most two bits") {
    Encoder enc;
    CHECK(enc.finish().bit_length <= 2);
}

TEST_CASE("zero-count outcome cannot be encoded") {
    const FrequencyTable t({16, 0}, 4);
    Encoder enc;
    CHECK_THROWS_AS(enc.encode(t, 1), DataError);
}

TEST_CASE("eight fair coins fit in ten bits") {
    const FrequencyTable t({32768, 32768}, 16);
    for (unsigned pattern = 0; pattern < 256; ++pattern) {
        Encoder enc;
        for (int i = 0; i < 8; ++i) enc.encode(t, (pattern >> i) & 1u);
        const EncodedBlob blob = enc.finish();
        CHECK(blob.bit_length <= 10);
        Decoder dec(blob);
        for (int i = 0; i < 8; ++i) CHECK(dec.decode(t) == ((pattern >> i) & 1u));
    }
}

TEST_CASE("random round trip over 10^4 steps, length within table cost + 2") {
    std::mt19937_64 rng(20160330);
    std::vector<FrequencyTable> tables;
    std::vector<std::size_t> symbols;
    double cost = 0.0;
    for (int step = 0; step < 10000; ++step) {
        tables.push_back(random_table(rng, 8 + static_cast<unsigned>(rng() % 25)));
        const auto& t = tables.back();
        std::size_t s;
        do s = rng() % t.size();
        while (t.count(s) == 0);
        symbols.push_back(s);
        cost += table_cost_bits(t, s);
    }
    Encoder enc;
    for (std::size_t i = 0; i < symbols.size(); ++i) enc.encode(tables[i], symbols[i]);
    const EncodedBlob blob = enc.finish();
    CHECK(static_cast<double>(blob.bit_length) <= cost + 2.0);
    Decoder dec(blob);
    std::size_t wrong = 0;
    for (std::size_t i = 0; i < symbols.size(); ++i) wrong += dec.decode(tables[i]) != symbols[i];
    CHECK(wrong == 0);
}

TEST_CASE("many short messages stay within table cost + 2") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 2000; ++trial) {
        const unsigned f = 1 + static_cast<unsigned>(rng() % 32);
        std::vector<FrequencyTable> tables;
        std::vector<std::size_t> symbols;
        double cost = 0.0;
        const int steps = static_cast<int>(rng() % 6);
        for (int step = 0; step < steps; ++step) {
            std::vector<Integer> w(1 + rng() % (f > 2 ? 4 : 2));
            for (auto& x : w) x = to_integer(1 + rng() % 9);
            tables.push_back(discretize(ExactPmf(std::move(w)), f));
            const std::size_t s = rng() % tables.back().size();
            symbols.push_back(s);
            cost += table_cost_bits(tables.back(), s);
        }
        Encoder enc;
        for (std::size_t i = 0; i < symbols.size(); ++i) enc.encode(tables[i], symbols[i]);
        const EncodedBlob blob = enc.finish();
        REQUIRE(static_cast<double>(blob.bit_length) <= cost + 2.0);
        Decoder dec(blob);
        for (std::size_t i = 0; i < symbols.size(); ++i) REQUIRE(dec.decode(tables[i]) == symbols[i]);
    }
}

TEST_CASE("bit packing is MSB-first with zero padding") {
    BitWriter w;
    for (bool b : {true, false, true, true}) w.put(b);
    const EncodedBlob blob = w.release();
    CHECK(blob.bit_length == 4);
    REQUIRE(blob.payload.size() == 1);
    CHECK(blob.payload[0] == 0xB0);

    EncodedBlob bad = blob;
    bad.payload[0] |= 0x01;
    CHECK_THROWS_AS(bad.validate(), DataError);
    bad = blob;
    bad.payload.push_back(0);
    CHECK_THROWS_AS(bad.validate(), DataError);
}
