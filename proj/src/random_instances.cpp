#include "combicodec/random_instances.hpp"

#include <algorithm>

namespace combicodec {

namespace {

template <class T>
T uniform(std::mt19937_64& rng, T lo, T hi) {
    return std::uniform_int_distribution<T>(lo, hi)(rng);
}

bool coin(std::mt19937_64& rng, double p) { return std::bernoulli_distribution(p)(rng); }

// Integer weights with roughly a fifth zeros; at least one is positive.
std::vector<std::uint64_t> random_weights(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::uint64_t> w(n);
    for (auto& v : w) v = coin(rng, 0.2) ? 0 : uniform<std::uint64_t>(rng, 1, 1000);
    if (std::all_of(w.begin(), w.end(), [](auto v) { return v == 0; })) w[uniform<std::size_t>(rng, 0, n - 1)] = 1;
    return w;
}

// Draws from the weights, or (one time in four) uniformly from their
// support so that improbable objects are exercised too.
Sequence draw_sequence(std::mt19937_64& rng, const std::vector<std::uint64_t>& weights, std::uint64_t n) {
    std::vector<double> w(weights.begin(), weights.end());
    if (coin(rng, 0.25))
        for (auto& v : w) v = v > 0 ? 1.0 : 0.0;
    std::discrete_distribution<Symbol> pick(w.begin(), w.end());
    Sequence x(n);
    for (auto& s : x) s = pick(rng);
    return x;
}

Multiset random_multiset(std::mt19937_64& rng, std::size_t alphabet, std::uint64_t n) {
    std::vector<std::uint64_t> skew(alphabet);
    for (auto& v : skew) v = uniform<std::uint64_t>(rng, 1, 100);
    return Multiset::histogram(draw_sequence(rng, skew, n), alphabet);
}

Sequence shuffled(std::mt19937_64& rng, const Multiset& m) {
    Sequence x = m.sorted_elements();
    std::shuffle(x.begin(), x.end(), rng);
    return x;
}

DirichletParams random_prior(std::mt19937_64& rng, std::size_t n) {
    if (coin(rng, 0.25)) return DirichletParams::symmetric(n, Rational(1));
    std::vector<Rational> alpha(n);
    for (auto& a : alpha) {
        a = Rational(uniform<unsigned long>(rng, 1, 20), uniform<unsigned long>(rng, 1, 8));
        a.canonicalize();
    }
    return DirichletParams(std::move(alpha));
}

}  // namespace

CodingJob random_job(Model model, std::mt19937_64& rng, const InstanceLimits& limits) {
    const std::size_t a = uniform<std::size_t>(rng, 1, limits.max_alphabet);
    const std::uint64_t n = uniform<std::uint64_t>(rng, 0, limits.max_size);
    Alphabet alphabet = Alphabet::numbered(a);

    switch (model) {
    case Model::sequence:
    case Model::multiset: {
        const auto weights = random_weights(rng, a);
        Sequence x = draw_sequence(rng, weights, n);
        auto source = SourceDistribution::from_weights(weights);
        if (model == Model::sequence)
            return {CodingContext::sequence(std::move(alphabet), std::move(source), n), std::move(x)};
        return {CodingContext::multiset(std::move(alphabet), std::move(source), n), Multiset::histogram(x, a)};
    }
    case Model::permutation: {
        Multiset given = random_multiset(rng, a, n);
        Sequence x = shuffled(rng, given);
        return {CodingContext::permutation(std::move(alphabet), std::move(given)), std::move(x)};
    }
    case Model::truncated_permutation:
    case Model::combination: {
        Multiset given = random_multiset(rng, a, n);
        const std::uint64_t k = uniform<std::uint64_t>(rng, 0, n);
        Sequence x = shuffled(rng, given);
        x.resize(k);
        if (model == Model::truncated_permutation)
            return {CodingContext::truncated_permutation(std::move(alphabet), std::move(given), k), std::move(x)};
        return {CodingContext::combination(std::move(alphabet), std::move(given), k), Multiset::histogram(x, a)};
    }
    case Model::uniform_multiset: {
        Multiset m = random_multiset(rng, a, n);
        return {CodingContext::uniform_multiset(std::move(alphabet), n), std::move(m)};
    }
    case Model::adaptive_sequence: {
        DirichletParams prior = random_prior(rng, a);
        Multiset skew = random_multiset(rng, a, n);
        Sequence x = shuffled(rng, skew);
        return {CodingContext::adaptive_sequence(std::move(alphabet), std::move(prior), n), std::move(x)};
    }
    case Model::adaptive_multiset: {
        DirichletParams prior = random_prior(rng, a);
        Multiset m = random_multiset(rng, a, n);
        return {CodingContext::adaptive_multiset(std::move(alphabet), std::move(prior), n), std::move(m)};
    }
    }
    throw Error("unknown model");
}

std::vector<CodingJob> random_jobs(Model model, std::size_t count, std::uint64_t seed, const InstanceLimits& limits) {
    std::mt19937_64 rng(seed);
    std::vector<CodingJob> jobs;
    jobs.reserve(count);
    for (std::size_t i = 0; i < count; ++i) jobs.push_back(random_job(model, rng, limits));
    return jobs;
}

}  // namespace combicodec
