#pragma once

// Exact probability models for combinatorial objects over a finite ordered
// alphabet. Every factorized model is expressed as a chain of univariate
// conditionals, each returned as an ExactPmf so it can be handed straight to
// the arithmetic coder's discretizer.

#include "combicodec/exact_pmf.hpp"
#include "combicodec/rational.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace combicodec {

/// Index of a token in its Alphabet; the index order is the total order
/// used by every count factorization.
using Symbol = std::uint32_t;

class Alphabet {
public:
    explicit Alphabet(std::vector<std::string> tokens);

    /// Tokens "0", "1", ..., for tests and generated data.
    static Alphabet numbered(std::size_t size);

    std::size_t size() const { return tokens_.size(); }
    const std::string& token(Symbol s) const { return tokens_.at(s); }
    const std::vector<std::string>& tokens() const { return tokens_; }

    std::optional<Symbol> find(std::string_view token) const;
    /// Throws DataError naming the token if it is not in the alphabet.
    Symbol symbol(std::string_view token) const;

    friend bool operator==(const Alphabet& a, const Alphabet& b) { return a.tokens_ == b.tokens_; }

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, Symbol> index_;
};

/// Symbol occurrence counts over an alphabet of fixed size.
class Multiset {
public:
    Multiset() = default;
    explicit Multiset(std::size_t alphabet_size) : counts_(alphabet_size, 0) {}
    explicit Multiset(std::vector<std::uint64_t> counts);

    static Multiset histogram(std::span<const Symbol> sequence, std::size_t alphabet_size);

    std::size_t alphabet_size() const { return counts_.size(); }
    std::uint64_t size() const { return size_; }
    std::uint64_t count(Symbol s) const { return counts_.at(s); }
    const std::vector<std::uint64_t>& counts() const { return counts_; }

    void set_count(Symbol s, std::uint64_t n);
    void add(Symbol s, std::uint64_t n = 1);
    /// Throws if fewer than n copies are present.
    void remove(Symbol s, std::uint64_t n = 1);

    /// Componentwise this <= other (same alphabet size).
    bool is_submultiset_of(const Multiset& other) const;

    /// Symbols in order, each repeated count times.
    std::vector<Symbol> sorted_elements() const;

    friend bool operator==(const Multiset& a, const Multiset& b) { return a.counts_ == b.counts_; }
    friend auto operator<=>(const Multiset& a, const Multiset& b) { return a.counts_ <=> b.counts_; }

private:
    std::vector<std::uint64_t> counts_;
    std::uint64_t size_ = 0;
};

/// Known symbol distribution D with exact rational masses summing to one.
class SourceDistribution {
public:
    explicit SourceDistribution(std::vector<Rational> mass);

    /// D(x) = weights[x] / sum(weights).
    static SourceDistribution from_weights(std::span<const std::uint64_t> weights);
    static SourceDistribution uniform(std::size_t size);

    std::size_t size() const { return mass_.size(); }
    const Rational& mass(Symbol s) const { return mass_.at(s); }
    const std::vector<Rational>& masses() const { return mass_; }
    /// Common-denominator form used for coding tables.
    const ExactPmf& pmf() const { return pmf_; }

private:
    std::vector<Rational> mass_;
    ExactPmf pmf_;
};

/// Dirichlet pseudocounts alpha_x > 0, with A = sum alpha_x.
class DirichletParams {
public:
    explicit DirichletParams(std::vector<Rational> alpha);
    static DirichletParams symmetric(std::size_t size, const Rational& alpha);

    std::size_t size() const { return alpha_.size(); }
    const Rational& alpha(Symbol s) const { return alpha_.at(s); }
    const std::vector<Rational>& alphas() const { return alpha_; }
    const Rational& total() const { return total_; }

    /// alpha_x = scaled(x) / scale with scale the lcm of the denominators.
    const Integer& scaled(Symbol s) const { return scaled_.at(s); }
    const Integer& scaled_total() const { return scaled_total_; }
    const Integer& scale() const { return scale_; }

private:
    std::vector<Rational> alpha_;
    Rational total_;
    std::vector<Integer> scaled_;
    Integer scaled_total_;
    Integer scale_;
};

// ---- univariate distributions -------------------------------------------

/// C(K,k) theta^k (1-theta)^(K-k).
Rational binomial_pmf(std::uint64_t k, std::uint64_t trials, const Rational& theta);
/// The full binomial over k = 0..trials.
ExactPmf binomial_distribution(std::uint64_t trials, const Rational& theta);

/// C(K,k) rising(alpha,k) rising(beta,K-k) / rising(alpha+beta,K), the
/// Gamma-ratio form of the Beta-binomial with every ratio reduced to a
/// rising factorial.
Rational beta_binomial_pmf(std::uint64_t k, std::uint64_t trials, const Rational& alpha,
                           const Rational& beta);
ExactPmf beta_binomial_distribution(std::uint64_t trials, const Rational& alpha,
                                    const Rational& beta);

// ---- counting ------------------------------------------------------------

/// Number of size-N multisets over K symbols, C(N+K-1, K-1). C_0(0) = 1 and C_0(N) = 0
/// for N > 0.
Integer multiset_count(std::uint64_t alphabet_size, std::uint64_t size);

/// M! / prod m_x!.
Integer permutation_count(const Multiset& m);

// ---- conditionals of the factorized models -------------------------------

/// Next element of a uniformly random ordering of `m`, given the elements
/// already drawn. Outcomes are symbols.
ExactPmf permutation_step_dist(const Multiset& m, const Multiset& drawn);

struct BinomialStep {
    std::uint64_t trials = 0;
    Rational theta;
};

/// Factor for symbol `position` of the iid multiset model: the count of x
/// among the `remaining` draws not yet assigned to earlier symbols, where
/// `consumed_mass` is the total mass of those earlier symbols.
BinomialStep multiset_step_dist(const SourceDistribution& d, Symbol position,
                                std::uint64_t remaining, const Rational& consumed_mass);

/// Count of x in a size-K draw without replacement from a size-M multiset
/// holding m_x copies of x. Outcomes are k = 0..min(m_x, K).
ExactPmf combination_step_dist(std::uint64_t m_x, std::uint64_t m_size, std::uint64_t k_size);

/// Adaptive predictive (alpha_x + n_x) / (A + n). Outcomes are symbols.
ExactPmf dirichlet_predictive(const DirichletParams& params, const Multiset& history);

struct BetaBinomialStep {
    std::uint64_t trials = 0;
    Rational alpha;
    Rational beta;  // zero for the final symbol, whose count is forced
};

/// Factor for symbol `position` of the Dirichlet-multinomial multiset
/// model; `consumed_alpha` is the pseudocount mass of earlier symbols.
BetaBinomialStep adaptive_multiset_step_dist(const DirichletParams& params, Symbol position,
                                             std::uint64_t remaining,
                                             const Rational& consumed_alpha);

/// Count of the next symbol in a uniformly random size-N' multiset over K'
/// remaining symbols: P(k) = C_{K'-1}(N'-k) / C_{K'}(N'). Outcomes are
/// k = 0..N'.
ExactPmf uniform_multiset_step_dist(std::uint64_t remaining_symbols, std::uint64_t remaining_size);

/// Probability that the first K draws without replacement from `m` are
/// `prefix`: (M-K)!/M! prod m_x!/(m_x-k_x)!.
Rational truncated_perm_prob(const Multiset& m, std::span<const Symbol> prefix);

}  // namespace combicodec
