#pragma once

#include "combicodec/rational.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace combicodec {

/// A distribution over outcomes 0..n-1 stored as non-negative integer weights
/// with their exact sum; P(i) = weights[i] / total. Models build these
/// directly so that no rational needs canonicalizing on the hot path.
class ExactPmf {
public:
    ExactPmf() = default;

    /// Takes the weights and sums them. Throws if any weight is negative or
    /// all are zero.
    explicit ExactPmf(std::vector<Integer> weights);

    /// Common-denominator form of an explicit list of rational masses that
    /// must sum to exactly one.
    static ExactPmf from_probabilities(std::span<const Rational> probs);

    /// Point mass on `outcome` among `n` outcomes.
    static ExactPmf certain(std::size_t n, std::size_t outcome);

    std::size_t size() const { return weights_.size(); }
    const std::vector<Integer>& weights() const { return weights_; }
    const Integer& weight(std::size_t i) const { return weights_[i]; }
    const Integer& total() const { return total_; }

    Rational probability(std::size_t i) const;
    std::vector<Rational> probabilities() const;

    /// Number of outcomes with nonzero weight.
    std::size_t support_size() const;

private:
    std::vector<Integer> weights_;
    Integer total_;
};

}  // namespace combicodec
