#include "combicodec/exact_pmf.hpp"

#include <algorithm>

namespace combicodec {

ExactPmf::ExactPmf(std::vector<Integer> weights) : weights_(std::move(weights)), total_(0) {
    for (const auto& w : weights_) {
        if (sgn(w) < 0) throw Error("negative weight in distribution");
        total_ += w;
    }
    if (sgn(total_) == 0) throw Error("distribution has no positive outcome");
}

ExactPmf ExactPmf::from_probabilities(std::span<const Rational> probs) {
    Integer common = 1;
    for (const auto& p : probs) {
        if (sgn(p) < 0) throw Error("negative probability " + to_string(p));
        mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), p.get_den().get_mpz_t());
    }
    std::vector<Integer> weights;
    weights.reserve(probs.size());
    for (const auto& p : probs) weights.push_back(p.get_num() * (common / p.get_den()));
    ExactPmf pmf(std::move(weights));
    if (pmf.total_ != common) throw Error("probabilities do not sum to one");
    return pmf;
}

ExactPmf ExactPmf::certain(std::size_t n, std::size_t outcome) {
    std::vector<Integer> weights(n);
    weights.at(outcome) = 1;
    return ExactPmf(std::move(weights));
}

Rational ExactPmf::probability(std::size_t i) const {
    Rational r{weights_.at(i), total_};
    r.canonicalize();
    return r;
}

std::vector<Rational> ExactPmf::probabilities() const {
    std::vector<Rational> out;
    out.reserve(weights_.size());
    for (std::size_t i = 0; i < weights_.size(); ++i) out.push_back(probability(i));
    return out;
}

std::size_t ExactPmf::support_size() const {
    return static_cast<std::size_t>(
        std::count_if(weights_.begin(), weights_.end(), [](const Integer& w) { return sgn(w) > 0; }));
}

}  // namespace combicodec
