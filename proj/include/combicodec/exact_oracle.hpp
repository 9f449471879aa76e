#pragma once

// Brute-force ground truth for small instances. Objects are enumerated
// exhaustively and scored with the closed-form joint probability of each
// model, computed here from factorials and Gamma ratios without touching the
// factorized conditionals in discrete_models. The checks then compare those
// joints against the probabilities the codecs actually use.

#include "combicodec/object_codecs.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace combicodec {

struct EnumerationBudget {
    std::size_t max_alphabet = 3;
    std::uint64_t max_n = 5;
    /// Hard cap on the objects a single enumeration may produce.
    std::size_t max_objects = 100000;
};

/// All C_K(N) size-N multisets over K symbols, in lexicographic order.
std::vector<Multiset> enumerate_multisets(std::size_t alphabet_size, std::uint64_t n,
                                          const EnumerationBudget& budget = {});
/// All K^N sequences.
std::vector<Sequence> enumerate_sequences(std::size_t alphabet_size, std::uint64_t n,
                                          const EnumerationBudget& budget = {});
/// Distinct orderings of m, M!/prod m_x! of them.
std::vector<Sequence> enumerate_permutations(const Multiset& m, const EnumerationBudget& budget = {});
/// Distinct length-k prefixes of orderings of m.
std::vector<Sequence> enumerate_prefixes(const Multiset& m, std::uint64_t k, const EnumerationBudget& budget = {});
/// Distinct size-k submultisets of m.
std::vector<Multiset> enumerate_submultisets(const Multiset& m, std::uint64_t k,
                                             const EnumerationBudget& budget = {});

/// Every object the context's model can be asked to code.
std::vector<Object> enumerate_objects(const CodingContext& ctx, const EnumerationBudget& budget = {});

/// Closed-form joint probability of `object` under the context's model.
Rational joint_probability(const CodingContext& ctx, const Object& object);

struct FactorizationReport {
    Model model = Model::sequence;
    std::size_t objects = 0;
    Rational total = 0;  // sum of joints over all objects
    std::size_t mismatches = 0;
    std::vector<std::string> details;  // first few mismatches

    bool ok() const { return mismatches == 0 && total == 1; }
};

/// Sum-to-one and product-equals-joint for every object of one context.
FactorizationReport check_factorization(const CodingContext& ctx, const EnumerationBudget& budget = {});

/// Contexts covering every alphabet size and N within the budget, with a
/// few source distributions (including zero masses), priors, and every
/// given multiset and draw size.
std::vector<CodingContext> sweep_contexts(Model model, const EnumerationBudget& budget = {});

struct OracleSummary {
    std::string name;
    std::size_t contexts = 0;
    std::size_t objects = 0;
    std::size_t failures = 0;
    std::vector<std::string> details;

    bool ok() const { return failures == 0; }
};

/// check_factorization over sweep_contexts(model). Contexts are checked
/// in parallel unless `parallel` is false; the results are identical.
OracleSummary check_model(Model model, const EnumerationBudget& budget = {}, bool parallel = true);

/// For every sequence within budget: iid sequence joint equals the iid
/// multiset joint of its histogram times the uniform-permutation joint.
OracleSummary check_sequence_split(const EnumerationBudget& budget = {});

/// For every multiset within budget: Dirichlet-multinomial joint equals
/// the adaptive sequence joint times permutation_count.
OracleSummary check_adaptive_permutation_relation(const EnumerationBudget& budget = {});

}  // namespace combicodec
