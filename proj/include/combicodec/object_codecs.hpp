#pragma once

// Codecs for the eight object models. Each model is written once as a walk
// over its chain of conditionals; the same walk encodes, decodes, or
// multiplies out the exact model probability depending on the channel it is
// driven with, so the coded distributions and the reported information
// content cannot drift apart.

#include "combicodec/arith_coder.hpp"
#include "combicodec/discrete_models.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace combicodec {

using Sequence = std::vector<Symbol>;

/// Numeric values are the container's model id byte.
enum class Model : std::uint8_t {
    sequence = 0,
    multiset = 1,
    permutation = 2,
    truncated_permutation = 3,
    combination = 4,
    uniform_multiset = 5,
    adaptive_sequence = 6,
    adaptive_multiset = 7,
};

inline constexpr std::array<Model, 8> kAllModels{
    Model::sequence,         Model::multiset,    Model::permutation,
    Model::truncated_permutation, Model::combination, Model::uniform_multiset,
    Model::adaptive_sequence, Model::adaptive_multiset,
};

/// Short CLI name: seq, multiset, perm, trunc_perm, comb, uniform_ms,
/// adaptive_seq, adaptive_ms.
std::string_view model_name(Model model);
std::optional<Model> parse_model(std::string_view name);
std::optional<Model> model_from_id(std::uint8_t id);

/// True for models whose objects are ordered (sequences, permutations,
/// prefixes); false for the count-valued ones.
bool is_ordered(Model model);

/// Everything both endpoints must agree on out of band.
struct CodingContext {
    Model model = Model::sequence;
    Alphabet alphabet = Alphabet::numbered(1);
    std::optional<SourceDistribution> source;  // seq, multiset
    std::optional<DirichletParams> prior;      // adaptive_seq, adaptive_ms
    std::optional<Multiset> given;             // perm, trunc_perm, comb
    std::optional<std::uint64_t> draw_size;    // trunc_perm, comb (K)
    std::uint64_t size = 0;                    // N; equals given->size() for perm/trunc_perm/comb
    unsigned freq_bits = kDefaultFreqBits;

    static CodingContext sequence(Alphabet alphabet, SourceDistribution source, std::uint64_t n);
    static CodingContext multiset(Alphabet alphabet, SourceDistribution source, std::uint64_t n);
    static CodingContext permutation(Alphabet alphabet, Multiset given);
    static CodingContext truncated_permutation(Alphabet alphabet, Multiset given, std::uint64_t k);
    static CodingContext combination(Alphabet alphabet, Multiset given, std::uint64_t k);
    static CodingContext uniform_multiset(Alphabet alphabet, std::uint64_t n);
    static CodingContext adaptive_sequence(Alphabet alphabet, DirichletParams prior, std::uint64_t n);
    static CodingContext adaptive_multiset(Alphabet alphabet, DirichletParams prior, std::uint64_t n);

    /// Throws ContextError unless exactly the fields the model needs are set
    /// and they are mutually consistent.
    void validate() const;

    /// Length of a sequence-valued object, or size of a count-valued one.
    std::uint64_t object_size() const;
};

using Object = std::variant<Sequence, Multiset>;

// ---- per-model codecs -------------------------------------------------------

EncodedBlob encode_sequence(const CodingContext& ctx, std::span<const Symbol> x);
Sequence decode_sequence(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_multiset(const CodingContext& ctx, const Multiset& m);
Multiset decode_multiset(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_permutation(const CodingContext& ctx, std::span<const Symbol> x);
Sequence decode_permutation(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_trunc_permutation(const CodingContext& ctx, std::span<const Symbol> x);
Sequence decode_trunc_permutation(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_combination(const CodingContext& ctx, const Multiset& c);
Multiset decode_combination(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_uniform_multiset(const CodingContext& ctx, const Multiset& m);
Multiset decode_uniform_multiset(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_adaptive_sequence(const CodingContext& ctx, std::span<const Symbol> x);
Sequence decode_adaptive_sequence(const CodingContext& ctx, const EncodedBlob& blob);

EncodedBlob encode_adaptive_multiset(const CodingContext& ctx, const Multiset& m);
Multiset decode_adaptive_multiset(const CodingContext& ctx, const EncodedBlob& blob);

// ---- model-generic entry points ---------------------------------------------

/// Dispatches on ctx.model. The object alternative must match is_ordered().
EncodedBlob encode(const CodingContext& ctx, const Object& object);
Object decode(const CodingContext& ctx, const EncodedBlob& blob);

/// Exact probability of the object under the factorized model, i.e. the
/// product of the conditionals the codec feeds to the coder. Zero for
/// objects the model cannot produce (a zero-mass symbol); throws DataError
/// for structurally invalid objects.
Rational model_probability(const CodingContext& ctx, const Object& object);

/// -log2 model_probability; throws DataError for zero-probability objects.
double information_content(const CodingContext& ctx, const Object& object);

double ic_sequence(const CodingContext& ctx, std::span<const Symbol> x);
double ic_multiset(const CodingContext& ctx, const Multiset& m);
double ic_permutation(const CodingContext& ctx, std::span<const Symbol> x);
double ic_trunc_permutation(const CodingContext& ctx, std::span<const Symbol> x);
double ic_combination(const CodingContext& ctx, const Multiset& c);
double ic_uniform_multiset(const CodingContext& ctx, const Multiset& m);
double ic_adaptive_sequence(const CodingContext& ctx, std::span<const Symbol> x);
double ic_adaptive_multiset(const CodingContext& ctx, const Multiset& m);

// ---- sequence = multiset + ordering -------------------------------------------

struct SplitSequence {
    Multiset multiset;
    Sequence ordering;
};

SplitSequence split_sequence(std::span<const Symbol> x, std::size_t alphabet_size);
/// Throws DataError if the ordering's histogram is not `m`.
Sequence join(const Multiset& m, std::span<const Symbol> ordering);

}  // namespace combicodec
