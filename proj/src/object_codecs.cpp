#include "combicodec/object_codecs.hpp"

#include <string>

namespace combicodec {

namespace {

constexpr std::array<std::string_view, 8> kModelNames{
    "seq", "multiset", "perm", "trunc_perm", "comb", "uniform_ms", "adaptive_seq", "adaptive_ms",
};

// ---- channels ----------------------------------------------------------------
//
// code(pmf, value) returns the outcome at this step: the given value when
// encoding or measuring, the decoded one when decoding. Steps whose pmf has a
// single positive outcome carry no information and never touch the coder.

std::uint64_t only_outcome(const ExactPmf& pmf) {
    for (std::size_t i = 0; i < pmf.size(); ++i)
        if (sgn(pmf.weight(i)) > 0) return i;
    return 0;
}

class EncodeChannel {
public:
    explicit EncodeChannel(unsigned freq_bits) : freq_bits_(freq_bits) {}

    std::uint64_t code(const ExactPmf& pmf, std::uint64_t value) {
        check(pmf, value);
        if (pmf.support_size() > 1) encoder_.encode(discretize(pmf, freq_bits_), value);
        return value;
    }

    // For a pmf that outlives the whole walk; its table is built once.
    std::uint64_t code_static(const ExactPmf& pmf, std::uint64_t value) {
        check(pmf, value);
        if (cached_ != &pmf) {
            table_ = discretize(pmf, freq_bits_);
            cached_ = &pmf;
            trivial_ = pmf.support_size() <= 1;
        }
        if (!trivial_) encoder_.encode(*table_, value);
        return value;
    }

    EncodedBlob finish() { return encoder_.finish(); }

private:
    static void check(const ExactPmf& pmf, std::uint64_t value) {
        if (value >= pmf.size() || sgn(pmf.weight(value)) == 0)
            throw DataError("outcome " + std::to_string(value) + " has zero probability under the model");
    }

    unsigned freq_bits_;
    Encoder encoder_;
    const ExactPmf* cached_ = nullptr;
    std::optional<FrequencyTable> table_;
    bool trivial_ = false;
};

class DecodeChannel {
public:
    DecodeChannel(const EncodedBlob& blob, unsigned freq_bits) : freq_bits_(freq_bits), decoder_(blob) {}

    std::uint64_t code(const ExactPmf& pmf, std::uint64_t) {
        if (pmf.support_size() <= 1) return only_outcome(pmf);
        return decoder_.decode(discretize(pmf, freq_bits_));
    }

    std::uint64_t code_static(const ExactPmf& pmf, std::uint64_t) {
        if (cached_ != &pmf) {
            table_ = discretize(pmf, freq_bits_);
            cached_ = &pmf;
            trivial_ = pmf.support_size() <= 1;
        }
        if (trivial_) return only_outcome(pmf);
        return decoder_.decode(*table_);
    }

private:
    unsigned freq_bits_;
    Decoder decoder_;
    const ExactPmf* cached_ = nullptr;
    std::optional<FrequencyTable> table_;
    bool trivial_ = false;
};

class ProbabilityChannel {
public:
    std::uint64_t code(const ExactPmf& pmf, std::uint64_t value) {
        if (value >= pmf.size()) throw DataError("outcome outside the model's range");
        if (sgn(probability_) != 0) probability_ *= pmf.probability(value);
        return value;
    }
    std::uint64_t code_static(const ExactPmf& pmf, std::uint64_t value) { return code(pmf, value); }

    const Rational& probability() const { return probability_; }

private:
    Rational probability_ = 1;
};

// ---- validation ----------------------------------------------------------------

void require_model(const CodingContext& ctx, Model model) {
    ctx.validate();
    if (ctx.model != model)
        throw ContextError("context is for model '" + std::string(model_name(ctx.model)) +
                           "', not '" + std::string(model_name(model)) + "'");
}

void check_symbols(const CodingContext& ctx, std::span<const Symbol> x) {
    for (Symbol s : x)
        if (s >= ctx.alphabet.size()) throw DataError("symbol index " + std::to_string(s) + " outside the alphabet");
}

void check_length(std::uint64_t actual, std::uint64_t expected, const char* what) {
    if (actual != expected)
        throw DataError(std::string(what) + " has size " + std::to_string(actual) + ", context expects " +
                        std::to_string(expected));
}

void check_alphabet(const CodingContext& ctx, const Multiset& m) {
    if (m.alphabet_size() != ctx.alphabet.size())
        throw DataError("multiset is over an alphabet of a different size");
}

// Diagnostic for a symbol the source distribution cannot produce.
std::optional<std::string> zero_mass_symbol(const CodingContext& ctx, const Multiset& m) {
    for (Symbol x = 0; x < m.alphabet_size(); ++x)
        if (m.count(x) > 0 && sgn(ctx.source->mass(x)) == 0)
            return "symbol '" + ctx.alphabet.token(x) + "' has zero probability under the source distribution";
    return std::nullopt;
}

// Structural checks; returns a diagnostic if the object is valid but has
// zero probability.
std::optional<std::string> validate_object(const CodingContext& ctx, const Object& object) {
    if (is_ordered(ctx.model) != std::holds_alternative<Sequence>(object))
        throw DataError("object kind does not match model '" + std::string(model_name(ctx.model)) + "'");
    switch (ctx.model) {
    case Model::sequence: {
        const auto& x = std::get<Sequence>(object);
        check_symbols(ctx, x);
        check_length(x.size(), ctx.size, "sequence");
        return zero_mass_symbol(ctx, Multiset::histogram(x, ctx.alphabet.size()));
    }
    case Model::adaptive_sequence: {
        const auto& x = std::get<Sequence>(object);
        check_symbols(ctx, x);
        check_length(x.size(), ctx.size, "sequence");
        return std::nullopt;
    }
    case Model::permutation: {
        const auto& x = std::get<Sequence>(object);
        check_symbols(ctx, x);
        if (Multiset::histogram(x, ctx.alphabet.size()) != *ctx.given)
            throw DataError("sequence is not a permutation of the given multiset");
        return std::nullopt;
    }
    case Model::truncated_permutation: {
        const auto& x = std::get<Sequence>(object);
        check_symbols(ctx, x);
        check_length(x.size(), *ctx.draw_size, "prefix");
        if (!Multiset::histogram(x, ctx.alphabet.size()).is_submultiset_of(*ctx.given))
            throw DataError("prefix uses more copies of a symbol than the given multiset holds");
        return std::nullopt;
    }
    case Model::combination: {
        const auto& c = std::get<Multiset>(object);
        check_alphabet(ctx, c);
        check_length(c.size(), *ctx.draw_size, "combination");
        if (!c.is_submultiset_of(*ctx.given))
            throw DataError("combination is not a submultiset of the given multiset");
        return std::nullopt;
    }
    case Model::multiset: {
        const auto& m = std::get<Multiset>(object);
        check_alphabet(ctx, m);
        check_length(m.size(), ctx.size, "multiset");
        return zero_mass_symbol(ctx, m);
    }
    case Model::uniform_multiset:
    case Model::adaptive_multiset: {
        const auto& m = std::get<Multiset>(object);
        check_alphabet(ctx, m);
        check_length(m.size(), ctx.size, "multiset");
        return std::nullopt;
    }
    }
    throw ContextError("unknown model");
}

// ---- model walks ---------------------------------------------------------------
//
// Count-valued walks visit symbols in alphabet order. Once no draws remain
// every later count is zero, and the final symbol takes whatever is left;
// neither is coded.

template <class Channel>
void walk_sequence(const CodingContext& ctx, Channel& ch, Sequence& x) {
    const ExactPmf& pmf = ctx.source->pmf();
    for (auto& s : x) s = static_cast<Symbol>(ch.code_static(pmf, s));
}

template <class Channel>
void walk_multiset(const CodingContext& ctx, Channel& ch, Multiset& m) {
    const SourceDistribution& d = *ctx.source;
    const auto last = static_cast<Symbol>(m.alphabet_size() - 1);
    std::uint64_t remaining = ctx.size;
    Rational consumed = 0;
    for (Symbol x = 0; x <= last && remaining > 0; ++x) {
        if (x == last) {
            m.set_count(x, remaining);
            break;
        }
        const BinomialStep step = multiset_step_dist(d, x, remaining, consumed);
        const std::uint64_t k = ch.code(binomial_distribution(step.trials, step.theta), m.count(x));
        m.set_count(x, k);
        remaining -= k;
        consumed += d.mass(x);
    }
}

template <class Channel>
void walk_draws(const CodingContext& ctx, Channel& ch, Sequence& x) {
    const Multiset& given = *ctx.given;
    Multiset drawn(given.alphabet_size());
    for (auto& s : x) {
        s = static_cast<Symbol>(ch.code(permutation_step_dist(given, drawn), s));
        drawn.add(s);
    }
}

template <class Channel>
void walk_combination(const CodingContext& ctx, Channel& ch, Multiset& c) {
    const Multiset& given = *ctx.given;
    const auto last = static_cast<Symbol>(given.alphabet_size() - 1);
    std::uint64_t pool = given.size();
    std::uint64_t remaining = *ctx.draw_size;
    for (Symbol x = 0; x <= last && remaining > 0; ++x) {
        if (x == last) {
            c.set_count(x, remaining);
            break;
        }
        const std::uint64_t m_x = given.count(x);
        const std::uint64_t k = ch.code(combination_step_dist(m_x, pool, remaining), c.count(x));
        c.set_count(x, k);
        pool -= m_x;
        remaining -= k;
    }
}

template <class Channel>
void walk_uniform_multiset(const CodingContext& ctx, Channel& ch, Multiset& m) {
    const auto last = static_cast<Symbol>(m.alphabet_size() - 1);
    std::uint64_t remaining = ctx.size;
    for (Symbol x = 0; x <= last && remaining > 0; ++x) {
        if (x == last) {
            m.set_count(x, remaining);
            break;
        }
        const std::uint64_t k =
            ch.code(uniform_multiset_step_dist(m.alphabet_size() - x, remaining), m.count(x));
        m.set_count(x, k);
        remaining -= k;
    }
}

template <class Channel>
void walk_adaptive_sequence(const CodingContext& ctx, Channel& ch, Sequence& x) {
    Multiset history(ctx.alphabet.size());
    for (auto& s : x) {
        s = static_cast<Symbol>(ch.code(dirichlet_predictive(*ctx.prior, history), s));
        history.add(s);
    }
}

template <class Channel>
void walk_adaptive_multiset(const CodingContext& ctx, Channel& ch, Multiset& m) {
    const DirichletParams& prior = *ctx.prior;
    const auto last = static_cast<Symbol>(m.alphabet_size() - 1);
    std::uint64_t remaining = ctx.size;
    Rational consumed = 0;
    for (Symbol x = 0; x <= last && remaining > 0; ++x) {
        if (x == last) {
            m.set_count(x, remaining);
            break;
        }
        const BetaBinomialStep step = adaptive_multiset_step_dist(prior, x, remaining, consumed);
        const std::uint64_t k =
            ch.code(beta_binomial_distribution(step.trials, step.alpha, step.beta), m.count(x));
        m.set_count(x, k);
        remaining -= k;
        consumed += prior.alpha(x);
    }
}

template <class Channel>
void walk(const CodingContext& ctx, Channel& ch, Object& object) {
    switch (ctx.model) {
    case Model::sequence: return walk_sequence(ctx, ch, std::get<Sequence>(object));
    case Model::multiset: return walk_multiset(ctx, ch, std::get<Multiset>(object));
    case Model::permutation:
    case Model::truncated_permutation: return walk_draws(ctx, ch, std::get<Sequence>(object));
    case Model::combination: return walk_combination(ctx, ch, std::get<Multiset>(object));
    case Model::uniform_multiset: return walk_uniform_multiset(ctx, ch, std::get<Multiset>(object));
    case Model::adaptive_sequence: return walk_adaptive_sequence(ctx, ch, std::get<Sequence>(object));
    case Model::adaptive_multiset: return walk_adaptive_multiset(ctx, ch, std::get<Multiset>(object));
    }
}

Object blank_object(const CodingContext& ctx) {
    if (is_ordered(ctx.model)) return Sequence(ctx.object_size(), 0);
    return Multiset(ctx.alphabet.size());
}

EncodedBlob encode_as(const CodingContext& ctx, Model model, Object object) {
    require_model(ctx, model);
    if (auto why = validate_object(ctx, object)) throw DataError(*why);
    EncodeChannel ch(ctx.freq_bits);
    walk(ctx, ch, object);
    return ch.finish();
}

Object decode_as(const CodingContext& ctx, Model model, const EncodedBlob& blob) {
    require_model(ctx, model);
    Object object = blank_object(ctx);
    DecodeChannel ch(blob, ctx.freq_bits);
    walk(ctx, ch, object);
    return object;
}

double ic_as(const CodingContext& ctx, Model model, Object object) {
    require_model(ctx, model);
    return information_content(ctx, object);
}

Sequence to_sequence(std::span<const Symbol> x) { return Sequence(x.begin(), x.end()); }

}  // namespace

// ---- Model --------------------------------------------------------------------

std::string_view model_name(Model model) { return kModelNames.at(static_cast<std::size_t>(model)); }

std::optional<Model> parse_model(std::string_view name) {
    for (std::size_t i = 0; i < kModelNames.size(); ++i)
        if (kModelNames[i] == name) return static_cast<Model>(i);
    return std::nullopt;
}

std::optional<Model> model_from_id(std::uint8_t id) {
    if (id >= kModelNames.size()) return std::nullopt;
    return static_cast<Model>(id);
}

bool is_ordered(Model model) {
    return model == Model::sequence || model == Model::permutation ||
           model == Model::truncated_permutation || model == Model::adaptive_sequence;
}

// ---- CodingContext -------------------------------------------------------------

CodingContext CodingContext::sequence(Alphabet alphabet, SourceDistribution source, std::uint64_t n) {
    CodingContext ctx{Model::sequence, std::move(alphabet), std::move(source), {}, {}, {}, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::multiset(Alphabet alphabet, SourceDistribution source, std::uint64_t n) {
    CodingContext ctx{Model::multiset, std::move(alphabet), std::move(source), {}, {}, {}, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::permutation(Alphabet alphabet, Multiset given) {
    const auto n = given.size();
    CodingContext ctx{Model::permutation, std::move(alphabet), {}, {}, std::move(given), {}, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::truncated_permutation(Alphabet alphabet, Multiset given, std::uint64_t k) {
    const auto n = given.size();
    CodingContext ctx{Model::truncated_permutation, std::move(alphabet), {}, {}, std::move(given), k, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::combination(Alphabet alphabet, Multiset given, std::uint64_t k) {
    const auto n = given.size();
    CodingContext ctx{Model::combination, std::move(alphabet), {}, {}, std::move(given), k, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::uniform_multiset(Alphabet alphabet, std::uint64_t n) {
    CodingContext ctx{Model::uniform_multiset, std::move(alphabet), {}, {}, {}, {}, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::adaptive_sequence(Alphabet alphabet, DirichletParams prior, std::uint64_t n) {
    CodingContext ctx{Model::adaptive_sequence, std::move(alphabet), {}, std::move(prior), {}, {}, n};
    ctx.validate();
    return ctx;
}

CodingContext CodingContext::adaptive_multiset(Alphabet alphabet, DirichletParams prior, std::uint64_t n) {
    CodingContext ctx{Model::adaptive_multiset, std::move(alphabet), {}, std::move(prior), {}, {}, n};
    ctx.validate();
    return ctx;
}

void CodingContext::validate() const {
    const std::string name(model_name(model));
    const bool wants_source = model == Model::sequence || model == Model::multiset;
    const bool wants_prior = model == Model::adaptive_sequence || model == Model::adaptive_multiset;
    const bool wants_given = model == Model::permutation || model == Model::truncated_permutation ||
                             model == Model::combination;
    const bool wants_k = model == Model::truncated_permutation || model == Model::combination;

    auto presence = [&](bool has, bool wants, const char* what) {
        if (has && !wants) throw ContextError("model '" + name + "' does not take " + what);
        if (!has && wants) throw ContextError("model '" + name + "' requires " + what);
    };
    presence(source.has_value(), wants_source, "a source distribution");
    presence(prior.has_value(), wants_prior, "a Dirichlet prior");
    presence(given.has_value(), wants_given, "a given multiset");
    presence(draw_size.has_value(), wants_k, "a draw size K");

    if (freq_bits < 1 || freq_bits > kMaxFreqBits) throw ContextError("frequency resolution must be 1..32 bits");
    if (source && source->size() != alphabet.size())
        throw ContextError("source distribution does not cover the alphabet");
    if (prior && prior->size() != alphabet.size()) throw ContextError("prior does not cover the alphabet");
    if (given) {
        if (given->alphabet_size() != alphabet.size())
            throw ContextError("given multiset is over a different alphabet");
        if (size != given->size()) throw ContextError("N must equal the size of the given multiset");
    }
    if (draw_size && *draw_size > given->size())
        throw ContextError("draw size K exceeds the size of the given multiset");
}

std::uint64_t CodingContext::object_size() const { return draw_size ? *draw_size : size; }

// ---- codecs -------------------------------------------------------------------

EncodedBlob encode_sequence(const CodingContext& ctx, std::span<const Symbol> x) {
    return encode_as(ctx, Model::sequence, to_sequence(x));
}
Sequence decode_sequence(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Sequence>(decode_as(ctx, Model::sequence, blob));
}

EncodedBlob encode_multiset(const CodingContext& ctx, const Multiset& m) {
    return encode_as(ctx, Model::multiset, m);
}
Multiset decode_multiset(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Multiset>(decode_as(ctx, Model::multiset, blob));
}

EncodedBlob encode_permutation(const CodingContext& ctx, std::span<const Symbol> x) {
    return encode_as(ctx, Model::permutation, to_sequence(x));
}
Sequence decode_permutation(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Sequence>(decode_as(ctx, Model::permutation, blob));
}

EncodedBlob encode_trunc_permutation(const CodingContext& ctx, std::span<const Symbol> x) {
    return encode_as(ctx, Model::truncated_permutation, to_sequence(x));
}
Sequence decode_trunc_permutation(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Sequence>(decode_as(ctx, Model::truncated_permutation, blob));
}

EncodedBlob encode_combination(const CodingContext& ctx, const Multiset& c) {
    return encode_as(ctx, Model::combination, c);
}
Multiset decode_combination(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Multiset>(decode_as(ctx, Model::combination, blob));
}

EncodedBlob encode_uniform_multiset(const CodingContext& ctx, const Multiset& m) {
    return encode_as(ctx, Model::uniform_multiset, m);
}
Multiset decode_uniform_multiset(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Multiset>(decode_as(ctx, Model::uniform_multiset, blob));
}

EncodedBlob encode_adaptive_sequence(const CodingContext& ctx, std::span<const Symbol> x) {
    return encode_as(ctx, Model::adaptive_sequence, to_sequence(x));
}
Sequence decode_adaptive_sequence(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Sequence>(decode_as(ctx, Model::adaptive_sequence, blob));
}

EncodedBlob encode_adaptive_multiset(const CodingContext& ctx, const Multiset& m) {
    return encode_as(ctx, Model::adaptive_multiset, m);
}
Multiset decode_adaptive_multiset(const CodingContext& ctx, const EncodedBlob& blob) {
    return std::get<Multiset>(decode_as(ctx, Model::adaptive_multiset, blob));
}

EncodedBlob encode(const CodingContext& ctx, const Object& object) {
    return encode_as(ctx, ctx.model, object);
}

Object decode(const CodingContext& ctx, const EncodedBlob& blob) { return decode_as(ctx, ctx.model, blob); }

Rational model_probability(const CodingContext& ctx, const Object& object) {
    ctx.validate();
    if (validate_object(ctx, object)) return 0;
    Object copy = object;
    ProbabilityChannel ch;
    walk(ctx, ch, copy);
    return ch.probability();
}

double information_content(const CodingContext& ctx, const Object& object) {
    ctx.validate();
    if (auto why = validate_object(ctx, object)) throw DataError(*why);
    return information_bits(model_probability(ctx, object));
}

double ic_sequence(const CodingContext& ctx, std::span<const Symbol> x) {
    return ic_as(ctx, Model::sequence, to_sequence(x));
}
double ic_multiset(const CodingContext& ctx, const Multiset& m) { return ic_as(ctx, Model::multiset, m); }
double ic_permutation(const CodingContext& ctx, std::span<const Symbol> x) {
    return ic_as(ctx, Model::permutation, to_sequence(x));
}
double ic_trunc_permutation(const CodingContext& ctx, std::span<const Symbol> x) {
    return ic_as(ctx, Model::truncated_permutation, to_sequence(x));
}
double ic_combination(const CodingContext& ctx, const Multiset& c) { return ic_as(ctx, Model::combination, c); }
double ic_uniform_multiset(const CodingContext& ctx, const Multiset& m) {
    return ic_as(ctx, Model::uniform_multiset, m);
}
double ic_adaptive_sequence(const CodingContext& ctx, std::span<const Symbol> x) {
    return ic_as(ctx, Model::adaptive_sequence, to_sequence(x));
}
double ic_adaptive_multiset(const CodingContext& ctx, const Multiset& m) {
    return ic_as(ctx, Model::adaptive_multiset, m);
}

// ---- split / join -------------------------------------------------------------

SplitSequence split_sequence(std::span<const Symbol> x, std::size_t alphabet_size) {
    return {Multiset::histogram(x, alphabet_size), to_sequence(x)};
}

Sequence join(const Multiset& m, std::span<const Symbol> ordering) {
    for (Symbol s : ordering)
        if (s >= m.alphabet_size()) throw DataError("ordering uses a symbol outside the alphabet");
    if (Multiset::histogram(ordering, m.alphabet_size()) != m)
        throw DataError("ordering is not a permutation of the multiset");
    return to_sequence(ordering);
}

}  // namespace combicodec
