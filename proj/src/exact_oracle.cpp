#include "combicodec/exact_oracle.hpp"

#include <algorithm>
#include <exception>
#include <functional>

namespace combicodec {

namespace {

constexpr std::size_t kMaxDetails = 8;

void check_shape(std::size_t alphabet_size, std::uint64_t n, const EnumerationBudget& budget) {
    if (alphabet_size > budget.max_alphabet || n > budget.max_n)
        throw Error("enumeration of alphabet " + std::to_string(alphabet_size) + ", size " + std::to_string(n) +
                    " exceeds budget (alphabet <= " + std::to_string(budget.max_alphabet) +
                    ", N <= " + std::to_string(budget.max_n) + ")");
}

void check_count(const Integer& count, const EnumerationBudget& budget) {
    if (count > to_integer(budget.max_objects))
        throw Error("enumeration would produce " + count.get_str() + " objects, budget is " +
                    std::to_string(budget.max_objects));
}

Integer fact(std::uint64_t n) {
    Integer r = 1;
    for (std::uint64_t i = 2; i <= n; ++i) r *= static_cast<unsigned long>(i);
    return r;
}

Rational ratio(const Integer& num, const Integer& den) {
    Rational r{num, den};
    r.canonicalize();
    return r;
}

Rational power(const Rational& base, std::uint64_t e) {
    Rational r = 1;
    for (std::uint64_t i = 0; i < e; ++i) r *= base;
    return r;
}

// Gamma(a + n) / Gamma(a) by the recurrence Gamma(z + 1) = z Gamma(z).
Rational gamma_ratio(const Rational& a, std::uint64_t n) {
    Rational r = 1;
    Rational z = a;
    for (std::uint64_t i = 0; i < n; ++i) {
        r *= z;
        z += 1;
    }
    return r;
}

Integer choose(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    return fact(n) / (fact(k) * fact(n - k));
}

std::vector<std::vector<std::uint64_t>> weight_variants(std::size_t a) {
    std::vector<std::vector<std::uint64_t>> out;
    out.emplace_back(a, 1);
    std::vector<std::uint64_t> ramp(a);
    for (std::size_t i = 0; i < a; ++i) ramp[i] = i + 1;
    out.push_back(ramp);
    if (a >= 2) {
        std::vector<std::uint64_t> first_zero(a, 1), last_zero(a, 1), point(a, 0);
        first_zero[0] = 0;
        last_zero[a - 1] = 0;
        point[0] = 1;
        out.push_back(first_zero);
        out.push_back(last_zero);
        out.push_back(point);
    }
    return out;
}

std::vector<DirichletParams> prior_variants(std::size_t a) {
    static const Rational mixed[] = {Rational(1, 3), Rational(2), Rational(5, 2)};
    std::vector<Rational> m(a);
    for (std::size_t i = 0; i < a; ++i) m[i] = mixed[i % 3];
    return {DirichletParams::symmetric(a, Rational(1)), DirichletParams::symmetric(a, Rational(1, 2)),
            DirichletParams(m)};
}

template <class Report>
void note(Report& r, std::string message) {
    ++r.failures;
    if (r.details.size() < kMaxDetails) r.details.push_back(std::move(message));
}

}  // namespace

std::vector<Multiset> enumerate_multisets(std::size_t alphabet_size, std::uint64_t n,
                                          const EnumerationBudget& budget) {
    check_shape(alphabet_size, n, budget);
    check_count(multiset_count(alphabet_size, n), budget);
    std::vector<Multiset> out;
    if (alphabet_size == 0) {
        out.emplace_back(0);
        return out;
    }
    std::vector<std::uint64_t> counts(alphabet_size, 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t x, std::uint64_t left) {
        if (x + 1 == alphabet_size) {
            counts[x] = left;
            out.emplace_back(counts);
            return;
        }
        for (std::uint64_t k = 0; k <= left; ++k) {
            counts[x] = k;
            rec(x + 1, left - k);
        }
    };
    rec(0, n);
    return out;
}

std::vector<Sequence> enumerate_sequences(std::size_t alphabet_size, std::uint64_t n,
                                          const EnumerationBudget& budget) {
    check_shape(alphabet_size, n, budget);
    Integer count;
    mpz_ui_pow_ui(count.get_mpz_t(), alphabet_size, n);
    check_count(count, budget);
    std::vector<Sequence> out;
    Sequence x(n, 0);
    std::function<void(std::uint64_t)> rec = [&](std::uint64_t i) {
        if (i == n) {
            out.push_back(x);
            return;
        }
        for (Symbol s = 0; s < alphabet_size; ++s) {
            x[i] = s;
            rec(i + 1);
        }
    };
    rec(0);
    return out;
}

std::vector<Sequence> enumerate_permutations(const Multiset& m, const EnumerationBudget& budget) {
    check_shape(m.alphabet_size(), m.size(), budget);
    check_count(permutation_count(m), budget);
    std::vector<Sequence> out;
    Sequence x = m.sorted_elements();
    do {
        out.push_back(x);
    } while (std::next_permutation(x.begin(), x.end()));
    return out;
}

std::vector<Sequence> enumerate_prefixes(const Multiset& m, std::uint64_t k, const EnumerationBudget& budget) {
    check_shape(m.alphabet_size(), m.size(), budget);
    if (k > m.size()) throw Error("prefix longer than the multiset");
    std::vector<Sequence> out;
    Sequence x;
    std::vector<std::uint64_t> left = m.counts();
    std::function<void()> rec = [&] {
        if (x.size() == k) {
            if (out.size() >= budget.max_objects) throw Error("prefix enumeration exceeds budget");
            out.push_back(x);
            return;
        }
        for (Symbol s = 0; s < left.size(); ++s) {
            if (left[s] == 0) continue;
            --left[s];
            x.push_back(s);
            rec();
            x.pop_back();
            ++left[s];
        }
    };
    rec();
    return out;
}

std::vector<Multiset> enumerate_submultisets(const Multiset& m, std::uint64_t k, const EnumerationBudget& budget) {
    check_shape(m.alphabet_size(), m.size(), budget);
    if (k > m.size()) throw Error("submultiset larger than the multiset");
    std::vector<Multiset> out;
    std::vector<std::uint64_t> counts(m.alphabet_size(), 0);
    std::function<void(std::size_t, std::uint64_t)> rec = [&](std::size_t x, std::uint64_t left) {
        if (x == counts.size()) {
            if (left == 0) out.emplace_back(counts);
            return;
        }
        for (std::uint64_t c = 0; c <= std::min(left, m.count(static_cast<Symbol>(x))); ++c) {
            counts[x] = c;
            rec(x + 1, left - c);
        }
        counts[x] = 0;
    };
    rec(0, k);
    return out;
}

std::vector<Object> enumerate_objects(const CodingContext& ctx, const EnumerationBudget& budget) {
    ctx.validate();
    const std::size_t a = ctx.alphabet.size();
    std::vector<Object> out;
    auto take = [&out](auto&& items) {
        for (auto& item : items) out.emplace_back(std::move(item));
    };
    switch (ctx.model) {
    case Model::sequence:
    case Model::adaptive_sequence: take(enumerate_sequences(a, ctx.size, budget)); break;
    case Model::multiset:
    case Model::uniform_multiset:
    case Model::adaptive_multiset: take(enumerate_multisets(a, ctx.size, budget)); break;
    case Model::permutation: take(enumerate_permutations(*ctx.given, budget)); break;
    case Model::truncated_permutation: take(enumerate_prefixes(*ctx.given, *ctx.draw_size, budget)); break;
    case Model::combination: take(enumerate_submultisets(*ctx.given, *ctx.draw_size, budget)); break;
    }
    return out;
}

Rational joint_probability(const CodingContext& ctx, const Object& object) {
    ctx.validate();
    switch (ctx.model) {
    case Model::sequence: {
        Rational p = 1;
        for (Symbol s : std::get<Sequence>(object)) p *= ctx.source->mass(s);
        return p;
    }
    case Model::multiset: {
        const auto& m = std::get<Multiset>(object);
        Rational p = Rational(fact(m.size()));
        for (Symbol x = 0; x < m.alphabet_size(); ++x)
            p *= power(ctx.source->mass(x), m.count(x)) / Rational(fact(m.count(x)));
        p.canonicalize();
        return p;
    }
    case Model::permutation: {
        const Multiset& m = *ctx.given;
        if (Multiset::histogram(std::get<Sequence>(object), m.alphabet_size()) != m) return 0;
        Integer num = 1;
        for (auto c : m.counts()) num *= fact(c);
        return ratio(num, fact(m.size()));
    }
    case Model::truncated_permutation: {
        const Multiset& m = *ctx.given;
        const Multiset k = Multiset::histogram(std::get<Sequence>(object), m.alphabet_size());
        if (!k.is_submultiset_of(m)) return 0;
        Integer num = fact(m.size() - k.size());
        Integer den = fact(m.size());
        for (Symbol x = 0; x < m.alphabet_size(); ++x) {
            num *= fact(m.count(x));
            den *= fact(m.count(x) - k.count(x));
        }
        return ratio(num, den);
    }
    case Model::combination: {
        const Multiset& m = *ctx.given;
        const auto& k = std::get<Multiset>(object);
        if (!k.is_submultiset_of(m)) return 0;
        Integer num = 1;
        for (Symbol x = 0; x < m.alphabet_size(); ++x) num *= choose(m.count(x), k.count(x));
        return ratio(num, choose(m.size(), k.size()));
    }
    case Model::uniform_multiset: {
        const std::uint64_t kk = ctx.alphabet.size();
        const std::uint64_t n = ctx.size;
        return ratio(fact(n) * fact(kk - 1), fact(n + kk - 1));
    }
    case Model::adaptive_sequence: {
        const auto m = Multiset::histogram(std::get<Sequence>(object), ctx.alphabet.size());
        const DirichletParams& prior = *ctx.prior;
        Rational p = 1 / gamma_ratio(prior.total(), m.size());
        for (Symbol x = 0; x < m.alphabet_size(); ++x) p *= gamma_ratio(prior.alpha(x), m.count(x));
        return p;
    }
    case Model::adaptive_multiset: {
        const auto& m = std::get<Multiset>(object);
        const DirichletParams& prior = *ctx.prior;
        Rational p = Rational(fact(m.size())) / gamma_ratio(prior.total(), m.size());
        for (Symbol x = 0; x < m.alphabet_size(); ++x)
            p *= gamma_ratio(prior.alpha(x), m.count(x)) / Rational(fact(m.count(x)));
        p.canonicalize();
        return p;
    }
    }
    throw ContextError("unknown model");
}

FactorizationReport check_factorization(const CodingContext& ctx, const EnumerationBudget& budget) {
    FactorizationReport report;
    report.model = ctx.model;
    for (const Object& object : enumerate_objects(ctx, budget)) {
        ++report.objects;
        const Rational joint = joint_probability(ctx, object);
        const Rational chained = model_probability(ctx, object);
        report.total += joint;
        if (joint != chained) {
            ++report.mismatches;
            if (report.details.size() < kMaxDetails)
                report.details.push_back("object #" + std::to_string(report.objects - 1) + ": joint " +
                                         to_string(joint) + " vs factorized " + to_string(chained));
        }
    }
    return report;
}

std::vector<CodingContext> sweep_contexts(Model model, const EnumerationBudget& budget) {
    std::vector<CodingContext> out;
    for (std::size_t a = 1; a <= budget.max_alphabet; ++a) {
        const Alphabet alphabet = Alphabet::numbered(a);
        for (std::uint64_t n = 0; n <= budget.max_n; ++n) {
            switch (model) {
            case Model::sequence:
            case Model::multiset:
                for (const auto& w : weight_variants(a)) {
                    auto d = SourceDistribution::from_weights(w);
                    out.push_back(model == Model::sequence ? CodingContext::sequence(alphabet, d, n)
                                                           : CodingContext::multiset(alphabet, d, n));
                }
                break;
            case Model::permutation:
                for (auto& given : enumerate_multisets(a, n, budget))
                    out.push_back(CodingContext::permutation(alphabet, given));
                break;
            case Model::truncated_permutation:
            case Model::combination:
                for (auto& given : enumerate_multisets(a, n, budget))
                    for (std::uint64_t k = 0; k <= n; ++k)
                        out.push_back(model == Model::combination
                                          ? CodingContext::combination(alphabet, given, k)
                                          : CodingContext::truncated_permutation(alphabet, given, k));
                break;
            case Model::uniform_multiset: out.push_back(CodingContext::uniform_multiset(alphabet, n)); break;
            case Model::adaptive_sequence:
            case Model::adaptive_multiset:
                for (auto& prior : prior_variants(a))
                    out.push_back(model == Model::adaptive_sequence
                                      ? CodingContext::adaptive_sequence(alphabet, prior, n)
                                      : CodingContext::adaptive_multiset(alphabet, prior, n));
                break;
            }
        }
    }
    return out;
}

OracleSummary check_model(Model model, const EnumerationBudget& budget, bool parallel) {
    const auto contexts = sweep_contexts(model, budget);
    std::vector<FactorizationReport> reports(contexts.size());
    std::vector<std::string> errors(contexts.size());
    const auto count = static_cast<std::ptrdiff_t>(contexts.size());
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const auto k = static_cast<std::size_t>(i);
        try {
            reports[k] = check_factorization(contexts[k], budget);
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }

    OracleSummary summary;
    summary.name = std::string(model_name(model));
    summary.contexts = contexts.size();
    for (std::size_t k = 0; k < contexts.size(); ++k) {
        const std::string where = "context #" + std::to_string(k) + " (alphabet " +
                                  std::to_string(contexts[k].alphabet.size()) + ", N " +
                                  std::to_string(contexts[k].size) + ")";
        if (!errors[k].empty()) {
            note(summary, where + ": " + errors[k]);
            continue;
        }
        summary.objects += reports[k].objects;
        if (reports[k].total != 1) note(summary, where + ": joints sum to " + to_string(reports[k].total));
        if (reports[k].mismatches > 0)
            note(summary, where + ": " + std::to_string(reports[k].mismatches) + " factorization mismatches; " +
                              reports[k].details.front());
    }
    return summary;
}

OracleSummary check_sequence_split(const EnumerationBudget& budget) {
    OracleSummary summary;
    summary.name = "sequence = multiset + permutation";
    for (std::size_t a = 1; a <= budget.max_alphabet; ++a) {
        const Alphabet alphabet = Alphabet::numbered(a);
        for (const auto& w : weight_variants(a)) {
            const auto d = SourceDistribution::from_weights(w);
            for (std::uint64_t n = 0; n <= budget.max_n; ++n) {
                const auto seq_ctx = CodingContext::sequence(alphabet, d, n);
                const auto ms_ctx = CodingContext::multiset(alphabet, d, n);
                ++summary.contexts;
                for (const auto& x : enumerate_sequences(a, n, budget)) {
                    ++summary.objects;
                    const Multiset m = Multiset::histogram(x, a);
                    const auto perm_ctx = CodingContext::permutation(alphabet, m);
                    const Rational lhs = joint_probability(seq_ctx, x);
                    const Rational rhs = joint_probability(ms_ctx, m) * joint_probability(perm_ctx, x);
                    if (lhs != rhs) note(summary, "sequence joint " + to_string(lhs) + " != " + to_string(rhs));
                }
            }
        }
    }
    return summary;
}

OracleSummary check_adaptive_permutation_relation(const EnumerationBudget& budget) {
    OracleSummary summary;
    summary.name = "Dirichlet-multinomial = adaptive sequence x permutation count";
    for (std::size_t a = 1; a <= budget.max_alphabet; ++a) {
        const Alphabet alphabet = Alphabet::numbered(a);
        for (const auto& prior : prior_variants(a)) {
            for (std::uint64_t n = 0; n <= budget.max_n; ++n) {
                const auto ms_ctx = CodingContext::adaptive_multiset(alphabet, prior, n);
                const auto seq_ctx = CodingContext::adaptive_sequence(alphabet, prior, n);
                ++summary.contexts;
                for (const auto& m : enumerate_multisets(a, n, budget)) {
                    ++summary.objects;
                    const Rational lhs = joint_probability(ms_ctx, m);
                    const Rational rhs =
                        joint_probability(seq_ctx, m.sorted_elements()) * Rational(permutation_count(m));
                    if (lhs != rhs) note(summary, "multiset joint " + to_string(lhs) + " != " + to_string(rhs));
                }
            }
        }
    }
    return summary;
}

}  // namespace combicodec
