#include "combicodec/discrete_models.hpp"

#include <algorithm>
#include <numeric>

namespace combicodec {

namespace {

// Per-outcome products are independent; rows this long are worth threading.
constexpr std::ptrdiff_t kParallelRow = 256;

// Row C(n, 0..n) of Pascal's triangle.
std::vector<Integer> binomial_row(std::uint64_t n) {
    std::vector<Integer> row(n + 1);
    row[0] = 1;
    for (std::uint64_t k = 0; k < n; ++k) {
        row[k + 1] = row[k] * (n - k);
        mpz_divexact_ui(row[k + 1].get_mpz_t(), row[k + 1].get_mpz_t(), k + 1);
    }
    return row;
}

// Prefix products start, start*(start+step), ... (n+1 entries, first is 1).
std::vector<Integer> rising_prefix(const Integer& start, const Integer& step, std::uint64_t n) {
    std::vector<Integer> out(n + 1);
    out[0] = 1;
    Integer term = start;
    for (std::uint64_t i = 0; i < n; ++i) {
        out[i + 1] = out[i] * term;
        term += step;
    }
    return out;
}

// weights[k] = row[k] * left[k] * right[n-k].
std::vector<Integer> convolve_weights(const std::vector<Integer>& row,
                                      const std::vector<Integer>& left,
                                      const std::vector<Integer>& right) {
    const auto n = static_cast<std::ptrdiff_t>(row.size()) - 1;
    std::vector<Integer> weights(row.size());
#pragma omp parallel for schedule(static) if (n >= kParallelRow)
    for (std::ptrdiff_t k = 0; k <= n; ++k)
        weights[static_cast<std::size_t>(k)] =
            row[static_cast<std::size_t>(k)] * left[static_cast<std::size_t>(k)] *
            right[static_cast<std::size_t>(n - k)];
    return weights;
}

Integer lcm_of_denominators(std::span<const Rational> values) {
    Integer l = 1;
    for (const auto& v : values) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den().get_mpz_t());
    return l;
}

void require_same_alphabet(const Multiset& a, const Multiset& b) {
    if (a.alphabet_size() != b.alphabet_size())
        throw Error("multisets over alphabets of different sizes");
}

}  // namespace

// ---- Alphabet --------------------------------------------------------------

Alphabet::Alphabet(std::vector<std::string> tokens) : tokens_(std::move(tokens)) {
    if (tokens_.empty()) throw DataError("alphabet must contain at least one symbol");
    for (std::size_t i = 0; i < tokens_.size(); ++i) {
        if (tokens_[i].empty()) throw DataError("empty token in alphabet");
        if (!index_.emplace(tokens_[i], static_cast<Symbol>(i)).second)
            throw DataError("duplicate token '" + tokens_[i] + "' in alphabet");
    }
}

Alphabet Alphabet::numbered(std::size_t size) {
    std::vector<std::string> tokens;
    tokens.reserve(size);
    for (std::size_t i = 0; i < size; ++i) tokens.push_back(std::to_string(i));
    return Alphabet(std::move(tokens));
}

std::optional<Symbol> Alphabet::find(std::string_view token) const {
    const auto it = index_.find(std::string(token));
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

Symbol Alphabet::symbol(std::string_view token) const {
    if (auto s = find(token)) return *s;
    throw DataError("token '" + std::string(token) + "' is not in the alphabet");
}

// ---- Multiset --------------------------------------------------------------

Multiset::Multiset(std::vector<std::uint64_t> counts)
    : counts_(std::move(counts)),
      size_(std::accumulate(counts_.begin(), counts_.end(), std::uint64_t{0})) {}

Multiset Multiset::histogram(std::span<const Symbol> sequence, std::size_t alphabet_size) {
    Multiset m(alphabet_size);
    for (Symbol s : sequence) m.add(s);
    return m;
}

void Multiset::set_count(Symbol s, std::uint64_t n) {
    auto& c = counts_.at(s);
    size_ = size_ - c + n;
    c = n;
}

void Multiset::add(Symbol s, std::uint64_t n) {
    counts_.at(s) += n;
    size_ += n;
}

void Multiset::remove(Symbol s, std::uint64_t n) {
    auto& c = counts_.at(s);
    if (c < n) throw Error("removing more copies than present");
    c -= n;
    size_ -= n;
}

bool Multiset::is_submultiset_of(const Multiset& other) const {
    if (alphabet_size() != other.alphabet_size()) return false;
    for (std::size_t i = 0; i < counts_.size(); ++i)
        if (counts_[i] > other.counts_[i]) return false;
    return true;
}

std::vector<Symbol> Multiset::sorted_elements() const {
    std::vector<Symbol> out;
    out.reserve(size_);
    for (std::size_t i = 0; i < counts_.size(); ++i)
        out.insert(out.end(), counts_[i], static_cast<Symbol>(i));
    return out;
}

// ---- SourceDistribution ----------------------------------------------------

SourceDistribution::SourceDistribution(std::vector<Rational> mass)
    : mass_(std::move(mass)), pmf_(ExactPmf::from_probabilities(mass_)) {
    for (auto& m : mass_) m.canonicalize();
}

SourceDistribution SourceDistribution::from_weights(std::span<const std::uint64_t> weights) {
    const std::uint64_t sum = std::accumulate(weights.begin(), weights.end(), std::uint64_t{0});
    if (sum == 0) throw DataError("distribution weights are all zero");
    std::vector<Rational> mass;
    mass.reserve(weights.size());
    for (auto w : weights) {
        Rational r{to_integer(w), to_integer(sum)};
        r.canonicalize();
        mass.push_back(r);
    }
    return SourceDistribution(std::move(mass));
}

SourceDistribution SourceDistribution::uniform(std::size_t size) {
    std::vector<std::uint64_t> ones(size, 1);
    return from_weights(ones);
}

// ---- DirichletParams ---------------------------------------------------------

DirichletParams::DirichletParams(std::vector<Rational> alpha) : alpha_(std::move(alpha)), total_(0) {
    if (alpha_.empty()) throw DataError("Dirichlet prior needs at least one pseudocount");
    for (auto& a : alpha_) {
        a.canonicalize();
        if (sgn(a) <= 0) throw DataError("pseudocount must be positive, got " + to_string(a));
        total_ += a;
    }
    scale_ = lcm_of_denominators(alpha_);
    scaled_total_ = 0;
    for (const auto& a : alpha_) {
        scaled_.push_back(a.get_num() * (scale_ / a.get_den()));
        scaled_total_ += scaled_.back();
    }
}

DirichletParams DirichletParams::symmetric(std::size_t size, const Rational& alpha) {
    return DirichletParams(std::vector<Rational>(size, alpha));
}

// ---- univariate distributions --------------------------------------------------

Rational binomial_pmf(std::uint64_t k, std::uint64_t trials, const Rational& theta) {
    if (k > trials) throw Error("binomial outcome exceeds the number of trials");
    if (sgn(theta) < 0 || theta > 1) throw Error("binomial parameter outside [0,1]");
    Rational success, failure;
    mpz_pow_ui(success.get_num_mpz_t(), theta.get_num_mpz_t(), k);
    mpz_pow_ui(success.get_den_mpz_t(), theta.get_den_mpz_t(), k);
    const Rational complement = 1 - theta;
    mpz_pow_ui(failure.get_num_mpz_t(), complement.get_num_mpz_t(), trials - k);
    mpz_pow_ui(failure.get_den_mpz_t(), complement.get_den_mpz_t(), trials - k);
    Rational r = Rational(binomial(trials, k)) * success * failure;
    r.canonicalize();
    return r;
}

ExactPmf binomial_distribution(std::uint64_t trials, const Rational& theta) {
    if (sgn(theta) < 0 || theta > 1) throw Error("binomial parameter outside [0,1]");
    const Integer& a = theta.get_num();
    const Integer& b = theta.get_den();
    const Integer c = b - a;
    return ExactPmf(convolve_weights(binomial_row(trials), rising_prefix(a, 0, trials),
                                     rising_prefix(c, 0, trials)));
}

Rational beta_binomial_pmf(std::uint64_t k, std::uint64_t trials, const Rational& alpha,
                           const Rational& beta) {
    if (k > trials) throw Error("beta-binomial outcome exceeds the number of trials");
    if (sgn(alpha) <= 0 || sgn(beta) <= 0)
        throw Error("beta-binomial parameters must be positive");
    Rational r = Rational(binomial(trials, k)) * rising_factorial(alpha, k) *
                 rising_factorial(beta, trials - k) / rising_factorial(alpha + beta, trials);
    r.canonicalize();
    return r;
}

ExactPmf beta_binomial_distribution(std::uint64_t trials, const Rational& alpha,
                                    const Rational& beta) {
    if (sgn(alpha) <= 0 || sgn(beta) <= 0)
        throw Error("beta-binomial parameters must be positive");
    // Over a common denominator L: rising(a/L, k) = prod (a + iL) / L^k, and
    // the powers of L cancel between numerator and normalizer.
    const std::vector<Rational> both{alpha, beta};
    const Integer scale = lcm_of_denominators(both);
    const Integer a = alpha.get_num() * (scale / alpha.get_den());
    const Integer b = beta.get_num() * (scale / beta.get_den());
    return ExactPmf(convolve_weights(binomial_row(trials), rising_prefix(a, scale, trials),
                                     rising_prefix(b, scale, trials)));
}

// ---- counting ------------------------------------------------------------------

Integer multiset_count(std::uint64_t alphabet_size, std::uint64_t size) {
    if (alphabet_size == 0) return size == 0 ? 1 : 0;
    return binomial(size + alphabet_size - 1, alphabet_size - 1);
}

Integer permutation_count(const Multiset& m) {
    Integer r = factorial(m.size());
    for (auto c : m.counts()) mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), factorial(c).get_mpz_t());
    return r;
}

// ---- conditionals --------------------------------------------------------------

ExactPmf permutation_step_dist(const Multiset& m, const Multiset& drawn) {
    require_same_alphabet(m, drawn);
    if (!drawn.is_submultiset_of(m)) throw DataError("drawn elements are not contained in the multiset");
    if (drawn.size() >= m.size()) throw Error("no elements left to draw");
    std::vector<Integer> weights;
    weights.reserve(m.alphabet_size());
    for (Symbol x = 0; x < m.alphabet_size(); ++x) weights.push_back(to_integer(m.count(x) - drawn.count(x)));
    return ExactPmf(std::move(weights));
}

BinomialStep multiset_step_dist(const SourceDistribution& d, Symbol position,
                                std::uint64_t remaining, const Rational& consumed_mass) {
    if (position >= d.size()) throw Error("symbol position outside the distribution");
    if (sgn(consumed_mass) < 0 || consumed_mass > 1) throw Error("consumed mass outside [0,1]");
    const Rational left = 1 - consumed_mass;
    if (sgn(left) == 0) {
        if (remaining > 0)
            throw DataError("model inconsistency: " + std::to_string(remaining) +
                            " draws left but no probability mass remains");
        return {0, Rational(0)};
    }
    Rational theta = d.mass(position) / left;
    theta.canonicalize();
    if (theta > 1) throw Error("consumed mass is inconsistent with the distribution");
    return {remaining, theta};
}

ExactPmf combination_step_dist(std::uint64_t m_x, std::uint64_t m_size, std::uint64_t k_size) {
    if (k_size > m_size) throw Error("cannot draw more elements than the multiset holds");
    if (m_x > m_size) throw Error("symbol count exceeds multiset size");
    const std::uint64_t top = std::min(m_x, k_size);
    std::vector<Integer> weights(top + 1);
    for (std::uint64_t k = 0; k <= top; ++k)
        weights[k] = binomial(m_size - m_x, k_size - k) * binomial(m_x, k);
    return ExactPmf(std::move(weights));
}

ExactPmf dirichlet_predictive(const DirichletParams& params, const Multiset& history) {
    if (history.alphabet_size() != params.size())
        throw Error("history and prior cover different alphabets");
    std::vector<Integer> weights;
    weights.reserve(params.size());
    for (Symbol x = 0; x < params.size(); ++x)
        weights.push_back(params.scaled(x) + params.scale() * to_integer(history.count(x)));
    return ExactPmf(std::move(weights));
}

BetaBinomialStep adaptive_multiset_step_dist(const DirichletParams& params, Symbol position,
                                             std::uint64_t remaining,
                                             const Rational& consumed_alpha) {
    if (position >= params.size()) throw Error("symbol position outside the prior");
    if (consumed_alpha >= params.total()) throw Error("consumed pseudocount mass exceeds A");
    Rational beta = params.total() - consumed_alpha - params.alpha(position);
    beta.canonicalize();
    const bool final_symbol = position + 1 == params.size();
    if (final_symbol) {
        if (sgn(beta) != 0) throw Error("consumed pseudocounts do not match the prior");
    } else if (sgn(beta) <= 0) {
        throw Error("non-positive beta for a non-final symbol");
    }
    return {remaining, params.alpha(position), beta};
}

ExactPmf uniform_multiset_step_dist(std::uint64_t remaining_symbols, std::uint64_t remaining_size) {
    if (remaining_symbols == 0) {
        if (remaining_size > 0) throw Error("no symbols left for a non-empty multiset");
        return ExactPmf::certain(1, 0);
    }
    std::vector<Integer> weights(remaining_size + 1);
    for (std::uint64_t k = 0; k <= remaining_size; ++k)
        weights[k] = multiset_count(remaining_symbols - 1, remaining_size - k);
    return ExactPmf(std::move(weights));
}

Rational truncated_perm_prob(const Multiset& m, std::span<const Symbol> prefix) {
    const Multiset drawn = Multiset::histogram(prefix, m.alphabet_size());
    if (!drawn.is_submultiset_of(m)) throw DataError("prefix is not drawn from the multiset");
    Integer num = factorial(m.size() - drawn.size());
    Integer den = factorial(m.size());
    for (Symbol x = 0; x < m.alphabet_size(); ++x) {
        num *= factorial(m.count(x));
        den *= factorial(m.count(x) - drawn.count(x));
    }
    Rational r{num, den};
    r.canonicalize();
    return r;
}

}  // namespace combicodec
