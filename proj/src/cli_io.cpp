#include "combicodec/cli_io.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <iterator>
#include <sstream>

namespace combicodec {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'C', 'M', 'B', '1'};

bool has_draw_size(Model m) { return m == Model::truncated_permutation || m == Model::combination; }

std::vector<std::string_view> split_whitespace(std::string_view text) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    const auto space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; };
    while (i < text.size()) {
        while (i < text.size() && space(text[i])) ++i;
        const std::size_t start = i;
        while (i < text.size() && !space(text[i])) ++i;
        if (i > start) out.push_back(text.substr(start, i - start));
    }
    return out;
}

// Non-comment lines split into fields, with their 1-based line numbers.
std::vector<std::pair<std::size_t, std::vector<std::string_view>>> records(std::string_view text) {
    std::vector<std::pair<std::size_t, std::vector<std::string_view>>> out;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        const auto line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        auto fields = split_whitespace(line);
        if (fields.empty() || fields.front().front() == '#') continue;
        out.emplace_back(line_no, std::move(fields));
    }
    return out;
}

// Per-symbol values from "token value" lines; duplicates are rejected.
std::vector<std::optional<Rational>> read_table(std::string_view text, const Alphabet& alphabet, const char* what) {
    std::vector<std::optional<Rational>> values(alphabet.size());
    for (const auto& [line, fields] : records(text)) {
        if (fields.size() != 2)
            throw DataError(std::string(what) + " line " + std::to_string(line) + ": expected 'token value'");
        const Symbol s = alphabet.symbol(fields[0]);
        if (values[s]) throw DataError(std::string(what) + ": token '" + std::string(fields[0]) + "' listed twice");
        values[s] = parse_rational(fields[1]);
    }
    return values;
}

}  // namespace

// ---- varints and container --------------------------------------------------

void write_varint(std::vector<std::uint8_t>& out, std::uint64_t value) {
    while (value >= 0x80) {
        out.push_back(static_cast<std::uint8_t>(value | 0x80));
        value >>= 7;
    }
    out.push_back(static_cast<std::uint8_t>(value));
}

std::uint64_t read_varint(std::span<const std::uint8_t> bytes, std::size_t& pos) {
    std::uint64_t value = 0;
    for (unsigned shift = 0;; shift += 7) {
        if (pos >= bytes.size()) throw DataError("truncated container: varint runs past the end");
        if (shift > 63) throw DataError("malformed container: varint longer than 64 bits");
        const std::uint8_t b = bytes[pos++];
        const std::uint64_t part = b & 0x7Fu;
        if (shift == 63 && part > 1) throw DataError("malformed container: varint overflows 64 bits");
        value |= part << shift;
        if (!(b & 0x80)) return value;
    }
}

std::vector<std::uint8_t> Container::serialize() const {
    std::vector<std::uint8_t> out(kMagic.begin(), kMagic.end());
    out.push_back(static_cast<std::uint8_t>(model));
    write_varint(out, n);
    if (has_draw_size(model)) {
        if (!k) throw Error("container for model '" + std::string(model_name(model)) + "' needs k");
        write_varint(out, *k);
    }
    out.insert(out.end(), checksum.begin(), checksum.end());
    write_varint(out, blob.bit_length);
    out.insert(out.end(), blob.payload.begin(), blob.payload.end());
    return out;
}

Container Container::parse(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < kMagic.size() || !std::equal(kMagic.begin(), kMagic.end(), bytes.begin()))
        throw DataError("not a combicodec container (bad magic)");
    std::size_t pos = kMagic.size();
    if (pos >= bytes.size()) throw DataError("truncated container: missing model id");
    const auto model = model_from_id(bytes[pos++]);
    if (!model) throw DataError("unknown model id " + std::to_string(bytes[pos - 1]));

    Container c;
    c.model = *model;
    c.n = read_varint(bytes, pos);
    if (has_draw_size(c.model)) c.k = read_varint(bytes, pos);
    if (bytes.size() - pos < c.checksum.size()) throw DataError("truncated container: missing checksum");
    std::copy_n(bytes.begin() + static_cast<std::ptrdiff_t>(pos), c.checksum.size(), c.checksum.begin());
    pos += c.checksum.size();
    c.blob.bit_length = read_varint(bytes, pos);
    const std::uint64_t need = (c.blob.bit_length + 7) / 8;
    if (bytes.size() - pos < need) throw DataError("truncated payload");
    if (bytes.size() - pos > need) throw DataError("trailing bytes after payload");
    c.blob.payload.assign(bytes.begin() + static_cast<std::ptrdiff_t>(pos), bytes.end());
    c.blob.validate();
    return c;
}

std::string canonical_context(const CodingContext& ctx) {
    std::ostringstream s;
    s << "combicodec-context-v1\n";
    s << "model " << model_name(ctx.model) << '\n';
    s << "freq_bits " << ctx.freq_bits << '\n';
    s << "alphabet " << ctx.alphabet.size() << '\n';
    for (const auto& t : ctx.alphabet.tokens()) s << t.size() << ':' << t << '\n';
    if (ctx.source)
        for (const auto& m : ctx.source->masses()) s << "mass " << to_string(m) << '\n';
    if (ctx.prior)
        for (const auto& a : ctx.prior->alphas()) s << "alpha " << to_string(a) << '\n';
    if (ctx.given)
        for (auto c : ctx.given->counts()) s << "given " << c << '\n';
    return s.str();
}

Checksum context_checksum(const CodingContext& ctx) {
    const std::string text = canonical_context(ctx);
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    if (EVP_Digest(text.data(), text.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("SHA-256 failed");
    Checksum out{};
    std::copy_n(digest.begin(), out.size(), out.begin());
    return out;
}

Container make_container(const CodingContext& ctx, EncodedBlob blob) {
    Container c;
    c.model = ctx.model;
    c.n = ctx.size;
    if (has_draw_size(ctx.model)) c.k = ctx.draw_size;
    c.checksum = context_checksum(ctx);
    c.blob = std::move(blob);
    return c;
}

void verify_container(const Container& c, const CodingContext& ctx) {
    if (c.model != ctx.model)
        throw ContextMismatch("model id mismatch: container holds '" + std::string(model_name(c.model)) +
                              "', decoder was given '" + std::string(model_name(ctx.model)) + "'");
    if (c.n != ctx.size || c.k != (has_draw_size(ctx.model) ? ctx.draw_size : std::nullopt))
        throw ContextMismatch("context mismatch: object size differs from the given multiset");
    if (c.checksum != context_checksum(ctx)) throw ContextMismatch("context mismatch: checksum differs");
}

// ---- text formats -------------------------------------------------------------

Alphabet parse_alphabet(std::string_view text) {
    std::vector<std::string> tokens;
    for (auto t : split_whitespace(text)) tokens.emplace_back(t);
    return Alphabet(std::move(tokens));
}

SourceDistribution parse_distribution(std::string_view text, const Alphabet& alphabet) {
    const auto table = read_table(text, alphabet, "distribution");
    std::vector<std::uint64_t> weights(alphabet.size(), 0);
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i]) continue;
        if (table[i]->get_den() != 1)
            throw DataError("distribution weight for '" + alphabet.token(static_cast<Symbol>(i)) +
                            "' must be a non-negative integer");
        weights[i] = to_u64(table[i]->get_num());
    }
    return SourceDistribution::from_weights(weights);
}

DirichletParams parse_alpha(std::string_view text, const Alphabet& alphabet) {
    const auto table = read_table(text, alphabet, "alpha");
    std::vector<Rational> alpha;
    alpha.reserve(table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        if (!table[i])
            throw DataError("alpha file has no pseudocount for '" + alphabet.token(static_cast<Symbol>(i)) + "'");
        if (sgn(*table[i]) <= 0)
            throw DataError("pseudocount for '" + alphabet.token(static_cast<Symbol>(i)) + "' must be positive");
        alpha.push_back(*table[i]);
    }
    return DirichletParams(std::move(alpha));
}

Sequence parse_tokens(std::string_view text, const Alphabet& alphabet) {
    Sequence out;
    for (auto t : split_whitespace(text)) out.push_back(alphabet.symbol(t));
    return out;
}

Object parse_object(std::string_view text, Model model, const Alphabet& alphabet) {
    Sequence x = parse_tokens(text, alphabet);
    if (is_ordered(model)) return x;
    return Multiset::histogram(x, alphabet.size());
}

std::string format_object(const Object& object, const Alphabet& alphabet) {
    const Sequence elements = std::holds_alternative<Sequence>(object)
                                  ? std::get<Sequence>(object)
                                  : std::get<Multiset>(object).sorted_elements();
    std::string out;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (i > 0) out += ' ';
        out += alphabet.token(elements[i]);
    }
    out += '\n';
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path) {
    const std::string text = read_text_file(path);
    return {text.begin(), text.end()};
}

void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw DataError("cannot write '" + path.string() + "'");
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
    if (!out) throw DataError("write to '" + path.string() + "' failed");
}

void write_file(const std::filesystem::path& path, std::string_view text) {
    write_file(path, std::span(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace combicodec
