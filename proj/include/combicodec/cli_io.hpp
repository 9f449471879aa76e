#pragma once

// File formats used by the command-line tool.
//
// Container layout:
//   "CMB1" | model id (1 byte) | n (varint) | k (varint, trunc_perm and comb
//   only) | context checksum (4 bytes) | bit length (varint) | payload
// Varints are unsigned LEB128. The checksum is the first four bytes of the
// SHA-256 of canonical_context(); the context itself is never stored.

#include "combicodec/object_codecs.hpp"

#include <array>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace combicodec {

/// The decoder's context does not match the one the container was made with.
class ContextMismatch : public DataError {
public:
    using DataError::DataError;
};

using Checksum = std::array<std::uint8_t, 4>;

struct Container {
    Model model = Model::sequence;
    std::uint64_t n = 0;
    std::optional<std::uint64_t> k;
    Checksum checksum{};
    EncodedBlob blob;

    std::vector<std::uint8_t> serialize() const;
    /// Throws DataError on bad magic, unknown model id, truncation, or
    /// trailing bytes.
    static Container parse(std::span<const std::uint8_t> bytes);

    friend bool operator==(const Container&, const Container&) = default;
};

void write_varint(std::vector<std::uint8_t>& out, std::uint64_t value);
/// Reads at `pos` and advances it.
std::uint64_t read_varint(std::span<const std::uint8_t> bytes, std::size_t& pos);

/// Deterministic serialization of everything in the context that is not
/// stored in the container (model, resolution, alphabet, source, prior,
/// given multiset).
std::string canonical_context(const CodingContext& ctx);
Checksum context_checksum(const CodingContext& ctx);

/// Builds the container for an encoded object.
Container make_container(const CodingContext& ctx, EncodedBlob blob);
/// Throws ContextMismatch if the checksum or model id disagrees with ctx.
void verify_container(const Container& c, const CodingContext& ctx);

// ---- text formats ----------------------------------------------------------

/// Whitespace-separated tokens; the order defines the symbol order.
Alphabet parse_alphabet(std::string_view text);

/// One "token weight" pair per line, weight a non-negative integer;
/// D(x) = weight / total. Tokens not listed get zero mass. Blank lines and
/// lines starting with '#' are ignored.
SourceDistribution parse_distribution(std::string_view text, const Alphabet& alphabet);

/// One "token alpha" pair per line, alpha written as "p/q" or "p" and
/// positive. Every alphabet token must be listed.
DirichletParams parse_alpha(std::string_view text, const Alphabet& alphabet);

/// Whitespace-separated tokens, each of which must be in the alphabet.
Sequence parse_tokens(std::string_view text, const Alphabet& alphabet);

/// Tokens as a sequence for ordered models, as a histogram otherwise.
Object parse_object(std::string_view text, Model model, const Alphabet& alphabet);

/// Space-separated tokens and a trailing newline. Multisets are written in
/// symbol order with each token repeated by its count.
std::string format_object(const Object& object, const Alphabet& alphabet);

std::string read_text_file(const std::filesystem::path& path);
std::vector<std::uint8_t> read_binary_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::span<const std::uint8_t> bytes);
void write_file(const std::filesystem::path& path, std::string_view text);

}  // namespace combicodec
