#pragma once

// Binary arithmetic coder over integer frequency tables.
//
// The coder keeps a 62-bit interval [low, high] and narrows it with 128-bit
// products, so a table of total 2^32 loses at most ~2^-29 of the interval
// width per step to integer truncation. Renormalization is bitwise with
// pending (follow) bits. Payload bits are packed MSB-first; bits past the
// recorded bit length read back as zero, which lets finish() emit only the
// shortest tail that pins the final interval.

#include "combicodec/exact_pmf.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace combicodec {

inline constexpr unsigned kDefaultFreqBits = 32;
inline constexpr unsigned kMaxFreqBits = 32;

/// Integer discretization of a distribution with total 2^freq_bits.
class FrequencyTable {
public:
    FrequencyTable(std::vector<std::uint64_t> counts, unsigned freq_bits);

    std::size_t size() const { return counts_.size(); }
    unsigned freq_bits() const { return freq_bits_; }
    std::uint64_t total() const { return std::uint64_t{1} << freq_bits_; }
    std::uint64_t count(std::size_t i) const { return counts_[i]; }
    const std::vector<std::uint64_t>& counts() const { return counts_; }
    /// Cumulative count of outcomes strictly below i.
    std::uint64_t cum_low(std::size_t i) const { return cumulative_[i]; }
    std::uint64_t cum_high(std::size_t i) const { return cumulative_[i + 1]; }
    /// Outcome whose cumulative interval contains `target` (< total).
    std::size_t find(std::uint64_t target) const;

    friend bool operator==(const FrequencyTable& a, const FrequencyTable& b) {
        return a.freq_bits_ == b.freq_bits_ && a.counts_ == b.counts_;
    }

private:
    std::vector<std::uint64_t> counts_;
    std::vector<std::uint64_t> cumulative_;
    unsigned freq_bits_;
};

/// Deterministic discretization: floor(p_i 2^f), shortfall handed out one
/// count at a time by decreasing fractional remainder (lower index first on
/// ties), then every starved positive outcome takes one count from the
/// current largest count. Outcomes with zero probability keep count zero.
///
/// Large tables split the per-outcome division across OpenMP threads; the
/// result is identical to discretize_serial().
FrequencyTable discretize(const ExactPmf& pmf, unsigned freq_bits = kDefaultFreqBits);
FrequencyTable discretize(std::span<const Rational> probs, unsigned freq_bits = kDefaultFreqBits);

/// Single-threaded big-integer reference for discretize(); kept for tests
/// and benchmarks.
FrequencyTable discretize_serial(const ExactPmf& pmf, unsigned freq_bits = kDefaultFreqBits);

/// Compressed payload: `bit_length` significant bits, MSB-first, last byte
/// zero-padded.
struct EncodedBlob {
    std::vector<std::uint8_t> payload;
    std::uint64_t bit_length = 0;

    /// Throws DataError unless payload has exactly ceil(bit_length / 8) bytes
    /// and the padding bits are zero.
    void validate() const;

    friend bool operator==(const EncodedBlob&, const EncodedBlob&) = default;
};

class BitWriter {
public:
    void put(bool bit);
    void put_repeated(bool bit, std::uint64_t n);
    std::uint64_t bit_count() const { return bits_; }
    /// Drops trailing zero bits written at or after `floor`.
    void trim_trailing_zeros(std::uint64_t floor);
    EncodedBlob release();

private:
    std::vector<std::uint8_t> bytes_;
    std::uint64_t bits_ = 0;
    std::uint64_t last_one_end_ = 0;
};

class BitReader {
public:
    explicit BitReader(const EncodedBlob& blob);
    /// Next payload bit; zero once past bit_length.
    bool next();
    std::uint64_t position() const { return pos_; }

private:
    std::span<const std::uint8_t> bytes_;
    std::uint64_t bit_length_;
    std::uint64_t pos_ = 0;
};

class Encoder {
public:
    /// Narrows the interval to `index`. Throws DataError if the outcome has
    /// a zero count, since it could never be decoded.
    void encode(const FrequencyTable& table, std::size_t index);

    /// Emits the shortest tail identifying the final interval and returns
    /// the payload. The encoder must not be used afterwards.
    EncodedBlob finish();

    /// Bits emitted so far, excluding pending bits.
    std::uint64_t emitted_bits() const { return out_.bit_count(); }
    /// Tail bits added by the last finish().
    std::uint64_t tail_bits() const { return tail_bits_; }

private:
    void emit(bool bit);

    std::uint64_t low_ = 0;
    std::uint64_t high_ = (std::uint64_t{1} << 62) - 1;
    std::uint64_t pending_ = 0;
    std::uint64_t tail_bits_ = 0;
    BitWriter out_;
};

class Decoder {
public:
    /// Validates the blob; throws DataError on a truncated payload.
    explicit Decoder(const EncodedBlob& blob);

    std::size_t decode(const FrequencyTable& table);

    /// Bits consumed from the stream, including implicit zero padding.
    std::uint64_t bits_read() const { return in_.position(); }

private:
    std::uint64_t low_ = 0;
    std::uint64_t high_ = (std::uint64_t{1} << 62) - 1;
    std::uint64_t value_ = 0;
    BitReader in_;
};

/// Ideal code length of choosing `index` from `table`: log2(total / count).
double table_cost_bits(const FrequencyTable& table, std::size_t index);

}  // namespace combicodec
