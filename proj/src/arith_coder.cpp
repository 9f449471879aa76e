#include "combicodec/arith_coder.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace combicodec {

namespace {

__extension__ using u128 = unsigned __int128;

constexpr unsigned kPrecision = 62;
constexpr std::uint64_t kHalf = std::uint64_t{1} << (kPrecision - 1);
constexpr std::uint64_t kQuarter = std::uint64_t{1} << (kPrecision - 2);
constexpr std::uint64_t kThreeQuarters = 3 * kQuarter;

// Below this many outcomes the big-integer pass stays on one thread.
constexpr std::ptrdiff_t kParallelOutcomes = 128;

void check_freq_bits(unsigned f) {
    if (f < 1 || f > kMaxFreqBits)
        throw Error("frequency resolution must be 1..32 bits, got " + std::to_string(f));
}

void check_resolution(const ExactPmf& pmf, unsigned f) {
    if (pmf.support_size() > (std::uint64_t{1} << f))
        throw Error("resolution of " + std::to_string(f) + " bits cannot represent " +
                    std::to_string(pmf.support_size()) + " positive outcomes");
}

// Applies the shortfall and starvation rules to the floored counts.
template <class Remainder>
FrequencyTable settle(const ExactPmf& pmf, unsigned f, std::vector<std::uint64_t> counts,
                      const std::vector<Remainder>& remainder) {
    const std::uint64_t total = std::uint64_t{1} << f;
    const std::uint64_t floored = std::accumulate(counts.begin(), counts.end(), std::uint64_t{0});
    std::uint64_t shortfall = total - floored;

    if (shortfall > 0) {
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < counts.size(); ++i)
            if (remainder[i] > 0) order.push_back(i);
        // The shortfall is strictly less than the number of nonzero remainders.
        const auto by_remainder = [&](std::size_t a, std::size_t b) {
            if (remainder[a] != remainder[b]) return remainder[a] > remainder[b];
            return a < b;
        };
        std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(shortfall),
                          order.end(), by_remainder);
        for (std::uint64_t j = 0; j < shortfall; ++j) ++counts[order[j]];
    }

    for (std::size_t i = 0; i < counts.size(); ++i) {
        if (counts[i] != 0 || sgn(pmf.weight(i)) == 0) continue;
        const auto largest = std::max_element(counts.begin(), counts.end()) - counts.begin();
        --counts[static_cast<std::size_t>(largest)];
        counts[i] = 1;
    }
    return FrequencyTable(std::move(counts), f);
}

FrequencyTable discretize_big(const ExactPmf& pmf, unsigned f, bool parallel) {
    const auto n = static_cast<std::ptrdiff_t>(pmf.size());
    std::vector<std::uint64_t> counts(pmf.size());
    std::vector<Integer> remainder(pmf.size());
    const Integer& total = pmf.total();

#pragma omp parallel for schedule(static) if (parallel && n >= kParallelOutcomes)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const auto k = static_cast<std::size_t>(i);
        Integer scaled = pmf.weight(k) << f;
        Integer quotient;
        mpz_fdiv_qr(quotient.get_mpz_t(), remainder[k].get_mpz_t(), scaled.get_mpz_t(),
                    total.get_mpz_t());
        counts[k] = mpz_get_ui(quotient.get_mpz_t());
    }
    return settle(pmf, f, std::move(counts), remainder);
}

// Every weight is at most the total, so w << f fits in 96 bits.
FrequencyTable discretize_small(const ExactPmf& pmf, unsigned f) {
    const std::size_t n = pmf.size();
    const std::uint64_t total = mpz_get_ui(pmf.total().get_mpz_t());
    std::vector<std::uint64_t> counts(n);
    std::vector<std::uint64_t> remainder(n);
    for (std::size_t i = 0; i < n; ++i) {
        const u128 scaled = static_cast<u128>(mpz_get_ui(pmf.weight(i).get_mpz_t())) << f;
        counts[i] = static_cast<std::uint64_t>(scaled / total);
        remainder[i] = static_cast<std::uint64_t>(scaled % total);
    }
    return settle(pmf, f, std::move(counts), remainder);
}

}  // namespace

FrequencyTable::FrequencyTable(std::vector<std::uint64_t> counts, unsigned freq_bits)
    : counts_(std::move(counts)), freq_bits_(freq_bits) {
    check_freq_bits(freq_bits);
    cumulative_.resize(counts_.size() + 1, 0);
    for (std::size_t i = 0; i < counts_.size(); ++i) {
        if (counts_[i] > total()) throw Error("frequency count exceeds table total");
        cumulative_[i + 1] = cumulative_[i] + counts_[i];
    }
    if (cumulative_.back() != total())
        throw Error("frequency counts sum to " + std::to_string(cumulative_.back()) +
                    ", expected " + std::to_string(total()));
}

std::size_t FrequencyTable::find(std::uint64_t target) const {
    const auto it = std::upper_bound(cumulative_.begin() + 1, cumulative_.end(), target);
    return static_cast<std::size_t>(it - (cumulative_.begin() + 1));
}

FrequencyTable discretize(const ExactPmf& pmf, unsigned freq_bits) {
    check_freq_bits(freq_bits);
    check_resolution(pmf, freq_bits);
    if (mpz_sizeinbase(pmf.total().get_mpz_t(), 2) <= 64) return discretize_small(pmf, freq_bits);
    return discretize_big(pmf, freq_bits, true);
}

FrequencyTable discretize(std::span<const Rational> probs, unsigned freq_bits) {
    return discretize(ExactPmf::from_probabilities(probs), freq_bits);
}

FrequencyTable discretize_serial(const ExactPmf& pmf, unsigned freq_bits) {
    check_freq_bits(freq_bits);
    check_resolution(pmf, freq_bits);
    return discretize_big(pmf, freq_bits, false);
}

void EncodedBlob::validate() const {
    if (payload.size() != (bit_length + 7) / 8)
        throw DataError("truncated or oversized payload: " + std::to_string(payload.size()) +
                        " bytes for " + std::to_string(bit_length) + " bits");
    if (bit_length % 8 != 0) {
        const auto pad_mask = static_cast<std::uint8_t>(0xFFu >> (bit_length % 8));
        if (payload.back() & pad_mask) throw DataError("nonzero padding bits in payload");
    }
}

void BitWriter::put(bool bit) {
    if (bits_ % 8 == 0) bytes_.push_back(0);
    if (bit) {
        bytes_.back() |= static_cast<std::uint8_t>(0x80u >> (bits_ % 8));
        last_one_end_ = bits_ + 1;
    }
    ++bits_;
}

void BitWriter::put_repeated(bool bit, std::uint64_t n) {
    for (std::uint64_t i = 0; i < n; ++i) put(bit);
}

void BitWriter::trim_trailing_zeros(std::uint64_t floor) {
    bits_ = std::max(floor, last_one_end_);
    bytes_.resize((bits_ + 7) / 8);
}

EncodedBlob BitWriter::release() {
    EncodedBlob blob{std::move(bytes_), bits_};
    bytes_.clear();
    bits_ = 0;
    last_one_end_ = 0;
    return blob;
}

BitReader::BitReader(const EncodedBlob& blob) : bytes_(blob.payload), bit_length_(blob.bit_length) {
    blob.validate();
}

bool BitReader::next() {
    const std::uint64_t at = pos_++;
    if (at >= bit_length_) return false;
    return (bytes_[at / 8] >> (7 - at % 8)) & 1u;
}

void Encoder::emit(bool bit) {
    out_.put(bit);
    out_.put_repeated(!bit, pending_);
    pending_ = 0;
}

void Encoder::encode(const FrequencyTable& table, std::size_t index) {
    if (index >= table.size() || table.count(index) == 0)
        throw DataError("cannot encode outcome " + std::to_string(index) +
                        ": it has zero frequency under the model");
    const unsigned f = table.freq_bits();
    const u128 range = static_cast<u128>(high_ - low_) + 1;
    high_ = low_ + static_cast<std::uint64_t>((range * table.cum_high(index)) >> f) - 1;
    low_ = low_ + static_cast<std::uint64_t>((range * table.cum_low(index)) >> f);

    for (;;) {
        if (high_ < kHalf) {
            emit(false);
        } else if (low_ >= kHalf) {
            emit(true);
            low_ -= kHalf;
            high_ -= kHalf;
        } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
            ++pending_;
            low_ -= kQuarter;
            high_ -= kQuarter;
        } else {
            break;
        }
        low_ <<= 1;
        high_ = (high_ << 1) | 1;
    }
}

EncodedBlob Encoder::finish() {
    const std::uint64_t tail_start = out_.bit_count();
    // Smallest t such that some multiple of 2^(62-t) lies in [low, high];
    // after renormalization the interval spans more than a quarter, so t <= 2.
    unsigned t = pending_ > 0 ? 1 : 0;
    std::uint64_t point = 0;
    for (;; ++t) {
        if (t == 0) {
            if (low_ == 0) break;
            continue;
        }
        const unsigned shift = kPrecision - t;
        point = ((low_ + (std::uint64_t{1} << shift) - 1) >> shift) << shift;
        if (point <= high_) break;
    }
    if (t > 0) {
        emit((point >> (kPrecision - 1)) & 1u);
        for (unsigned i = 1; i < t; ++i) out_.put((point >> (kPrecision - 1 - i)) & 1u);
    }
    out_.trim_trailing_zeros(tail_start);
    tail_bits_ = out_.bit_count() - tail_start;
    return out_.release();
}

Decoder::Decoder(const EncodedBlob& blob) : in_(blob) {
    for (unsigned i = 0; i < kPrecision; ++i) value_ = (value_ << 1) | (in_.next() ? 1u : 0u);
}

std::size_t Decoder::decode(const FrequencyTable& table) {
    const unsigned f = table.freq_bits();
    const u128 range = static_cast<u128>(high_ - low_) + 1;
    const u128 offset = static_cast<u128>(value_ - low_) + 1;
    const auto target = static_cast<std::uint64_t>(((offset << f) - 1) / range);
    const std::size_t index = table.find(target);

    high_ = low_ + static_cast<std::uint64_t>((range * table.cum_high(index)) >> f) - 1;
    low_ = low_ + static_cast<std::uint64_t>((range * table.cum_low(index)) >> f);

    for (;;) {
        if (high_ < kHalf) {
            // nothing to subtract
        } else if (low_ >= kHalf) {
            low_ -= kHalf;
            high_ -= kHalf;
            value_ -= kHalf;
        } else if (low_ >= kQuarter && high_ < kThreeQuarters) {
            low_ -= kQuarter;
            high_ -= kQuarter;
            value_ -= kQuarter;
        } else {
            break;
        }
        low_ <<= 1;
        high_ = (high_ << 1) | 1;
        value_ = (value_ << 1) | (in_.next() ? 1u : 0u);
    }
    return index;
}

double table_cost_bits(const FrequencyTable& table, std::size_t index) {
    return static_cast<double>(table.freq_bits()) - std::log2(static_cast<double>(table.count(index)));
}

}  // namespace combicodec
