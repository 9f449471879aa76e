#pragma once

// Independent objects coded in parallel. Each job owns its coder state, so
// the OpenMP versions are drop-in replacements for the serial loops, which
// stay as the reference the tests compare against.

#include "combicodec/object_codecs.hpp"

#include <span>
#include <string>
#include <vector>

namespace combicodec {

struct CodingJob {
    CodingContext context;
    Object object;
};

struct RoundTripResult {
    std::uint64_t bits = 0;
    double information = 0.0;  // ic of the object, bits
    bool decoded_equal = false;
    std::string error;  // empty unless an exception escaped the job
};

std::vector<EncodedBlob> encode_batch(std::span<const CodingJob> jobs);
std::vector<EncodedBlob> encode_batch_serial(std::span<const CodingJob> jobs);

/// contexts[i] decodes blobs[i].
std::vector<Object> decode_batch(std::span<const CodingContext> contexts, std::span<const EncodedBlob> blobs);
std::vector<Object> decode_batch_serial(std::span<const CodingContext> contexts,
                                        std::span<const EncodedBlob> blobs);

/// Encode, decode, compare, and measure ic for every job. Errors are
/// captured per job rather than thrown.
std::vector<RoundTripResult> round_trip_batch(std::span<const CodingJob> jobs);
std::vector<RoundTripResult> round_trip_batch_serial(std::span<const CodingJob> jobs);

}  // namespace combicodec
