#include "combicodec/batch.hpp"

#include <exception>

namespace combicodec {

namespace {

RoundTripResult round_trip_one(const CodingJob& job) {
    RoundTripResult r;
    try {
        const EncodedBlob blob = encode(job.context, job.object);
        r.bits = blob.bit_length;
        r.decoded_equal = decode(job.context, blob) == job.object;
        r.information = information_content(job.context, job.object);
    } catch (const std::exception& e) {
        r.error = e.what();
    }
    return r;
}

// Runs fn(i) for every index, in parallel when asked, and rethrows the
// lowest-index exception afterwards.
template <class Fn>
void for_each_index(std::size_t n, bool parallel, Fn&& fn) {
    std::vector<std::exception_ptr> errors(n);
    const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic) if (parallel)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            fn(static_cast<std::size_t>(i));
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::vector<EncodedBlob> encode_all(std::span<const CodingJob> jobs, bool parallel) {
    std::vector<EncodedBlob> out(jobs.size());
    for_each_index(jobs.size(), parallel, [&](std::size_t i) { out[i] = encode(jobs[i].context, jobs[i].object); });
    return out;
}

std::vector<Object> decode_all(std::span<const CodingContext> contexts, std::span<const EncodedBlob> blobs,
                               bool parallel) {
    if (contexts.size() != blobs.size()) throw Error("decode batch needs one context per blob");
    std::vector<Object> out(blobs.size());
    for_each_index(blobs.size(), parallel, [&](std::size_t i) { out[i] = decode(contexts[i], blobs[i]); });
    return out;
}

std::vector<RoundTripResult> round_trip_all(std::span<const CodingJob> jobs, bool parallel) {
    std::vector<RoundTripResult> out(jobs.size());
    for_each_index(jobs.size(), parallel, [&](std::size_t i) { out[i] = round_trip_one(jobs[i]); });
    return out;
}

}  // namespace

std::vector<EncodedBlob> encode_batch(std::span<const CodingJob> jobs) { return encode_all(jobs, true); }
std::vector<EncodedBlob> encode_batch_serial(std::span<const CodingJob> jobs) { return encode_all(jobs, false); }

std::vector<Object> decode_batch(std::span<const CodingContext> contexts, std::span<const EncodedBlob> blobs) {
    return decode_all(contexts, blobs, true);
}
std::vector<Object> decode_batch_serial(std::span<const CodingContext> contexts,
                                        std::span<const EncodedBlob> blobs) {
    return decode_all(contexts, blobs, false);
}

std::vector<RoundTripResult> round_trip_batch(std::span<const CodingJob> jobs) { return round_trip_all(jobs, true); }
std::vector<RoundTripResult> round_trip_batch_serial(std::span<const CodingJob> jobs) {
    return round_trip_all(jobs, false);
}

}  // namespace combicodec
