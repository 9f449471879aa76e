#pragma once

#include "combicodec/batch.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace combicodec {

struct InstanceLimits {
    std::size_t max_alphabet = 64;
    std::uint64_t max_size = 200;
};

/// A random valid (context, object) pair for `model`. Alphabet size and N
/// are uniform over [1, max_alphabet] and [0, max_size]; K is uniform over
/// [0, M]. Source weights include zeros, priors mix integer and fractional
/// pseudocounts, and objects are drawn from a random skewed distribution so
/// that both typical and improbable objects occur.
CodingJob random_job(Model model, std::mt19937_64& rng, const InstanceLimits& limits = {});

/// `count` jobs for `model` from a generator seeded with `seed`.
std::vector<CodingJob> random_jobs(Model model, std::size_t count, std::uint64_t seed,
                                   const InstanceLimits& limits = {});

}  // namespace combicodec
