#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace xform {

/// Uniform integer in [0, bound) by rejection; unlike std::uniform_int_distribution
/// the sequence is identical on every standard library.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);

/// Fisher-Yates permutation of 0..n-1 driven by mt19937_64(seed).
std::vector<std::size_t> seeded_permutation(std::size_t n, std::uint64_t seed);

}  // namespace xform
