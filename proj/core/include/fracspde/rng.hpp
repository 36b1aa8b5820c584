#pragma once

#include <cstdint>
#include <random>

namespace fracspde {

using Engine = std::mt19937_64;

/// Engine keyed by (seed, a, b) through std::seed_seq, so any sub-stream can
/// be created directly without advancing another.
Engine make_engine(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

/// 64-bit child seed for (seed, a, b); used for replicate seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace fracspde
