#include "fracspde/rng.hpp"

#include <array>

namespace fracspde {

namespace {

std::seed_seq make_seq(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  return std::seed_seq{lo(seed), hi(seed), lo(a), hi(a), lo(b), hi(b)};
}

}  // namespace

Engine make_engine(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto seq = make_seq(seed, a, b);
  return Engine(seq);
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  auto seq = make_seq(seed ^ 0x9e3779b97f4a7c15ULL, a, b);
  std::array<std::uint32_t, 2> out{};
  seq.generate(out.begin(), out.end());
  return (static_cast<std::uint64_t>(out[1]) << 32) | out[0];
}

}  // namespace fracspde
