#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace msched {

using Rng = std::mt19937_64;

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Folds a list of words into one seed. Order matters, so (seed, slot) and
// (slot, seed) give unrelated streams.
constexpr std::uint64_t derive_seed(std::initializer_list<std::uint64_t> words) noexcept {
  std::uint64_t h = 0x6a09e667f3bcc908ULL;
  for (auto w : words) h = mix64(h ^ mix64(w));
  return h;
}

// Stream tags keep generators for different purposes apart.
enum class Stream : std::uint64_t {
  kAngles = 0x41,
  kChannel = 0x43,
  kMeasure = 0x4d,
  kValidation = 0x56,
  kRandomBaseline = 0x52,
  kRealization = 0x58,
};

inline Rng make_rng(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Rng(derive_seed({seed, static_cast<std::uint64_t>(stream), index}));
}

}  // namespace msched
