#pragma once

#include <cstdint>
#include <random>

namespace evogame {

using Rng = std::mt19937_64;

// Mixes a base seed with an index (splitmix64 finalizer).
constexpr std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

enum class StreamPurpose : std::uint64_t {
  kTopology = 1,
  kInit = 2,
  kGameTransitions = 3,
  kSchedule = 4,
  kStrategy = 5,
};

inline Rng make_stream(std::uint64_t seed, StreamPurpose purpose) {
  const auto p = static_cast<std::uint64_t>(purpose);
  const auto m = mix_seed(seed, p);
  std::seed_seq seq{static_cast<std::uint32_t>(m), static_cast<std::uint32_t>(m >> 32),
                    static_cast<std::uint32_t>(p)};
  return Rng(seq);
}

// One independent stream per consumer so that toggling one consumer does not
// shift the draws seen by the others.
struct RngStreams {
  explicit RngStreams(std::uint64_t seed)
      : topology(make_stream(seed, StreamPurpose::kTopology)),
        init(make_stream(seed, StreamPurpose::kInit)),
        game(make_stream(seed, StreamPurpose::kGameTransitions)),
        schedule(make_stream(seed, StreamPurpose::kSchedule)),
        strategy(make_stream(seed, StreamPurpose::kStrategy)) {}

  Rng topology;
  Rng init;
  Rng game;
  Rng schedule;
  Rng strategy;
};

// Uniform double in [0, 1) from the top 53 bits.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform double in the open interval (0, 1).
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace evogame
