#pragma once

#include <cstdint>
#include <limits>
#include <random>

namespace prismconn {

using RandomStream = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of one 64-bit draw.
// Consumes exactly one engine output, which the coupled-trial tests rely on.
template <class URBG>
inline double canonical(URBG& rng) {
  static_assert(URBG::min() == 0 && URBG::max() == std::numeric_limits<std::uint64_t>::max(),
                "canonical() expects a full-range 64-bit engine");
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Independent stream for one Monte Carlo trial, derived only from
// (seed, trial_index) so trials can run in any order on any thread.
inline RandomStream trial_stream(std::uint64_t seed, std::uint64_t trial_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial_index),
                    static_cast<std::uint32_t>(trial_index >> 32), 0x9e3779b9u};
  return RandomStream(seq);
}

}  // namespace prismconn
