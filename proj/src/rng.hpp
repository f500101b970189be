/**
 * Deterministic pseudo-random number generation.
 *
 * The generator is xoshiro256++ seeded through splitmix64, with Gaussian
 * variates produced by Box-Muller. Both algorithms are fully specified
 * here (no standard-library distributions), so a given seed yields the
 * same stream on every platform and build. Uncorrelated substreams for
 * parallel work are derived from a master seed and a stream index.
 */
#pragma once

#include <cstdint>

namespace qtel {

/// Advances a splitmix64 state and returns the next output word.
std::uint64_t splitmix64_next(std::uint64_t& state);

/// xoshiro256++ generator with explicit, portable output functions.
class Rng {
public:
  /// Expands `seed` into the 256-bit state via splitmix64.
  explicit Rng(std::uint64_t seed);

  std::uint64_t next_u64();

  /// Uniform double in [0, 1) with 53-bit resolution.
  double uniform();

  /// Standard normal variate. Each call consumes exactly two uniforms
  /// and returns one variate (no cached spare), keeping the draw count
  /// per event fixed regardless of call history.
  double normal();

  double normal(double mean, double stddev);

private:
  std::uint64_t s_[4];
};

/// Generator for substream `index` of a master seed. Distinct indices give
/// streams with independent, well-mixed states; the mapping is stable so
/// run `i` of an ensemble reproduces bit-for-bit under any thread count.
Rng substream(std::uint64_t master_seed, std::uint64_t index);

}  // namespace qtel
