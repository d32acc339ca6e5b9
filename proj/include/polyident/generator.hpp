#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polyident/polytope.hpp"

namespace polyident {

/// Pseudorandom source used everywhere a seed appears: std::mt19937_64,
/// whose output sequence is fixed by the C++ standard. Bounded draws use
/// rejection sampling (never std::uniform_int_distribution, whose output is
/// implementation-defined) so streams are identical across platforms.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, bound), bound > 0.
  std::uint64_t below(std::uint64_t bound);
  /// Uniform on [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi);
  bool coin() { return (next() >> 63) != 0; }

 private:
  std::mt19937_64 engine_;
};

/// SplitMix64 finalizer; derives independent per-task seeds from a base seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

enum class Sign { NonNegative, Signed };  // s_i in [0, 1] vs s_i in [-1, 1]

/// || (s_j)_{j in indices} ||_1 <= 1
struct SparsityConstraint {
  std::vector<int> indices;  // sorted, distinct
};

struct GeneratorConfig {
  std::size_t dim = 0;
  std::uint64_t seed = 0;
  std::vector<Sign> sign_pattern;
  std::vector<SparsityConstraint> constraints;
};

/// Throws Error(InvalidConfig) when the config breaks its invariants.
void validate_config(const GeneratorConfig& config);

/// Each coordinate signed with probability 1/2; q uniform on {2..n}; each
/// length uniform on {2..n}; each index set a uniform subset of that size.
/// `rng` is advanced; config.seed is left for the caller to record.
GeneratorConfig sample_generator_config(std::size_t n, Rng& rng);

/// Convenience: seeds an Rng with `seed` and records it in the config.
GeneratorConfig sample_generator_config(std::size_t n, std::uint64_t seed);

/// Coordinate bounds (upper then lower, per coordinate) followed by the 2^l
/// sign-pattern rows of every l1 constraint, patterns in binary order.
HRepresentation random_polytope_hrep(const GeneratorConfig& config);

}  // namespace polyident
