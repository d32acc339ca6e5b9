#include "polyident/generator.hpp"

#include <algorithm>
#include <numeric>

#include "polyident/error.hpp"

namespace polyident {

std::uint64_t Rng::below(std::uint64_t bound) {
  if (bound == 0) throw Error(ErrorCode::InvalidConfig, "Rng::below(0)");
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  while (true) {
    const std::uint64_t r = next();
    if (r >= threshold) return r % bound;
  }
}

std::int64_t Rng::between(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) throw Error(ErrorCode::InvalidConfig, "empty range");
  return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo) + 1));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void validate_config(const GeneratorConfig& config) {
  const std::size_t n = config.dim;
  if (n < 2) throw Error(ErrorCode::InvalidConfig, "dimension must be at least 2");
  if (config.sign_pattern.size() != n) throw Error(ErrorCode::InvalidConfig, "sign pattern length != dim");
  for (const auto& c : config.constraints) {
    if (c.indices.size() < 2 || c.indices.size() > n) {
      throw Error(ErrorCode::InvalidConfig, "constraint length must lie in {2..n}");
    }
    std::vector<int> sorted = c.indices;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
      throw Error(ErrorCode::InvalidConfig, "repeated index in constraint");
    }
    if (sorted.front() < 0 || static_cast<std::size_t>(sorted.back()) >= n) {
      throw Error(ErrorCode::InvalidConfig, "constraint index out of range");
    }
  }
}

GeneratorConfig sample_generator_config(std::size_t n, Rng& rng) {
  if (n < 2) throw Error(ErrorCode::InvalidConfig, "dimension must be at least 2");
  GeneratorConfig config;
  config.dim = n;
  config.sign_pattern.resize(n);
  for (auto& s : config.sign_pattern) s = rng.coin() ? Sign::Signed : Sign::NonNegative;

  const auto hi = static_cast<std::int64_t>(n);
  const auto q = rng.between(2, hi);
  std::vector<int> pool(n);
  for (std::int64_t i = 0; i < q; ++i) {
    const auto len = static_cast<std::size_t>(rng.between(2, hi));
    // Partial Fisher-Yates: the first `len` slots become a uniform subset.
    std::iota(pool.begin(), pool.end(), 0);
    for (std::size_t k = 0; k < len; ++k) {
      const auto pick = k + static_cast<std::size_t>(rng.below(n - k));
      std::swap(pool[k], pool[pick]);
    }
    SparsityConstraint c{std::vector<int>(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(len))};
    std::sort(c.indices.begin(), c.indices.end());
    config.constraints.push_back(std::move(c));
  }
  return config;
}

GeneratorConfig sample_generator_config(std::size_t n, std::uint64_t seed) {
  Rng rng(seed);
  auto config = sample_generator_config(n, rng);
  config.seed = seed;
  return config;
}

HRepresentation random_polytope_hrep(const GeneratorConfig& config) {
  validate_config(config);
  const std::size_t n = config.dim;
  std::size_t f = 2 * n;
  for (const auto& c : config.constraints) f += std::size_t{1} << c.indices.size();

  HRepresentation h{Mat(f, n), std::vector<Rational>(f)};
  std::size_t row = 0;
  for (std::size_t i = 0; i < n; ++i) {
    h.a(row, i) = 1;
    h.b[row++] = 1;
    h.a(row, i) = -1;
    h.b[row++] = config.sign_pattern[i] == Sign::Signed ? 1 : 0;
  }
  for (const auto& c : config.constraints) {
    const std::size_t l = c.indices.size();
    for (std::size_t pattern = 0; pattern < (std::size_t{1} << l); ++pattern) {
      for (std::size_t k = 0; k < l; ++k) {
        h.a(row, static_cast<std::size_t>(c.indices[k])) = (pattern >> (l - 1 - k)) & 1 ? -1 : 1;
      }
      h.b[row++] = 1;
    }
  }
  return h;
}

}  // namespace polyident
