#include "corpus.hpp"

#include "polyident/generator.hpp"
#include "polyident/vertex_enumeration.hpp"

namespace corpus {

using namespace polyident;

std::vector<Polytope> random_polytopes(std::size_t count, std::uint64_t seed, const Options& options) {
  std::vector<Polytope> out;
  for (std::uint64_t i = 0; out.size() < count; ++i) {
    Rng rng(mix_seed(seed, i));
    const auto n = static_cast<std::size_t>(
        rng.between(static_cast<std::int64_t>(options.min_dim), static_cast<std::int64_t>(options.max_dim)));
    const auto config = sample_generator_config(n, rng);
    auto p = enumerate_vertices(random_polytope_hrep(config));
    if (p.vertex_count() > options.max_vertices || !validate_polytope(p).valid()) continue;
    out.push_back(std::move(p));
  }
  return out;
}

Polytope l1_ball(std::size_t n) {
  Mat v(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    v(i, i) = 1;
    v(i, i + n) = -1;
  }
  return Polytope(std::move(v));
}

Polytope cube(std::size_t n) {
  const std::size_t m = std::size_t{1} << n;
  Mat v(n, m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t i = 0; i < n; ++i) v(i, j) = (j >> (n - 1 - i)) & 1 ? -1 : 1;
  return Polytope(std::move(v));
}

Polytope triangle() { return Polytope(Mat{{1, 0, -1}, {0, 1, -1}}); }

}  // namespace corpus
