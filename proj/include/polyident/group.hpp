#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "polyident/automorphism.hpp"
#include "polyident/permutation.hpp"
#include "polyident/rational.hpp"

namespace polyident {

/// Base and strong generating set built with deterministic Schreier-Sims.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t m, std::span<const Permutation> generators);

  std::size_t degree() const noexcept { return m_; }
  const std::vector<int>& base() const noexcept { return base_; }
  std::size_t depth() const noexcept { return levels_.size(); }

  /// Points of the basic orbit at `level`, ascending.
  std::vector<int> orbit(std::size_t level) const;
  /// Coset representative u with u(base[level]) = point.
  const Permutation& transversal(std::size_t level, int point) const;

  bool contains(const Permutation& g) const;
  Integer order() const;

 private:
  struct Level {
    std::vector<std::optional<Permutation>> reps;  // indexed by point
  };

  // Residue of g after stripping through levels from `start`, with the level
  // at which stripping stopped.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t start) const;
  void rebuild_levels();
  std::vector<const Permutation*> level_generators(std::size_t level) const;

  std::size_t m_;
  std::vector<int> base_;
  std::vector<Permutation> strong_;
  std::vector<Level> levels_;
};

/// Reduced generating set of the same group with at most m-1 elements
/// (m >= 1). Input generators are kept greedily when they enlarge the group;
/// should that exceed m-1, the set is rebuilt from transversal elements
/// chosen bottom-up so that each one merges two orbits.
GeneratorSet sift_generators(const GeneratorSet& gens);

/// Breadth-first closure from the identity, returned sorted.
/// Throws Error(CapExceeded) once more than `cap` elements are found.
std::vector<Permutation> expand_group(const GeneratorSet& gens, std::size_t cap);

}  // namespace polyident
