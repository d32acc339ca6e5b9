#pragma once

#include <cstdint>
#include <vector>

#include "polyident/coloring.hpp"
#include "polyident/permutation.hpp"

namespace polyident {

/// Ordered sequence of disjoint, non-empty node cells covering {0..m-1}.
/// Members of a cell are kept in ascending order.
struct OrderedPartition {
  std::vector<std::vector<int>> cells;

  static OrderedPartition unit(std::size_t m);
  /// One cell per node color, cells ordered by color id.
  static OrderedPartition by_node_color(const ColoredGraph& g);

  bool is_discrete() const;
  std::size_t node_count() const;
  std::vector<std::size_t> cell_sizes() const;
  /// Throws Error(InvalidConfig) unless the cells partition {0..m-1}.
  void check(std::size_t m) const;

  friend bool operator==(const OrderedPartition&, const OrderedPartition&) = default;
};

/// Splits `cell_index` into {node} followed by the rest.
OrderedPartition individualize(const OrderedPartition& p, std::size_t cell_index, int node);

/// Equitable refinement. A node's signature is its node color plus the
/// sorted multiset of (edge color, cell index) over every other node; each
/// cell splits into runs of equal signature, ordered by signature, until
/// nothing splits. Label-invariant, so it commutes with automorphisms.
OrderedPartition refine_partition(const ColoredGraph& g, const OrderedPartition& p);

struct GeneratorSet {
  std::size_t m = 0;
  std::vector<Permutation> generators;
};

struct SearchOptions {
  std::uint64_t node_budget = 1'000'000;
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint64_t leaves = 0;
  std::size_t first_path_depth = 0;
};

/// Individualization-refinement search. The generators it returns generate
/// Aut(g) exactly, each one merged orbits of the group found before it (so
/// there are at most m-1), and the output is deterministic. Generators are
/// listed by search-tree level, root level first.
/// Throws Error(SearchBudgetExceeded) past `node_budget` tree nodes.
GeneratorSet automorphism_generators(const ColoredGraph& g, const SearchOptions& options = {},
                                     SearchStats* stats = nullptr);

/// Every color-preserving permutation, lexicographically sorted.
/// Throws Error(TooLarge) when g.m > cap.
std::vector<Permutation> brute_force_automorphisms(const ColoredGraph& g, std::size_t cap = 10);
/// OpenMP version of the above; identical output.
std::vector<Permutation> brute_force_automorphisms_parallel(const ColoredGraph& g, std::size_t cap = 10);

}  // namespace polyident
