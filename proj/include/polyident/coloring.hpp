#pragma once

#include <cstddef>
#include <vector>

#include "polyident/permutation.hpp"
#include "polyident/polytope.hpp"

namespace polyident {

/// C = V^T (V V^T)^{-1} V, the orthogonal projector onto the row space of V.
struct ColoringMatrix {
  Mat c;
};

/// Throws Error(RankDeficient) unless rank(V) = dim.
ColoringMatrix coloring_matrix(const Polytope& p);

using ColorId = int;

/// Edge-colored complete graph on the vertices. Colors are indices into
/// `palette`, the sorted distinct entries of C. The diagonal of
/// `edge_color` repeats the node color, so a permutation is an automorphism
/// iff edge_color(pi(i), pi(j)) == edge_color(i, j) for all i, j.
struct ColoredGraph {
  std::size_t m = 0;
  std::vector<ColorId> node_color;
  std::vector<ColorId> edge_color;  // m x m, row-major, symmetric
  std::vector<Rational> palette;

  ColorId edge(std::size_t i, std::size_t j) const { return edge_color[i * m + j]; }
  std::size_t edge_color_count() const;
};

ColoredGraph build_colored_graph(const ColoringMatrix& c);

/// Builds a graph directly from color tables; used for tests and fixtures.
ColoredGraph make_colored_graph(std::vector<ColorId> node_color, std::vector<std::vector<ColorId>> edges);

bool preserves_colors(const ColoredGraph& g, const Permutation& perm);

/// Pi^T C Pi == C, evaluated on the matrix itself.
bool preserves_matrix(const Mat& c, const Permutation& perm);

}  // namespace polyident
