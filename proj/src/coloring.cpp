#include "polyident/coloring.hpp"

#include <algorithm>
#include <set>

#include "polyident/error.hpp"

namespace polyident {

ColoringMatrix coloring_matrix(const Polytope& p) {
  const Mat& v = p.vertices;
  const Mat vt = v.transpose();
  Mat q_inv;
  try {
    q_inv = invert(v * vt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    throw Error(ErrorCode::RankDeficient, "vertex matrix does not have full row rank");
  }
  return {vt * q_inv * v};
}

std::size_t ColoredGraph::edge_color_count() const {
  std::set<ColorId> seen;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) seen.insert(edge(i, j));
  return seen.size();
}

ColoredGraph build_colored_graph(const ColoringMatrix& cm) {
  const Mat& c = cm.c;
  if (!c.is_square()) throw Error(ErrorCode::NotSquare, "coloring matrix");
  ColoredGraph g;
  g.m = c.rows();
  g.palette = c.entries();
  std::sort(g.palette.begin(), g.palette.end());
  g.palette.erase(std::unique(g.palette.begin(), g.palette.end()), g.palette.end());

  auto id_of = [&](const Rational& x) {
    return static_cast<ColorId>(std::lower_bound(g.palette.begin(), g.palette.end(), x) - g.palette.begin());
  };
  g.node_color.resize(g.m);
  g.edge_color.resize(g.m * g.m);
  for (std::size_t i = 0; i < g.m; ++i) {
    g.node_color[i] = id_of(c(i, i));
    for (std::size_t j = 0; j < g.m; ++j) g.edge_color[i * g.m + j] = id_of(c(i, j));
  }
  return g;
}

ColoredGraph make_colored_graph(std::vector<ColorId> node_color, std::vector<std::vector<ColorId>> edges) {
  ColoredGraph g;
  g.m = node_color.size();
  g.node_color = std::move(node_color);
  g.edge_color.resize(g.m * g.m);
  ColorId top = 0;
  for (std::size_t i = 0; i < g.m; ++i) {
    if (edges.size() != g.m || edges[i].size() != g.m) {
      throw Error(ErrorCode::DimensionMismatch, "edge color table must be m x m");
    }
    for (std::size_t j = 0; j < g.m; ++j) {
      if (i != j && edges[i][j] != edges[j][i]) throw Error(ErrorCode::InvalidConfig, "edge colors not symmetric");
      g.edge_color[i * g.m + j] = i == j ? g.node_color[i] : edges[i][j];
      top = std::max(top, g.edge_color[i * g.m + j]);
    }
  }
  for (ColorId k = 0; k <= top; ++k) g.palette.push_back(k);
  return g;
}

bool preserves_colors(const ColoredGraph& g, const Permutation& perm) {
  if (perm.size() != g.m) throw Error(ErrorCode::DimensionMismatch, "permutation degree != node count");
  for (std::size_t i = 0; i < g.m; ++i) {
    const auto pi = static_cast<std::size_t>(perm[i]);
    if (g.node_color[pi] != g.node_color[i]) return false;
  }
  for (std::size_t i = 0; i < g.m; ++i) {
    const auto pi = static_cast<std::size_t>(perm[i]);
    for (std::size_t j = i + 1; j < g.m; ++j) {
      if (g.edge(pi, static_cast<std::size_t>(perm[j])) != g.edge(i, j)) return false;
    }
  }
  return true;
}

bool preserves_matrix(const Mat& c, const Permutation& perm) {
  if (perm.size() != c.rows() || !c.is_square()) throw Error(ErrorCode::DimensionMismatch, "preserves_matrix");
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      if (c(perm[i], perm[j]) != c(i, j)) return false;
  return true;
}

}  // namespace polyident
