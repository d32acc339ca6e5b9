#pragma once

// Independent reference computations for the tests. Nothing here calls the
// library's linear algebra, coloring or search code; matrices are plain
// nested vectors of mpq_class.

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <gmpxx.h>

#include "polyident/polytope.hpp"

namespace oracle {

using Q = mpq_class;
using Dense = std::vector<std::vector<Q>>;

Dense from_mat(const polyident::Mat& m);
polyident::Mat to_mat(const Dense& d);

Dense multiply(const Dense& a, const Dense& b);
Dense transpose(const Dense& a);

/// Gauss-Jordan inverse with partial pivoting on the largest |entry|;
/// nullopt when singular.
std::optional<Dense> inverse(const Dense& a);

/// Orthogonal projector onto the row space of v, via Gram-Schmidt.
Dense row_space_projector(const Dense& v);

/// The G with G V = V Pi, found by solving on a column basis and checking
/// the remaining columns.
std::optional<Dense> linear_map(const Dense& v, const std::vector<int>& image);

bool is_signed_permutation(const Dense& g);
Q determinant(const Dense& a);

/// All permutations with C[p(i)][p(j)] == C[i][j], in lexicographic order.
std::vector<std::vector<int>> matrix_automorphisms(const Dense& c);

struct Verdict {
  bool identifiable = true;
  std::size_t solutions = 0;
};
/// Identifiability straight from the definition: every permutation that
/// admits a linear map must give a signed permutation.
Verdict identifiability(const Dense& v);

/// Closure of a generating set under composition, as a sorted set.
std::set<std::vector<int>> closure(const std::vector<std::vector<int>>& gens, std::size_t m);

/// Vertices of { x | a x <= b } by solving every n-subset of rows.
std::vector<std::vector<Q>> vertices(const Dense& a, const std::vector<Q>& b);

}  // namespace oracle
