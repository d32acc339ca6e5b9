#pragma once

#include <cstddef>
#include <vector>

#include "polyident/matrix.hpp"

namespace polyident {

/// { x | ineq_a x <= ineq_b, eq_a x == eq_b }. Either block may be empty
/// (zero rows) but both must have `num_vars` columns when non-empty.
struct LinearSystem {
  std::size_t num_vars = 0;
  Mat ineq_a;
  std::vector<Rational> ineq_b;
  Mat eq_a;
  std::vector<Rational> eq_b;
};

struct FmOptions {
  // Guard against the doubly exponential worst case.
  std::size_t max_rows = 500000;
};

struct FmStats {
  std::size_t eliminated = 0;
  std::size_t peak_rows = 0;
  std::size_t chernikov_dropped = 0;
};

/// Exact feasibility test. Equalities are substituted out by Gauss-Jordan
/// first; the remaining inequalities go through Fourier-Motzkin elimination
/// with duplicate-direction merging and Chernikov's history rule.
/// Throws Error(TooLarge) if an intermediate system exceeds `max_rows`.
bool fm_feasible(const LinearSystem& system, const FmOptions& options = {}, FmStats* stats = nullptr);

}  // namespace polyident
