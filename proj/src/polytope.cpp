#include "polyident/polytope.hpp"

#include <algorithm>
#include <sstream>

#include "polyident/error.hpp"
#include "polyident/fourier_motzkin.hpp"

namespace polyident {

const char* to_string(ValidationIssueKind kind) {
  switch (kind) {
    case ValidationIssueKind::RankDeficient: return "RankDeficient";
    case ValidationIssueKind::TooFewVertices: return "TooFewVertices";
    case ValidationIssueKind::DuplicateVertex: return "DuplicateVertex";
    case ValidationIssueKind::NotExtreme: return "NotExtreme";
  }
  return "Unknown";
}

bool ValidationResult::has(ValidationIssueKind kind) const {
  return std::any_of(issues.begin(), issues.end(), [kind](const auto& i) { return i.kind == kind; });
}

std::string ValidationResult::summary() const {
  if (issues.empty()) return "valid";
  std::ostringstream os;
  for (std::size_t i = 0; i < issues.size(); ++i) {
    os << (i ? "; " : "") << to_string(issues[i].kind) << ": " << issues[i].message;
  }
  return os.str();
}

bool is_convex_combination_of_others(const Mat& v, std::size_t j) {
  const std::size_t n = v.rows();
  const std::size_t m = v.cols();
  // Unknowns: lambda_k for k != j. lambda >= 0, sum lambda = 1, V' lambda = v_j.
  LinearSystem sys;
  sys.num_vars = m - 1;
  sys.ineq_a = Mat(m - 1, m - 1);
  sys.ineq_b.assign(m - 1, Rational(0));
  for (std::size_t k = 0; k + 1 < m; ++k) sys.ineq_a(k, k) = -1;
  sys.eq_a = Mat(n + 1, m - 1);
  sys.eq_b.assign(n + 1, Rational(0));
  for (std::size_t k = 0, col = 0; k < m; ++k) {
    if (k == j) continue;
    for (std::size_t r = 0; r < n; ++r) sys.eq_a(r, col) = v(r, k);
    sys.eq_a(n, col) = 1;
    ++col;
  }
  for (std::size_t r = 0; r < n; ++r) sys.eq_b[r] = v(r, j);
  sys.eq_b[n] = 1;
  return fm_feasible(sys);
}

ValidationResult validate_polytope(const Polytope& p, bool strict) {
  ValidationResult result;
  const std::size_t n = p.dim();
  const std::size_t m = p.vertex_count();

  if (n > m) {
    result.issues.push_back({ValidationIssueKind::TooFewVertices, {},
                             "dimension " + std::to_string(n) + " exceeds vertex count " + std::to_string(m)});
  }
  if (const auto r = rank(p.vertices); r != n) {
    result.issues.push_back({ValidationIssueKind::RankDeficient, {},
                             "rank " + std::to_string(r) + " != dimension " + std::to_string(n)});
  }
  bool duplicates = false;
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a + 1; b < m; ++b) {
      bool same = true;
      for (std::size_t r = 0; r < n && same; ++r) same = p.vertices(r, a) == p.vertices(r, b);
      if (same) {
        duplicates = true;
        result.issues.push_back({ValidationIssueKind::DuplicateVertex,
                                 {static_cast<int>(a), static_cast<int>(b)},
                                 "columns " + std::to_string(a) + " and " + std::to_string(b) + " coincide"});
      }
    }
  }
  // Extremality is meaningless with repeated columns, so it is only checked
  // on an otherwise clean vertex set.
  if (strict && !duplicates && m >= 2) {
    for (std::size_t j = 0; j < m; ++j) {
      if (is_convex_combination_of_others(p.vertices, j)) {
        result.issues.push_back({ValidationIssueKind::NotExtreme, {static_cast<int>(j)},
                                 "column " + std::to_string(j) + " is a convex combination of the others"});
      }
    }
  }
  return result;
}

void check_shape(const HRepresentation& h) {
  if (h.a.rows() != h.b.size()) {
    throw Error(ErrorCode::DimensionMismatch, "A has " + std::to_string(h.a.rows()) + " rows but b has " +
                                                  std::to_string(h.b.size()) + " entries");
  }
}

bool check_bounded(const HRepresentation& h) {
  check_shape(h);
  const std::size_t n = h.dim();
  const std::size_t f = h.facet_count();
  if (n == 0) return true;
  // The cone is nontrivial iff some d with a d <= 0 has d_i = +-1 for some i.
  for (std::size_t i = 0; i < n; ++i) {
    for (int s : {1, -1}) {
      LinearSystem sys;
      sys.num_vars = n;
      sys.ineq_a = h.a;
      sys.ineq_b.assign(f, Rational(0));
      sys.eq_a = Mat(1, n);
      sys.eq_a(0, i) = 1;
      sys.eq_b = {Rational(s)};
      if (fm_feasible(sys)) return false;
    }
  }
  return true;
}

}  // namespace polyident
