#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "polyident/matrix.hpp"

namespace polyident {

/// V-representation: the columns of `vertices` (n x m) are the vertices.
struct Polytope {
  Mat vertices;
  std::optional<std::string> label;

  Polytope() = default;
  explicit Polytope(Mat v, std::optional<std::string> label = std::nullopt)
      : vertices(std::move(v)), label(std::move(label)) {}

  std::size_t dim() const noexcept { return vertices.rows(); }
  std::size_t vertex_count() const noexcept { return vertices.cols(); }
  std::vector<Rational> vertex(std::size_t j) const { return vertices.column(j); }
};

/// H-representation { x | a x <= b }.
struct HRepresentation {
  Mat a;
  std::vector<Rational> b;

  std::size_t dim() const noexcept { return a.cols(); }
  std::size_t facet_count() const noexcept { return a.rows(); }
};

enum class ValidationIssueKind {
  RankDeficient,
  TooFewVertices,
  DuplicateVertex,
  NotExtreme,
};

const char* to_string(ValidationIssueKind kind);

struct ValidationIssue {
  ValidationIssueKind kind;
  std::vector<int> columns;  // offending vertex indices, when applicable
  std::string message;
};

struct ValidationResult {
  std::vector<ValidationIssue> issues;

  bool valid() const noexcept { return issues.empty(); }
  bool has(ValidationIssueKind kind) const;
  std::string summary() const;
};

/// Checks rank(V) = n, n <= m and pairwise distinct columns. With `strict`
/// every column must also be an extreme point of conv(columns).
ValidationResult validate_polytope(const Polytope& p, bool strict = false);

/// True iff column `j` lies in the convex hull of the other columns.
bool is_convex_combination_of_others(const Mat& v, std::size_t j);

/// True iff the recession cone { d | a d <= 0 } is {0}.
bool check_bounded(const HRepresentation& h);

/// Throws Error(DimensionMismatch) on inconsistent shapes.
void check_shape(const HRepresentation& h);

}  // namespace polyident
