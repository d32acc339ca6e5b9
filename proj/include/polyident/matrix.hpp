#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "polyident/permutation.hpp"
#include "polyident/rational.hpp"

namespace polyident {

/// Dense row-major matrix of exact rationals.
class Mat {
 public:
  Mat() = default;
  Mat(std::size_t rows, std::size_t cols);
  Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries);
  Mat(std::initializer_list<std::initializer_list<Rational>> rows);

  static Mat identity(std::size_t n);
  static Mat zero(std::size_t rows, std::size_t cols) { return Mat(rows, cols); }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<const Rational> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }
  std::vector<Rational> column(std::size_t c) const;
  const std::vector<Rational>& entries() const noexcept { return data_; }

  Mat transpose() const;
  /// Column j of the result is column `cols[j]` of this matrix.
  Mat select_columns(std::span<const int> cols) const;
  /// A * P for the permutation matrix of `perm`: column j becomes column perm(j).
  Mat permute_columns(const Permutation& perm) const;
  Mat scaled(const Rational& factor) const;

  std::string to_string() const;

  friend bool operator==(const Mat&, const Mat&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Mat mat_mul(const Mat& a, const Mat& b);
inline Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }

/// Gauss-Jordan with the first nonzero entry of each column as pivot.
Mat invert(const Mat& a);

/// Fraction-free (Bareiss) elimination.
std::size_t rank(const Mat& a);
Rational determinant(const Mat& a);

/// V^T (V V^T)^{-1}; requires full row rank, otherwise Error(RankDeficient).
Mat right_pseudoinverse(const Mat& v);

/// Indices of the first linearly independent columns found scanning left to
/// right; the result has rank(a) entries.
std::vector<int> independent_columns(const Mat& a);

bool is_signed_permutation(const Mat& g);

struct SignedPermutationParts {
  std::vector<int> signs;  // diagonal of D, each +1 or -1
  Permutation perm;        // the permutation matrix factor
};

/// Factor g = D * P. Throws Error(NotSignedPermutation) when impossible.
SignedPermutationParts decompose_signed_permutation(const Mat& g);
Mat compose_signed_permutation(const SignedPermutationParts& parts);

}  // namespace polyident
