#include "polyident/matrix.hpp"

#include <sstream>
#include <utility>

#include "polyident/error.hpp"

namespace polyident {

Mat::Mat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

Mat::Mat(std::size_t rows, std::size_t cols, std::vector<Rational> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "entry count does not match shape");
  }
}

Mat::Mat(std::initializer_list<std::initializer_list<Rational>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

Mat Mat::identity(std::size_t n) {
  Mat out(n, n);
  for (std::size_t i = 0; i < n; ++i) out(i, i) = 1;
  return out;
}

std::vector<Rational> Mat::column(std::size_t c) const {
  std::vector<Rational> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Mat Mat::transpose() const {
  Mat out(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  return out;
}

Mat Mat::select_columns(std::span<const int> cols) const {
  Mat out(rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) out(r, j) = (*this)(r, cols[j]);
  return out;
}

Mat Mat::permute_columns(const Permutation& perm) const {
  if (perm.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "permutation degree != column count");
  return select_columns(perm.image());
}

Mat Mat::scaled(const Rational& factor) const {
  Mat out = *this;
  for (auto& x : out.data_) x *= factor;
  return out;
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t r = 0; r < rows_; ++r) {
    os << (r ? ", [" : "[");
    for (std::size_t c = 0; c < cols_; ++c) os << (c ? ", " : "") << (*this)(r, c).get_str();
    os << ']';
  }
  os << ']';
  return os.str();
}

Mat mat_mul(const Mat& a, const Mat& b) {
  if (a.cols() != b.rows()) {
    throw Error(ErrorCode::DimensionMismatch, "mat_mul: " + std::to_string(a.rows()) + "x" +
                                                  std::to_string(a.cols()) + " times " +
                                                  std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Mat out(a.rows(), b.cols());
  Rational acc;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      acc = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) {
        if (sgn(a(i, k)) == 0) continue;
        acc += a(i, k) * b(k, j);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

Mat invert(const Mat& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "invert");
  const std::size_t n = a.rows();
  Mat work = a;
  Mat inv = Mat::identity(n);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && sgn(work(pivot, col)) == 0) ++pivot;
    if (pivot == n) throw Error(ErrorCode::Singular, "zero pivot column " + std::to_string(col));
    if (pivot != col) {
      for (std::size_t c = 0; c < n; ++c) {
        std::swap(work(pivot, c), work(col, c));
        std::swap(inv(pivot, c), inv(col, c));
      }
    }
    const Rational scale = 1 / work(col, col);
    for (std::size_t c = 0; c < n; ++c) {
      work(col, c) *= scale;
      inv(col, c) *= scale;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || sgn(work(r, col)) == 0) continue;
      const Rational factor = work(r, col);
      for (std::size_t c = 0; c < n; ++c) {
        work(r, c) -= factor * work(col, c);
        inv(r, c) -= factor * inv(col, c);
      }
    }
  }
  return inv;
}

namespace {

// Bareiss elimination in place. Returns the rank; `det_sign` tracks row swaps.
// After the call, for a square full-rank input, work(n-1, n-1) is the determinant
// up to that sign.
std::size_t bareiss(Mat& work, int& det_sign) {
  const std::size_t rows = work.rows();
  const std::size_t cols = work.cols();
  det_sign = 1;
  Rational prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t pivot = r;
    while (pivot < rows && sgn(work(pivot, c)) == 0) ++pivot;
    if (pivot == rows) continue;
    if (pivot != r) {
      for (std::size_t k = 0; k < cols; ++k) std::swap(work(pivot, k), work(r, k));
      det_sign = -det_sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        work(i, k) = (work(r, c) * work(i, k) - work(i, c) * work(r, k)) / prev;
      }
      work(i, c) = 0;
    }
    prev = work(r, c);
    ++r;
  }
  return r;
}

}  // namespace

std::size_t rank(const Mat& a) {
  Mat work = a;
  int det_sign = 1;
  return bareiss(work, det_sign);
}

Rational determinant(const Mat& a) {
  if (!a.is_square()) throw Error(ErrorCode::NotSquare, "determinant");
  const std::size_t n = a.rows();
  if (n == 0) return 1;
  Mat work = a;
  int det_sign = 1;
  if (bareiss(work, det_sign) < n) return 0;
  return det_sign * work(n - 1, n - 1);
}

Mat right_pseudoinverse(const Mat& v) {
  const Mat vt = v.transpose();
  try {
    return vt * invert(v * vt);
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Singular) throw;
    throw Error(ErrorCode::RankDeficient, "matrix is not of full row rank");
  }
}

std::vector<int> independent_columns(const Mat& a) {
  // Incremental echelon basis over the columns seen so far.
  std::vector<std::vector<Rational>> basis;
  std::vector<std::size_t> pivots;
  std::vector<int> chosen;
  for (std::size_t c = 0; c < a.cols() && chosen.size() < a.rows(); ++c) {
    std::vector<Rational> v = a.column(c);
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const std::size_t p = pivots[b];
      if (sgn(v[p]) == 0) continue;
      const Rational f = v[p] / basis[b][p];
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * basis[b][i];
    }
    std::size_t p = 0;
    while (p < v.size() && sgn(v[p]) == 0) ++p;
    if (p == v.size()) continue;
    basis.push_back(std::move(v));
    pivots.push_back(p);
    chosen.push_back(static_cast<int>(c));
  }
  return chosen;
}

bool is_signed_permutation(const Mat& g) {
  if (!g.is_square()) return false;
  const std::size_t n = g.rows();
  std::vector<int> col_count(n, 0);
  for (std::size_t r = 0; r < n; ++r) {
    int row_count = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const Rational& x = g(r, c);
      if (sgn(x) == 0) continue;
      if (x != 1 && x != -1) return false;
      ++row_count;
      ++col_count[c];
    }
    if (row_count != 1) return false;
  }
  for (int k : col_count) {
    if (k != 1) return false;
  }
  return true;
}

SignedPermutationParts decompose_signed_permutation(const Mat& g) {
  if (!is_signed_permutation(g)) {
    throw Error(ErrorCode::NotSignedPermutation, g.to_string());
  }
  const std::size_t n = g.rows();
  std::vector<int> image(n);
  std::vector<int> signs(n);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t r = 0; r < n; ++r) {
      if (sgn(g(r, c)) != 0) {
        image[c] = static_cast<int>(r);
        signs[r] = sgn(g(r, c));
      }
    }
  }
  return {std::move(signs), Permutation(std::move(image))};
}

Mat compose_signed_permutation(const SignedPermutationParts& parts) {
  Mat out = parts.perm.to_matrix();
  for (std::size_t r = 0; r < out.rows(); ++r)
    for (std::size_t c = 0; c < out.cols(); ++c) out(r, c) *= parts.signs[r];
  return out;
}

}  // namespace polyident
