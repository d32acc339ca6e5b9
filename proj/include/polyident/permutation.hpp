#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <vector>

namespace polyident {

class Mat;

/// Bijection on {0..m-1} stored as its image array. Composition follows
/// function notation: (p * q)(i) = p(q(i)), which matches the product of
/// the corresponding permutation matrices (matrix column j = e_{p(j)}).
class Permutation {
 public:
  Permutation() = default;
  /// Throws Error(InvalidConfig) if `image` is not a bijection.
  explicit Permutation(std::vector<int> image);

  static Permutation identity(std::size_t m);

  std::size_t size() const noexcept { return image_.size(); }
  int operator[](std::size_t i) const { return image_[i]; }
  int operator()(int i) const { return image_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& image() const noexcept { return image_; }

  Permutation inverse() const;
  bool is_identity() const noexcept;
  /// Smallest point moved, or -1 for the identity.
  int first_moved() const noexcept;

  /// m x m 0/1 matrix with entry (image[j], j) = 1.
  Mat to_matrix() const;

  std::string to_string() const;

  friend Permutation operator*(const Permutation& lhs, const Permutation& rhs);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  struct Unchecked {};
  Permutation(std::vector<int> image, Unchecked) : image_(std::move(image)) {}

  std::vector<int> image_;
};

}  // namespace polyident
