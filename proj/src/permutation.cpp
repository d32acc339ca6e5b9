#include "polyident/permutation.hpp"

#include <numeric>
#include <sstream>

#include "polyident/error.hpp"
#include "polyident/matrix.hpp"

namespace polyident {

Permutation::Permutation(std::vector<int> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (int x : image_) {
    if (x < 0 || static_cast<std::size_t>(x) >= image_.size() || seen[x]) {
      throw Error(ErrorCode::InvalidConfig, "image array is not a bijection");
    }
    seen[x] = 1;
  }
}

Permutation Permutation::identity(std::size_t m) {
  std::vector<int> image(m);
  std::iota(image.begin(), image.end(), 0);
  return Permutation(std::move(image), Unchecked{});
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(image_.size());
  for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = static_cast<int>(i);
  return Permutation(std::move(inv), Unchecked{});
}

bool Permutation::is_identity() const noexcept { return first_moved() < 0; }

int Permutation::first_moved() const noexcept {
  for (std::size_t i = 0; i < image_.size(); ++i) {
    if (image_[i] != static_cast<int>(i)) return static_cast<int>(i);
  }
  return -1;
}

Mat Permutation::to_matrix() const {
  Mat out(size(), size());
  for (std::size_t j = 0; j < size(); ++j) out(image_[j], j) = 1;
  return out;
}

std::string Permutation::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < image_.size(); ++i) os << (i ? "," : "") << image_[i];
  os << ']';
  return os.str();
}

Permutation operator*(const Permutation& lhs, const Permutation& rhs) {
  if (lhs.size() != rhs.size()) {
    throw Error(ErrorCode::DimensionMismatch, "composing permutations of different degree");
  }
  std::vector<int> out(rhs.size());
  for (std::size_t i = 0; i < rhs.size(); ++i) out[i] = lhs.image_[rhs.image_[i]];
  return Permutation(std::move(out), Permutation::Unchecked{});
}

}  // namespace polyident
