#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace nclosed {

/// Permutation of the points {1, ..., degree}, stored 0-based as the image
/// list. Products compose right-to-left: (x * y)(p) = x(y(p)).
class Permutation {
 public:
  using Point = std::uint8_t;
  static constexpr std::size_t kMaxDegree = 16;

  static Permutation identity(std::size_t degree);
  /// Throws InvalidArgument unless `images` is a bijection of {0, ..., n-1}.
  static Permutation from_images(std::vector<Point> images);

  std::size_t degree() const noexcept { return images_.size(); }
  Point operator()(Point p) const { return images_[p]; }
  std::span<const Point> images() const noexcept { return images_; }
  bool is_identity() const noexcept;
  Permutation inverse() const;

  /// Disjoint-cycle form with 1-based points, each cycle starting at its
  /// least point, cycles ordered by that point; "e" for the identity.
  std::string cycle_string() const;

  friend Permutation operator*(const Permutation& x, const Permutation& y);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;
  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  explicit Permutation(std::vector<Point> images) : images_(std::move(images)) {}
  std::vector<Point> images_;
};

/// All permutations of the given degree in lexicographic one-line order.
std::vector<Permutation> all_permutations(std::size_t degree);

}  // namespace nclosed
