#include "nclosed/permutation.hpp"

#include <algorithm>
#include <numeric>

#include "nclosed/error.hpp"

namespace nclosed {

Permutation Permutation::identity(std::size_t degree) {
  if (degree == 0 || degree > kMaxDegree)
    throw Error(ErrorKind::InvalidArgument,
                "permutation degree " + std::to_string(degree) + " out of range");
  std::vector<Point> images(degree);
  std::iota(images.begin(), images.end(), Point{0});
  return Permutation(std::move(images));
}

Permutation Permutation::from_images(std::vector<Point> images) {
  if (images.empty() || images.size() > kMaxDegree)
    throw Error(ErrorKind::InvalidArgument, "permutation degree out of range");
  std::vector<bool> seen(images.size(), false);
  for (Point p : images) {
    if (p >= images.size() || seen[p])
      throw Error(ErrorKind::InvalidArgument, "image list is not a bijection");
    seen[p] = true;
  }
  return Permutation(std::move(images));
}

bool Permutation::is_identity() const noexcept {
  for (std::size_t i = 0; i < images_.size(); ++i)
    if (images_[i] != i) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i)
    inv[images_[i]] = static_cast<Point>(i);
  return Permutation(std::move(inv));
}

std::string Permutation::cycle_string() const {
  std::string out;
  std::vector<bool> done(images_.size(), false);
  for (std::size_t start = 0; start < images_.size(); ++start) {
    if (done[start] || images_[start] == start) continue;
    out += '(';
    std::size_t p = start;
    bool first = true;
    while (!done[p]) {
      done[p] = true;
      if (!first) out += ' ';
      out += std::to_string(p + 1);
      first = false;
      p = images_[p];
    }
    out += ')';
  }
  return out.empty() ? "e" : out;
}

Permutation operator*(const Permutation& x, const Permutation& y) {
  if (x.degree() != y.degree())
    throw Error(ErrorKind::MixedStructures, "permutation degrees differ");
  std::vector<Permutation::Point> images(x.degree());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = x.images_[y.images_[i]];
  return Permutation(std::move(images));
}

std::vector<Permutation> all_permutations(std::size_t degree) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(degree);
  std::vector<Permutation::Point> images(p.images().begin(), p.images().end());
  do {
    out.push_back(Permutation::from_images(images));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

}  // namespace nclosed
