#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "nclosed/group.hpp"

namespace nclosed {

/// Membership bitmap over the elements of one group or semigroup.
class GSubset {
 public:
  explicit GSubset(std::shared_ptr<const Magma> owner);
  /// Raw bitmap, one bit per element in 64-bit words.
  GSubset(std::shared_ptr<const Magma> owner, std::vector<std::uint64_t> words);
  explicit GSubset(const FiniteSemigroup& owner) : GSubset(owner.shared()) {}
  GSubset(const FiniteSemigroup& owner, std::initializer_list<Index> members);
  GSubset(const FiniteSemigroup& owner, std::span<const Index> members);

  static GSubset full(const FiniteSemigroup& owner);
  /// Subset whose membership bits are the low `order` bits of `mask`.
  static GSubset from_mask(const FiniteSemigroup& owner, std::uint64_t mask);

  const Magma& owner() const noexcept { return *owner_; }
  const std::shared_ptr<const Magma>& shared_owner() const noexcept { return owner_; }
  std::size_t universe() const noexcept { return owner_->order(); }

  bool contains(Index x) const noexcept { return (words_[x / 64] >> (x % 64)) & 1U; }
  void insert(Index x);
  void erase(Index x);
  void insert_all(const GSubset& other);

  std::size_t size() const noexcept;
  bool empty() const noexcept;
  std::optional<Index> least() const noexcept;
  /// Members in ascending index order.
  std::vector<Index> elements() const;
  std::vector<std::string> labels() const;
  bool is_subset_of(const GSubset& other) const;

  std::span<const std::uint64_t> words() const noexcept { return words_; }

  friend bool operator==(const GSubset& a, const GSubset& b) noexcept {
    return a.owner_ == b.owner_ && a.words_ == b.words_;
  }
  /// Orders subsets of one owner by bitmap value (highest element first).
  friend bool operator<(const GSubset& a, const GSubset& b) noexcept;

 private:
  std::shared_ptr<const Magma> owner_;
  std::vector<std::uint64_t> words_;
};

/// A GSubset certified to be a subgroup of a group.
class Subgroup {
 public:
  /// Returns the certified subgroup when is_subgroup(carrier) holds.
  static std::optional<Subgroup> certify(GSubset carrier);

  const GSubset& carrier() const noexcept { return carrier_; }
  const Magma& group() const noexcept { return carrier_.owner(); }
  std::size_t order() const noexcept { return carrier_.size(); }
  bool contains(Index x) const noexcept { return carrier_.contains(x); }
  bool is_whole_group() const noexcept { return order() == carrier_.universe(); }

  friend bool operator==(const Subgroup& a, const Subgroup& b) noexcept {
    return a.carrier_ == b.carrier_;
  }

 private:
  explicit Subgroup(GSubset carrier) : carrier_(std::move(carrier)) {}
  GSubset carrier_;
};

struct CosetPartition {
  Subgroup subgroup;
  std::vector<GSubset> cosets;
  /// Least element index of each coset, ascending.
  std::vector<Index> representatives;
};

enum class Side { Left, Right };

/// {a*b : a in A, b in B}
GSubset product_set(const GSubset& a, const GSubset& b);
/// x*A (Side::Left) or A*x (Side::Right).
GSubset translate(const Element& x, const GSubset& a, Side side);
GSubset translate(Index x, const GSubset& a, Side side);

bool is_subgroup(const GSubset& a);
/// Least subgroup containing every generator. Generators must share one
/// owning group; an empty list yields the trivial subgroup of nothing and is
/// rejected with InvalidArgument.
Subgroup generated_subgroup(std::span<const Element> gens);
Subgroup trivial_subgroup(const FiniteGroup& g);
Subgroup whole_group(const FiniteGroup& g);

CosetPartition left_cosets(const Subgroup& h);
std::size_t index(const Subgroup& h);

/// g*h*g^-1 in H for all g in G, h in H.
bool is_normal_classic(const Subgroup& h);
/// a*H == H*a as sets.
bool coset_commutes(const Element& a, const Subgroup& h);
bool coset_commutes(Index a, const Subgroup& h);

/// Re-packages a subgroup as a standalone group with the restricted table;
/// elements keep their relative order and labels.
FiniteGroup subgroup_as_group(const Subgroup& h);

/// Every subgroup of g, ordered by (order, bitmap). Grows the lattice by
/// joining each subgroup found so far with one extra element until no new
/// subgroup appears.
std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g);

}  // namespace nclosed
