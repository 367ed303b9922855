#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "nclosed/permutation.hpp"

namespace nclosed {

using Index = std::uint32_t;

/// Largest structure order any constructor or loader accepts.
inline constexpr std::size_t kMaxOrder = 5040;

/// Square table of element indices; table[x][y] is x * y.
using TableRows = std::vector<std::vector<Index>>;

/// Immutable, validated Cayley table shared by every handle, element and
/// subset that refers to it. Identity and inverses are present exactly when
/// the table was validated as a group; the identity of a group is index 0.
class Magma : public std::enable_shared_from_this<Magma> {
 public:
  std::size_t order() const noexcept { return order_; }
  Index mul(Index x, Index y) const noexcept { return table_[x * order_ + y]; }
  std::span<const Index> row(Index x) const noexcept {
    return {table_.data() + x * order_, order_};
  }

  const std::string& label(Index x) const { return labels_.at(x); }
  std::span<const std::string> labels() const noexcept { return labels_; }
  std::optional<Index> find_label(std::string_view label) const;

  bool is_group() const noexcept { return !inverses_.empty(); }
  /// Throws NotAGroup on a plain semigroup.
  Index identity() const;
  Index inverse(Index x) const;

  /// Non-null when each element is a permutation (symmetric groups and
  /// permutation-generated groups); entry i is element i.
  const std::vector<Permutation>* permutations() const noexcept {
    return permutations_.empty() ? nullptr : &permutations_;
  }
  std::optional<Index> find_permutation(const Permutation& p) const;

 private:
  friend struct MagmaBuilder;
  Magma() = default;

  std::size_t order_ = 0;
  std::vector<Index> table_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, Index> label_index_;
  std::vector<Index> inverses_;
  std::vector<Permutation> permutations_;
};

/// Non-owning reference to one element of a specific structure. Valid while
/// a handle to the owning structure is alive.
class Element {
 public:
  /// Throws InvalidArgument when `index` is out of range.
  Element(const Magma& owner, Index index);

  Index index() const noexcept { return index_; }
  const Magma& owner() const noexcept { return *owner_; }
  const std::string& label() const { return owner_->label(index_); }

  friend bool operator==(const Element& a, const Element& b) noexcept {
    return a.owner_ == b.owner_ && a.index_ == b.index_;
  }

 private:
  const Magma* owner_;
  Index index_;
};

class FiniteSemigroup {
 public:
  std::size_t order() const noexcept { return magma_->order(); }
  Index mul(Index x, Index y) const noexcept { return magma_->mul(x, y); }
  const std::string& label(Index x) const { return magma_->label(x); }
  std::span<const std::string> labels() const noexcept { return magma_->labels(); }

  Element element(Index x) const { return Element(*magma_, x); }
  std::optional<Element> find(std::string_view label) const;

  const Magma& magma() const noexcept { return *magma_; }
  const std::shared_ptr<const Magma>& shared() const noexcept { return magma_; }

  friend bool operator==(const FiniteSemigroup& a, const FiniteSemigroup& b) noexcept {
    return a.magma_ == b.magma_;
  }

 protected:
  explicit FiniteSemigroup(std::shared_ptr<const Magma> magma) : magma_(std::move(magma)) {}

 private:
  friend struct MagmaBuilder;
  std::shared_ptr<const Magma> magma_;
};

class FiniteGroup : public FiniteSemigroup {
 public:
  Index identity() const noexcept { return 0; }
  Index inverse(Index x) const { return magma().inverse(x); }
  Index power(Index x, std::uint64_t m) const;
  std::uint64_t element_order(Index x) const;
  bool is_abelian() const;

 private:
  friend struct MagmaBuilder;
  explicit FiniteGroup(std::shared_ptr<const Magma> magma) : FiniteSemigroup(std::move(magma)) {}
};

/// Validates closure, associativity, identity, inverses and label
/// distinctness. Empty `labels` means "0", "1", ... The returned group is
/// re-indexed so that the identity is element 0.
FiniteGroup validate_cayley_table(const TableRows& table, std::vector<std::string> labels = {});

/// Closure and associativity only.
FiniteSemigroup validate_semigroup_table(const TableRows& table,
                                         std::vector<std::string> labels = {});

enum class Family { Cyclic, Symmetric, Dihedral, Quaternion };

/// Canonical element orders: cyclic residues ascending; symmetric groups in
/// lexicographic one-line order with cycle-notation labels; dihedral
/// rotations e, r, r^2, ... then reflections s, rs, r^2s, ...; Q8 as
/// 1, -1, i, -i, j, -j, k, -k. Dihedral parameter n gives order 2n.
FiniteGroup make_named(Family family, std::uint64_t parameter);

/// Componentwise product, elements (a,b) ordered with the second factor
/// varying fastest and labelled "(a,b)".
FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2);

/// Group of the given permutations with the composition law of Permutation.
/// Elements must be closed under composition; they are sorted
/// lexicographically so the identity comes first.
FiniteGroup make_permutation_group(std::vector<Permutation> elements);

/// (Z_n, *): residues under multiplication mod n.
FiniteSemigroup make_multiplicative_semigroup(std::uint64_t n);

Element mul(const Element& x, const Element& y);
Element inverse(const Element& x);
/// power(x, 0) is the identity and requires a group; semigroups need m >= 1.
Element power(const Element& x, std::uint64_t m);
std::uint64_t element_order(const Element& x);

}  // namespace nclosed
