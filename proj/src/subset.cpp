#include "nclosed/subset.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "nclosed/error.hpp"

namespace nclosed {

GSubset::GSubset(std::shared_ptr<const Magma> owner)
    : owner_(std::move(owner)), words_((owner_->order() + 63) / 64, 0) {}

GSubset::GSubset(std::shared_ptr<const Magma> owner, std::vector<std::uint64_t> words)
    : owner_(std::move(owner)), words_(std::move(words)) {
  const std::size_t n = owner_->order();
  if (words_.size() != (n + 63) / 64)
    throw Error(ErrorKind::InvalidArgument, "bitmap length does not match the structure order");
  if (n % 64 != 0 && (words_.back() >> (n % 64)) != 0)
    throw Error(ErrorKind::InvalidArgument, "bitmap has bits beyond the structure order");
}

GSubset::GSubset(const FiniteSemigroup& owner, std::initializer_list<Index> members)
    : GSubset(owner.shared()) {
  for (Index x : members) insert(x);
}

GSubset::GSubset(const FiniteSemigroup& owner, std::span<const Index> members)
    : GSubset(owner.shared()) {
  for (Index x : members) insert(x);
}

GSubset GSubset::full(const FiniteSemigroup& owner) {
  GSubset s(owner);
  for (Index x = 0; x < owner.order(); ++x) s.insert(x);
  return s;
}

GSubset GSubset::from_mask(const FiniteSemigroup& owner, std::uint64_t mask) {
  if (owner.order() < 64 && (mask >> owner.order()) != 0)
    throw Error(ErrorKind::InvalidArgument, "mask has bits beyond the structure order");
  GSubset s(owner);
  s.words_[0] = mask;
  return s;
}

void GSubset::insert(Index x) {
  if (x >= universe()) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  words_[x / 64] |= std::uint64_t{1} << (x % 64);
}

void GSubset::erase(Index x) {
  if (x >= universe()) throw Error(ErrorKind::InvalidArgument, "element index out of range");
  words_[x / 64] &= ~(std::uint64_t{1} << (x % 64));
}

void GSubset::insert_all(const GSubset& other) {
  if (other.owner_ != owner_)
    throw Error(ErrorKind::MixedStructures, "subsets belong to different structures");
  for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= other.words_[i];
}

std::size_t GSubset::size() const noexcept {
  std::size_t n = 0;
  for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
  return n;
}

bool GSubset::empty() const noexcept {
  return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
}

std::optional<Index> GSubset::least() const noexcept {
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] != 0) return static_cast<Index>(i * 64 + std::countr_zero(words_[i]));
  return std::nullopt;
}

std::vector<Index> GSubset::elements() const {
  std::vector<Index> out;
  for (std::size_t i = 0; i < words_.size(); ++i)
    for (auto w = words_[i]; w != 0; w &= w - 1)
      out.push_back(static_cast<Index>(i * 64 + std::countr_zero(w)));
  return out;
}

std::vector<std::string> GSubset::labels() const {
  std::vector<std::string> out;
  for (Index x : elements()) out.push_back(owner_->label(x));
  return out;
}

bool GSubset::is_subset_of(const GSubset& other) const {
  if (other.owner_ != owner_)
    throw Error(ErrorKind::MixedStructures, "subsets belong to different structures");
  for (std::size_t i = 0; i < words_.size(); ++i)
    if (words_[i] & ~other.words_[i]) return false;
  return true;
}

bool operator<(const GSubset& a, const GSubset& b) noexcept {
  return std::lexicographical_compare(a.words_.rbegin(), a.words_.rend(), b.words_.rbegin(),
                                      b.words_.rend());
}

std::optional<Subgroup> Subgroup::certify(GSubset carrier) {
  if (!is_subgroup(carrier)) return std::nullopt;
  return Subgroup(std::move(carrier));
}

namespace {

void same_owner(const GSubset& a, const GSubset& b) {
  if (a.shared_owner() != b.shared_owner())
    throw Error(ErrorKind::MixedStructures, "subsets belong to different structures");
}

void same_owner(const Element& x, const GSubset& a) {
  if (&x.owner() != &a.owner())
    throw Error(ErrorKind::MixedStructures, "element and subset belong to different structures");
}

}  // namespace

GSubset product_set(const GSubset& a, const GSubset& b) {
  same_owner(a, b);
  const Magma& g = a.owner();
  GSubset out(a.shared_owner());
  const auto bs = b.elements();
  for (Index x : a.elements()) {
    auto row = g.row(x);
    for (Index y : bs) out.insert(row[y]);
  }
  return out;
}

GSubset translate(Index x, const GSubset& a, Side side) {
  const Magma& g = a.owner();
  GSubset out(a.shared_owner());
  for (Index y : a.elements()) out.insert(side == Side::Left ? g.mul(x, y) : g.mul(y, x));
  return out;
}

GSubset translate(const Element& x, const GSubset& a, Side side) {
  same_owner(x, a);
  return translate(x.index(), a, side);
}

bool is_subgroup(const GSubset& a) {
  const Magma& g = a.owner();
  const Index e = g.identity();
  if (a.empty() || !a.contains(e)) return false;
  const auto xs = a.elements();
  for (Index x : xs) {
    if (!a.contains(g.inverse(x))) return false;
    for (Index y : xs)
      if (!a.contains(g.mul(x, y))) return false;
  }
  return true;
}

namespace {

// Closure of `seed` under right multiplication by `gens`.
GSubset close_under(GSubset seed, std::span<const Index> gens) {
  const Magma& g = seed.owner();
  std::vector<Index> queue = seed.elements();
  while (!queue.empty()) {
    Index u = queue.back();
    queue.pop_back();
    for (Index s : gens) {
      Index v = g.mul(u, s);
      if (!seed.contains(v)) {
        seed.insert(v);
        queue.push_back(v);
      }
    }
  }
  return seed;
}

Subgroup certified(GSubset s) {
  auto h = Subgroup::certify(std::move(s));
  if (!h) throw Error(ErrorKind::TheoremViolation, "closure is not a subgroup");
  return *std::move(h);
}

}  // namespace

Subgroup generated_subgroup(std::span<const Element> gens) {
  if (gens.empty()) throw Error(ErrorKind::InvalidArgument, "generator list is empty");
  const Magma& g = gens.front().owner();
  std::vector<Index> idx;
  for (const auto& x : gens) {
    if (&x.owner() != &g)
      throw Error(ErrorKind::MixedStructures, "generators belong to different groups");
    idx.push_back(x.index());
  }
  GSubset seed(g.shared_from_this());
  seed.insert(g.identity());
  return certified(close_under(std::move(seed), idx));
}

Subgroup trivial_subgroup(const FiniteGroup& g) {
  return certified(GSubset(g, {g.identity()}));
}

Subgroup whole_group(const FiniteGroup& g) { return certified(GSubset::full(g)); }

CosetPartition left_cosets(const Subgroup& h) {
  const GSubset& carrier = h.carrier();
  GSubset covered(carrier.shared_owner());
  CosetPartition out{h, {}, {}};
  for (Index x = 0; x < carrier.universe(); ++x) {
    if (covered.contains(x)) continue;
    GSubset coset = translate(x, carrier, Side::Left);
    covered.insert_all(coset);
    out.cosets.push_back(std::move(coset));
    out.representatives.push_back(x);
  }
  return out;
}

std::size_t index(const Subgroup& h) { return h.carrier().universe() / h.order(); }

bool is_normal_classic(const Subgroup& h) {
  const Magma& g = h.group();
  const auto hs = h.carrier().elements();
  for (Index x = 0; x < g.order(); ++x) {
    const Index xinv = g.inverse(x);
    for (Index y : hs)
      if (!h.contains(g.mul(g.mul(x, y), xinv))) return false;
  }
  return true;
}

bool coset_commutes(Index a, const Subgroup& h) {
  return translate(a, h.carrier(), Side::Left) == translate(a, h.carrier(), Side::Right);
}

bool coset_commutes(const Element& a, const Subgroup& h) {
  same_owner(a, h.carrier());
  return coset_commutes(a.index(), h);
}

FiniteGroup subgroup_as_group(const Subgroup& h) {
  const Magma& g = h.group();
  const auto xs = h.carrier().elements();
  if (const auto* perms = g.permutations()) {
    std::vector<Permutation> chosen;
    for (Index x : xs) chosen.push_back((*perms)[x]);
    return make_permutation_group(std::move(chosen));
  }
  std::map<Index, Index> local;
  for (Index i = 0; i < xs.size(); ++i) local.emplace(xs[i], i);
  TableRows rows(xs.size(), std::vector<Index>(xs.size()));
  std::vector<std::string> labels;
  for (Index i = 0; i < xs.size(); ++i) {
    labels.push_back(g.label(xs[i]));
    for (Index j = 0; j < xs.size(); ++j) rows[i][j] = local.at(g.mul(xs[i], xs[j]));
  }
  return validate_cayley_table(rows, std::move(labels));
}

std::vector<Subgroup> enumerate_subgroups(const FiniteGroup& g) {
  struct Found {
    GSubset carrier;
    std::vector<Index> gens;
  };
  std::map<std::vector<std::uint64_t>, std::size_t> seen;
  std::vector<Found> found;
  auto add = [&](GSubset s, std::vector<Index> gens) {
    std::vector<std::uint64_t> key(s.words().begin(), s.words().end());
    if (seen.emplace(std::move(key), found.size()).second)
      found.push_back({std::move(s), std::move(gens)});
  };
  GSubset trivial(g, {g.identity()});
  add(trivial, {});
  for (std::size_t i = 0; i < found.size(); ++i) {
    for (Index x = 0; x < g.order(); ++x) {
      if (found[i].carrier.contains(x)) continue;
      std::vector<Index> gens = found[i].gens;
      gens.push_back(x);
      GSubset joined = close_under(found[i].carrier, gens);
      add(std::move(joined), std::move(gens));
    }
  }
  std::vector<Subgroup> out;
  out.reserve(found.size());
  for (auto& f : found) out.push_back(certified(std::move(f.carrier)));
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    if (a.order() != b.order()) return a.order() < b.order();
    return a.carrier() < b.carrier();
  });
  return out;
}

}  // namespace nclosed
