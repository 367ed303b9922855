#include "nclosed/group.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_set>

#include "nclosed/error.hpp"

namespace nclosed {

struct MagmaBuilder {
  static std::shared_ptr<Magma> make(std::size_t order, std::vector<Index> table,
                                     std::vector<std::string> labels) {
    auto m = std::shared_ptr<Magma>(new Magma());
    m->order_ = order;
    m->table_ = std::move(table);
    m->labels_ = std::move(labels);
    m->label_index_.reserve(order);
    for (Index i = 0; i < order; ++i) m->label_index_.emplace(m->labels_[i], i);
    return m;
  }

  // Identity must already be at index 0 and every element invertible.
  static FiniteGroup group(std::shared_ptr<Magma> m, std::vector<Permutation> perms = {}) {
    const std::size_t n = m->order_;
    m->inverses_.assign(n, 0);
    for (Index x = 0; x < n; ++x) {
      auto row = m->row(x);
      auto it = std::find(row.begin(), row.end(), Index{0});
      m->inverses_[x] = static_cast<Index>(it - row.begin());
    }
    m->permutations_ = std::move(perms);
    return FiniteGroup(std::move(m));
  }

  static FiniteSemigroup semigroup(std::shared_ptr<Magma> m) {
    return FiniteSemigroup(std::move(m));
  }
};

std::optional<Index> Magma::find_label(std::string_view label) const {
  auto it = label_index_.find(std::string(label));
  if (it == label_index_.end()) return std::nullopt;
  return it->second;
}

Index Magma::identity() const {
  if (!is_group()) throw Error(ErrorKind::NotAGroup, "structure has no identity");
  return 0;
}

Index Magma::inverse(Index x) const {
  if (!is_group()) throw Error(ErrorKind::NotAGroup, "structure has no inverses");
  return inverses_.at(x);
}

std::optional<Index> Magma::find_permutation(const Permutation& p) const {
  if (permutations_.empty()) return std::nullopt;
  auto it = std::lower_bound(permutations_.begin(), permutations_.end(), p);
  if (it == permutations_.end() || *it != p) return std::nullopt;
  return static_cast<Index>(it - permutations_.begin());
}

Element::Element(const Magma& owner, Index index) : owner_(&owner), index_(index) {
  if (index >= owner.order())
    throw Error(ErrorKind::InvalidArgument,
                "element index " + std::to_string(index) + " out of range");
}

std::optional<Element> FiniteSemigroup::find(std::string_view label) const {
  if (auto i = magma_->find_label(label)) return Element(*magma_, *i);
  return std::nullopt;
}

Index FiniteGroup::power(Index x, std::uint64_t m) const {
  Index result = identity();
  Index base = x;
  while (m > 0) {
    if (m & 1U) result = mul(result, base);
    base = mul(base, base);
    m >>= 1U;
  }
  return result;
}

std::uint64_t FiniteGroup::element_order(Index x) const {
  std::uint64_t k = 1;
  for (Index y = x; y != identity(); y = mul(y, x)) ++k;
  return k;
}

bool FiniteGroup::is_abelian() const {
  for (Index x = 0; x < order(); ++x)
    for (Index y = x + 1; y < order(); ++y)
      if (mul(x, y) != mul(y, x)) return false;
  return true;
}

namespace {

std::string witness(std::initializer_list<Index> xs) {
  std::string out = "(";
  bool first = true;
  for (Index x : xs) {
    if (!first) out += ", ";
    out += std::to_string(x);
    first = false;
  }
  return out + ")";
}

std::vector<Index> flatten_checked(const TableRows& rows) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "Cayley table is empty");
  if (n > kMaxOrder)
    throw Error(ErrorKind::TooLarge, "order " + std::to_string(n) + " exceeds " +
                                         std::to_string(kMaxOrder));
  std::vector<Index> flat;
  flat.reserve(n * n);
  for (std::size_t x = 0; x < n; ++x) {
    if (rows[x].size() != n)
      throw Error(ErrorKind::InvalidArgument,
                  "Cayley table row " + std::to_string(x) + " has length " +
                      std::to_string(rows[x].size()) + ", expected " + std::to_string(n));
    for (std::size_t y = 0; y < n; ++y) {
      if (rows[x][y] >= n)
        throw Error(ErrorKind::NotClosed,
                    "entry " + std::to_string(rows[x][y]) + " at " +
                        witness({Index(x), Index(y)}) + " is outside [0, " +
                        std::to_string(n) + ")");
      flat.push_back(rows[x][y]);
    }
  }
  return flat;
}

std::vector<std::string> checked_labels(std::vector<std::string> labels, std::size_t n) {
  if (labels.empty()) {
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
  }
  if (labels.size() != n)
    throw Error(ErrorKind::InvalidArgument, "expected " + std::to_string(n) + " labels, got " +
                                                std::to_string(labels.size()));
  std::unordered_set<std::string> seen;
  for (const auto& l : labels)
    if (!seen.insert(l).second) throw Error(ErrorKind::DuplicateLabel, "label '" + l + "'");
  return labels;
}

// Light's test: the elements a with (x*a)*y = x*(a*y) for all x, y form a
// sub-magma, so it suffices to test a generating set.
void check_associative(const std::vector<Index>& t, std::size_t n) {
  auto mul = [&](Index x, Index y) { return t[x * n + y]; };
  std::vector<char> in_closure(n, 0);
  std::vector<Index> closure;
  std::vector<Index> gens;
  closure.reserve(n);
  for (Index g = 0; g < n; ++g) {
    if (in_closure[g]) continue;
    gens.push_back(g);
    std::vector<Index> queue{g};
    in_closure[g] = 1;
    closure.push_back(g);
    while (!queue.empty()) {
      Index u = queue.back();
      queue.pop_back();
      for (std::size_t i = 0; i < closure.size(); ++i) {
        Index v = closure[i];
        for (Index w : {mul(u, v), mul(v, u)}) {
          if (!in_closure[w]) {
            in_closure[w] = 1;
            closure.push_back(w);
            queue.push_back(w);
          }
        }
      }
    }
  }
  for (Index a : gens)
    for (Index x = 0; x < n; ++x) {
      Index xa = mul(x, a);
      for (Index y = 0; y < n; ++y)
        if (mul(xa, y) != mul(x, mul(a, y)))
          throw Error(ErrorKind::NotAssociative,
                      "(x*y)*z != x*(y*z) for " + witness({x, a, y}));
    }
}

Index find_identity(const std::vector<Index>& t, std::size_t n) {
  for (Index e = 0; e < n; ++e) {
    bool ok = true;
    for (Index x = 0; x < n && ok; ++x) ok = t[e * n + x] == x && t[x * n + e] == x;
    if (ok) return e;
  }
  throw Error(ErrorKind::NoIdentity, "no two-sided identity element");
}

void check_inverses(const std::vector<Index>& t, std::size_t n, Index e) {
  for (Index x = 0; x < n; ++x) {
    bool found = false;
    for (Index y = 0; y < n && !found; ++y) found = t[x * n + y] == e && t[y * n + x] == e;
    if (!found)
      throw Error(ErrorKind::NoInverse, "element " + std::to_string(x) + " has no inverse");
  }
}

}  // namespace

FiniteGroup validate_cayley_table(const TableRows& table, std::vector<std::string> labels) {
  std::vector<Index> flat = flatten_checked(table);
  const std::size_t n = table.size();
  labels = checked_labels(std::move(labels), n);
  check_associative(flat, n);
  const Index e = find_identity(flat, n);
  check_inverses(flat, n, e);
  if (e != 0) {
    auto swap = [e](Index x) -> Index { return x == 0 ? e : (x == e ? 0 : x); };
    std::vector<Index> moved(n * n);
    for (Index x = 0; x < n; ++x)
      for (Index y = 0; y < n; ++y) moved[swap(x) * n + swap(y)] = swap(flat[x * n + y]);
    flat = std::move(moved);
    std::swap(labels[0], labels[e]);
  }
  return MagmaBuilder::group(MagmaBuilder::make(n, std::move(flat), std::move(labels)));
}

FiniteSemigroup validate_semigroup_table(const TableRows& table, std::vector<std::string> labels) {
  std::vector<Index> flat = flatten_checked(table);
  const std::size_t n = table.size();
  labels = checked_labels(std::move(labels), n);
  check_associative(flat, n);
  return MagmaBuilder::semigroup(MagmaBuilder::make(n, std::move(flat), std::move(labels)));
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorKind::UnsupportedParameter, what);
}

FiniteGroup make_cyclic(std::size_t n) {
  std::vector<Index> t(n * n);
  std::vector<std::string> labels(n);
  for (Index x = 0; x < n; ++x) {
    labels[x] = std::to_string(x);
    for (Index y = 0; y < n; ++y) t[x * n + y] = static_cast<Index>((x + y) % n);
  }
  return MagmaBuilder::group(MagmaBuilder::make(n, std::move(t), std::move(labels)));
}

std::string rotation_label(std::size_t i) {
  if (i == 0) return "";
  if (i == 1) return "r";
  return "r^" + std::to_string(i);
}

FiniteGroup make_dihedral(std::size_t n) {
  // index i: r^i, index n + i: r^i s; s r = r^-1 s.
  const std::size_t order = 2 * n;
  std::vector<Index> t(order * order);
  std::vector<std::string> labels(order);
  for (std::size_t x = 0; x < order; ++x) {
    const std::size_t i = x % n, f = x / n;
    labels[x] = f == 0 ? (i == 0 ? "e" : rotation_label(i)) : rotation_label(i) + "s";
    for (std::size_t y = 0; y < order; ++y) {
      const std::size_t j = y % n, g = y / n;
      const std::size_t rot = f == 0 ? (i + j) % n : (i + n - j) % n;
      t[x * order + y] = static_cast<Index>((f ^ g) * n + rot);
    }
  }
  return MagmaBuilder::group(MagmaBuilder::make(order, std::move(t), std::move(labels)));
}

FiniteGroup make_quaternion() {
  // Unit u in {1, i, j, k} and sign bit; index 2u + sign.
  static constexpr int kUnit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static constexpr int kSign[4][4] = {{0, 0, 0, 0}, {0, 1, 0, 1}, {0, 1, 1, 0}, {0, 0, 1, 1}};
  static constexpr const char* kNames[4] = {"1", "i", "j", "k"};
  std::vector<Index> t(64);
  std::vector<std::string> labels(8);
  for (int x = 0; x < 8; ++x) {
    labels[x] = (x % 2 ? "-" : "") + std::string(kNames[x / 2]);
    for (int y = 0; y < 8; ++y) {
      const int u = x / 2, v = y / 2;
      const int sign = (x % 2) ^ (y % 2) ^ kSign[u][v];
      t[x * 8 + y] = static_cast<Index>(2 * kUnit[u][v] + sign);
    }
  }
  return MagmaBuilder::group(MagmaBuilder::make(8, std::move(t), std::move(labels)));
}

}  // namespace

FiniteGroup make_named(Family family, std::uint64_t parameter) {
  switch (family) {
    case Family::Cyclic:
      require(parameter >= 1 && parameter <= kMaxOrder,
              "cyclic order must be in [1, " + std::to_string(kMaxOrder) + "]");
      return make_cyclic(parameter);
    case Family::Symmetric:
      require(parameter >= 1 && parameter <= 6, "symmetric degree must be in [1, 6]");
      return make_permutation_group(all_permutations(parameter));
    case Family::Dihedral:
      require(parameter >= 3 && 2 * parameter <= kMaxOrder,
              "dihedral parameter must be in [3, " + std::to_string(kMaxOrder / 2) + "]");
      return make_dihedral(parameter);
    case Family::Quaternion:
      require(parameter == 8, "quaternion group is only available as Q8");
      return make_quaternion();
  }
  throw Error(ErrorKind::UnsupportedParameter, "unknown family");
}

FiniteGroup direct_product(const FiniteGroup& g1, const FiniteGroup& g2) {
  const std::size_t n1 = g1.order(), n2 = g2.order(), n = n1 * n2;
  if (n > kMaxOrder)
    throw Error(ErrorKind::TooLarge, "product order " + std::to_string(n) + " exceeds " +
                                         std::to_string(kMaxOrder));
  std::vector<Index> t(n * n);
  std::vector<std::string> labels(n);
  for (Index x = 0; x < n; ++x) {
    const Index a = x / n2, b = x % n2;
    labels[x] = "(" + g1.label(a) + "," + g2.label(b) + ")";
    for (Index y = 0; y < n; ++y) {
      const Index c = y / n2, d = y % n2;
      t[x * n + y] = g1.mul(a, c) * static_cast<Index>(n2) + g2.mul(b, d);
    }
  }
  return MagmaBuilder::group(MagmaBuilder::make(n, std::move(t), std::move(labels)));
}

FiniteGroup make_permutation_group(std::vector<Permutation> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (elements.empty() || !elements.front().is_identity())
    throw Error(ErrorKind::InvalidArgument, "permutation set must contain the identity");
  const std::size_t n = elements.size();
  if (n > kMaxOrder) throw Error(ErrorKind::TooLarge, "too many permutations");
  std::map<Permutation, Index> index;
  for (Index i = 0; i < n; ++i) index.emplace(elements[i], i);
  std::vector<Index> t(n * n);
  std::vector<std::string> labels(n);
  for (Index x = 0; x < n; ++x) {
    labels[x] = elements[x].cycle_string();
    for (Index y = 0; y < n; ++y) {
      auto it = index.find(elements[x] * elements[y]);
      if (it == index.end())
        throw Error(ErrorKind::InvalidArgument, "permutation set is not closed");
      t[x * n + y] = it->second;
    }
  }
  return MagmaBuilder::group(MagmaBuilder::make(n, std::move(t), std::move(labels)),
                             std::move(elements));
}

FiniteSemigroup make_multiplicative_semigroup(std::uint64_t n) {
  require(n >= 1 && n <= kMaxOrder, "modulus out of range");
  std::vector<Index> t(n * n);
  std::vector<std::string> labels(n);
  for (Index x = 0; x < n; ++x) {
    labels[x] = std::to_string(x);
    for (Index y = 0; y < n; ++y) t[x * n + y] = static_cast<Index>((std::uint64_t{x} * y) % n);
  }
  return MagmaBuilder::semigroup(MagmaBuilder::make(n, std::move(t), std::move(labels)));
}

namespace {

void same_owner(const Element& x, const Element& y) {
  if (&x.owner() != &y.owner())
    throw Error(ErrorKind::MixedStructures, "elements belong to different structures");
}

}  // namespace

Element mul(const Element& x, const Element& y) {
  same_owner(x, y);
  return Element(x.owner(), x.owner().mul(x.index(), y.index()));
}

Element inverse(const Element& x) { return Element(x.owner(), x.owner().inverse(x.index())); }

Element power(const Element& x, std::uint64_t m) {
  const Magma& g = x.owner();
  if (m == 0) return Element(g, g.identity());
  Index result = x.index();
  Index base = x.index();
  --m;
  while (m > 0) {
    if (m & 1U) result = g.mul(result, base);
    base = g.mul(base, base);
    m >>= 1U;
  }
  return Element(g, result);
}

std::uint64_t element_order(const Element& x) {
  const Magma& g = x.owner();
  const Index e = g.identity();
  std::uint64_t k = 1;
  for (Index y = x.index(); y != e; y = g.mul(y, x.index())) ++k;
  return k;
}

}  // namespace nclosed
