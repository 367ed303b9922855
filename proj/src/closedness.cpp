#include "nclosed/closedness.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>

#include "nclosed/error.hpp"

namespace nclosed {

namespace {

#ifdef NCLOSED_MUTANT_CLOSEDNESS
// Deliberately wrong build used by the mutation test: decides n-closedness
// from (n-1)-fold products.
constexpr std::size_t kProductShift = 1;
#else
constexpr std::size_t kProductShift = 0;
#endif

void require_nonempty(const GSubset& d) {
  if (d.empty()) throw Error(ErrorKind::EmptySubset, "subset is empty");
}

void require_n(std::size_t n, std::size_t min) {
  if (n < min)
    throw Error(ErrorKind::InvalidArgument,
                "n must be at least " + std::to_string(min) + ", got " + std::to_string(n));
}

// Walks P_1 = D, P_2 = D*D, ... using cached left-translate masks x*D.
class ProductPowers {
 public:
  explicit ProductPowers(const GSubset& d)
      : d_(d),
        words_(d.words().size()),
        masks_(d.universe() * words_, 0),
        ready_(d.universe(), 0),
        current_(d),
        members_(d.elements()) {}

  const GSubset& current() const { return current_; }
  std::size_t power() const { return power_; }

  void advance() {
    std::vector<std::uint64_t> next(words_, 0);
    for (Index x : current_.elements()) {
      const std::uint64_t* m = mask(x);
      for (std::size_t w = 0; w < words_; ++w) next[w] |= m[w];
    }
    current_ = GSubset(d_.shared_owner(), std::move(next));
    ++power_;
  }

  bool within_d() const { return current_.is_subset_of(d_); }

 private:
  const std::uint64_t* mask(Index x) {
    std::uint64_t* m = masks_.data() + x * words_;
    if (!ready_[x]) {
      auto row = d_.owner().row(x);
      for (Index y : members_) {
        const Index z = row[y];
        m[z / 64] |= std::uint64_t{1} << (z % 64);
      }
      ready_[x] = 1;
    }
    return m;
  }

  const GSubset& d_;
  std::size_t words_;
  std::vector<std::uint64_t> masks_;
  std::vector<char> ready_;
  GSubset current_;
  std::vector<Index> members_;
  std::size_t power_ = 1;
};

std::uint64_t gcd64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

std::uint64_t least_exponent_into(const Magma& g, Index a, const Subgroup& h) {
  std::uint64_t t = 1;
  for (Index y = a; !h.contains(y); y = g.mul(y, a)) ++t;
  return t;
}

Index power_of(const Magma& g, Index x, std::uint64_t m) {
  Index result = g.identity();
  for (std::uint64_t i = 0; i < m; ++i) result = g.mul(result, x);
  return result;
}

Index product_of(const Magma& g, std::span<const Index> xs) {
  Index p = xs.front();
  for (std::size_t i = 1; i < xs.size(); ++i) p = g.mul(p, xs[i]);
  return p;
}

void require_in_group(const Element& a, const Subgroup& h) {
  if (&a.owner() != &h.group())
    throw Error(ErrorKind::MixedStructures, "element and subgroup belong to different groups");
  if (h.contains(a.index()))
    throw Error(ErrorKind::RepInSubgroup,
                "representative '" + a.label() + "' lies in the subgroup");
}

std::string set_text(const GSubset& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& l : s.labels()) {
    if (!first) out += ", ";
    out += l;
    first = false;
  }
  return out + "}";
}

// All (n-2)-tuples from D when few enough, otherwise 64 seeded samples.
std::vector<std::vector<Index>> prefix_tuples(std::span<const Index> members, std::size_t len,
                                              std::uint64_t seed) {
  std::vector<std::vector<Index>> out;
  if (len == 0) return {{}};
  std::uint64_t count = 1;
  bool small = true;
  for (std::size_t i = 0; i < len && small; ++i) {
    count *= members.size();
    small = count <= 256;
  }
  if (small) {
    std::vector<std::size_t> digits(len, 0);
    while (true) {
      std::vector<Index> t(len);
      for (std::size_t i = 0; i < len; ++i) t[i] = members[digits[i]];
      out.push_back(std::move(t));
      std::size_t i = 0;
      while (i < len && ++digits[i] == members.size()) digits[i++] = 0;
      if (i == len) break;
    }
    return out;
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, members.size() - 1);
  for (int s = 0; s < 64; ++s) {
    std::vector<Index> t(len);
    for (auto& x : t) x = members[pick(rng)];
    out.push_back(std::move(t));
  }
  return out;
}

}  // namespace

bool is_n_closed(const GSubset& d, std::size_t n) {
  require_nonempty(d);
  require_n(n, 2);
  ProductPowers p(d);
  while (p.power() + kProductShift < n) p.advance();
  return p.within_d();
}

std::vector<bool> closedness_profile(const GSubset& d, std::size_t n_max) {
  require_nonempty(d);
  std::vector<bool> closed(std::max<std::size_t>(n_max + 1, 2), false);
  if (n_max < 2) return closed;
  ProductPowers p(d);
  for (std::size_t m = 2; m <= n_max; ++m) {
    while (p.power() + kProductShift < m) p.advance();
    closed[m] = p.within_d();
  }
  return closed;
}

std::optional<std::vector<Index>> non_closure_witness(const GSubset& d, std::size_t n) {
  require_nonempty(d);
  require_n(n, 2);
  const Magma& g = d.owner();
  const std::size_t order = d.universe();
  const auto members = d.elements();
  // parents[i][x] = (p, y) with p in P_(i+1), y in D and p*y = x in P_(i+2).
  constexpr Index kNone = ~Index{0};
  std::vector<std::vector<std::pair<Index, Index>>> parents;
  std::vector<char> layer(order, 0);
  for (Index x : members) layer[x] = 1;
  for (std::size_t i = 1; i < n; ++i) {
    std::vector<std::pair<Index, Index>> par(order, {kNone, kNone});
    std::vector<char> next(order, 0);
    for (Index p = 0; p < order; ++p) {
      if (!layer[p]) continue;
      for (Index y : members) {
        const Index x = g.mul(p, y);
        if (!next[x]) {
          next[x] = 1;
          par[x] = {p, y};
        }
      }
    }
    parents.push_back(std::move(par));
    layer = std::move(next);
  }
  for (Index x = 0; x < order; ++x) {
    if (!layer[x] || d.contains(x)) continue;
    std::vector<Index> tuple;
    Index cur = x;
    for (auto it = parents.rbegin(); it != parents.rend(); ++it) {
      tuple.push_back((*it)[cur].second);
      cur = (*it)[cur].first;
    }
    tuple.push_back(cur);
    std::reverse(tuple.begin(), tuple.end());
    return tuple;
  }
  return std::nullopt;
}

bool is_n_closed_oracle(const GSubset& d, std::size_t n, std::uint64_t budget) {
  require_nonempty(d);
  require_n(n, 2);
  const auto members = d.elements();
  std::uint64_t tuples = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (tuples > budget / members.size())
      throw Error(ErrorKind::BudgetExceeded,
                  std::to_string(members.size()) + "^" + std::to_string(n) +
                      " tuples exceed the budget of " + std::to_string(budget));
    tuples *= members.size();
  }
  const Magma& g = d.owner();
  std::vector<std::size_t> digits(n, 0);
  while (true) {
    Index product = members[digits[0]];
    for (std::size_t i = 1; i < n; ++i) product = g.mul(product, members[digits[i]]);
    if (!d.contains(product)) return false;
    std::size_t i = 0;
    while (i < n && ++digits[i] == members.size()) digits[i++] = 0;
    if (i == n) return true;
  }
}

std::optional<std::size_t> least_closed_scan(const GSubset& d, std::optional<std::size_t> n_max) {
  require_nonempty(d);
  const std::size_t bound = n_max.value_or(2 * d.universe() + 1);
  require_n(bound, 2);
  const auto closed = closedness_profile(d, bound);
  for (std::size_t m = 2; m <= bound; ++m)
    if (closed[m]) return m;
  return std::nullopt;
}

CosetReport analyze_coset(const Element& a, const Subgroup& h) {
  require_in_group(a, h);
  const Magma& g = h.group();
  const Index x = a.index();
  GSubset coset = translate(x, h.carrier(), Side::Left);
  const bool commutes = coset == translate(x, h.carrier(), Side::Right);
  const std::uint64_t t = least_exponent_into(g, x, h);
  CosetReport report{x, h, coset, commutes, t, std::nullopt, std::nullopt, {}};
  if (!commutes) return report;

  const std::uint64_t k = t + 1;
  report.least_closedness = k;
  report.spectrum_step = t;
  if (k < 3)
    report.violations.push_back("least closedness " + std::to_string(k) + " < 3 for a proper coset");
  for (Index b : coset.elements()) {
    if (translate(b, h.carrier(), Side::Left) != coset ||
        translate(b, h.carrier(), Side::Right) != coset)
      report.violations.push_back("bH = Hb = L fails for b = " + g.label(b));
  }
  const Index shift = power_of(g, x, k - 2);
  if (translate(shift, coset, Side::Left) != h.carrier() ||
      translate(shift, coset, Side::Right) != h.carrier())
    report.violations.push_back("a^(k-2) L = L a^(k-2) = H fails with k = " + std::to_string(k));
  return report;
}

SpectrumDescription closedness_spectrum(const Element& a, const Subgroup& h,
                                        std::size_t verify_up_to) {
  const CosetReport report = analyze_coset(a, h);
  if (!report.commutes)
    throw Error(ErrorKind::NonCommutingCoset, "aH != Ha for a = " + a.label());
  SpectrumDescription spectrum{report.least_exponent, 1, verify_up_to};
  const auto closed = closedness_profile(report.coset, verify_up_to);
  for (std::size_t m = 2; m <= verify_up_to; ++m)
    if (closed[m] != spectrum.contains(m))
      throw Error(ErrorKind::TheoremViolation,
                  "coset " + set_text(report.coset) + " is " + (closed[m] ? "" : "not ") +
                      std::to_string(m) + "-closed but the spectrum predicate with step " +
                      std::to_string(spectrum.step) + " says otherwise");
  return spectrum;
}

std::uint64_t least_power_exponent(const Element& a, const Subgroup& h, std::uint64_t m) {
  require_in_group(a, h);
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  const Magma& g = h.group();
  const std::uint64_t k = least_exponent_into(g, a.index(), h);
  const std::uint64_t c = k / gcd64(m, k);
  const Index am = power_of(g, a.index(), m % element_order(a));
  Index y = g.identity();
  for (std::uint64_t f = 1; f <= 2 * k; ++f) {
    y = g.mul(y, am);
    if (h.contains(y) != (f % c == 0))
      throw Error(ErrorKind::TheoremViolation,
                  "(a^" + std::to_string(m) + ")^" + std::to_string(f) +
                      " membership disagrees with c = " + std::to_string(c));
  }
  return c;
}

PowerCoset power_coset_closedness(const Element& a, const Subgroup& h, std::uint64_t m) {
  const CosetReport report = analyze_coset(a, h);
  if (!report.commutes)
    throw Error(ErrorKind::NonCommutingCoset, "aH != Ha for a = " + a.label());
  if (m == 0) throw Error(ErrorKind::InvalidArgument, "m must be positive");
  const Magma& g = h.group();
  const std::uint64_t k = *report.least_closedness;
  const std::uint64_t c = (k - 1) / gcd64(m, k - 1);
  const Index am = power_of(g, a.index(), m % element_order(a));
  PowerCoset out{translate(am, h.carrier(), Side::Left), c + 1};
  const auto closed = closedness_profile(out.coset, 3 * c + 1);
  for (std::uint64_t f = 2; f <= 3 * c + 1; ++f)
    if (closed[f] != ((f - 1) % c == 0))
      throw Error(ErrorKind::TheoremViolation,
                  "a^" + std::to_string(m) + "H is " + (closed[f] ? "" : "not ") +
                      std::to_string(f) + "-closed, predicted step " + std::to_string(c));
  return out;
}

SubgroupExtraction extract_subgroup(const GSubset& d, std::size_t n, std::uint64_t seed) {
  require_nonempty(d);
  require_n(n, 3);
  if (!is_n_closed(d, n))
    throw Error(ErrorKind::NotNClosed, set_text(d) + " is not " + std::to_string(n) + "-closed");
  if (is_n_closed(d, 2))
    throw Error(ErrorKind::AlreadyClosed, set_text(d) + " is already 2-closed");
  const Magma& g = d.owner();
  const auto members = d.elements();
  const Index witness = members.front();
  GSubset hset = translate(power_of(g, witness, n - 2), d, Side::Left);
  auto extracted = Subgroup::certify(hset);
  if (!extracted)
    throw Error(ErrorKind::TheoremViolation,
                "d^(n-2) D = " + set_text(hset) + " is not a subgroup");

  std::vector<std::string> violations;
  std::optional<Index> rep;
  for (Index b : members) {
    if (translate(b, hset, Side::Left) == d) {
      rep = b;
      break;
    }
  }
  if (!rep)
    throw Error(ErrorKind::TheoremViolation, set_text(d) + " is not a left coset of " +
                                                 set_text(hset));
  if (*rep != witness)
    violations.push_back("least member " + g.label(witness) + " does not generate D from H");

  for (Index x : members)
    if (translate(power_of(g, x, n - 2), d, Side::Left) != hset)
      violations.push_back("d^(n-2) D differs for d = " + g.label(x));

  for (const auto& prefix : prefix_tuples(members, n - 2, seed)) {
    const Index p = product_of(g, prefix);
    if (translate(p, d, Side::Left) != hset) {
      std::string t;
      for (Index x : prefix) t += g.label(x) + " ";
      violations.push_back("d_1...d_(n-2) D differs from H for prefix " + t);
      continue;
    }
    for (Index b : members)
      if (translate(g.mul(b, p), d, Side::Left) != d) {
        violations.push_back("b d_1...d_(n-2) D != D for b = " + g.label(b));
        break;
      }
  }
  return {d, n, *std::move(extracted), witness, *rep, std::move(violations)};
}

ShiftResult semigroup_shift_2closed(const GSubset& d, std::size_t n,
                                    std::span<const Index> prefix) {
  require_nonempty(d);
  require_n(n, 3);
  if (prefix.size() != n - 2)
    throw Error(ErrorKind::InvalidArgument, "prefix must hold n-2 = " + std::to_string(n - 2) +
                                                " elements, got " + std::to_string(prefix.size()));
  for (Index x : prefix)
    if (x >= d.universe() || !d.contains(x))
      throw Error(ErrorKind::PrefixNotInD, "prefix element " + std::to_string(x) + " is not in D");
  if (!is_n_closed(d, n))
    throw Error(ErrorKind::NotNClosed, set_text(d) + " is not " + std::to_string(n) + "-closed");
  const Magma& g = d.owner();
  GSubset shifted = translate(product_of(g, prefix), d, Side::Left);
  const auto xs = shifted.elements();
  for (Index x : xs)
    for (Index y : xs)
      if (!shifted.contains(g.mul(x, y)))
        return {std::move(shifted), false, std::pair{x, y}};
  return {std::move(shifted), true, std::nullopt};
}

}  // namespace nclosed
