#include "nclosed/normality.hpp"

#include "nclosed/closedness.hpp"
#include "nclosed/error.hpp"

namespace nclosed {

namespace {

void require_proper(const Subgroup& h) {
  if (h.is_whole_group())
    throw Error(ErrorKind::NotProperSubgroup, "subgroup equals the whole group");
}

Index power_of(const Magma& g, Index x, std::uint64_t m) {
  Index r = g.identity();
  for (std::uint64_t i = 0; i < m; ++i) r = g.mul(r, x);
  return r;
}

}  // namespace

NormalityVerdict normal_iff_index_plus_one(const Subgroup& h) {
  require_proper(h);
  const Magma& g = h.group();
  const CosetPartition partition = left_cosets(h);
  const std::size_t n = partition.cosets.size();
  NormalityVerdict v{h, n, false, true, {}, false, {}};
  for (std::size_t i = 0; i < partition.cosets.size(); ++i) {
    const Index a = partition.representatives[i];
    if (h.contains(a)) continue;
    const bool fast = coset_commutes(a, h) && h.contains(power_of(g, a, n));
    const bool engine = is_n_closed(partition.cosets[i], n + 1);
    if (fast != engine)
      v.violations.push_back("coset of " + g.label(a) + ": fast path says " +
                             (fast ? "closed" : "not closed") + ", engine says " +
                             (engine ? "closed" : "not closed") + " at n = " +
                             std::to_string(n + 1));
    v.per_coset.push_back({a, n + 1, fast});
    v.verdict_via_closedness = v.verdict_via_closedness && fast;
  }
  v.verdict_classic = is_normal_classic(h);
  v.agreement = v.verdict_classic == v.verdict_via_closedness;
  return v;
}

NormalityVerdict normal_iff_existential(const Subgroup& h, std::optional<std::uint64_t> m_max) {
  require_proper(h);
  const Magma& g = h.group();
  const std::uint64_t bound = m_max.value_or(g.order() + 1);
  const CosetPartition partition = left_cosets(h);
  NormalityVerdict v{h, partition.cosets.size(), false, true, {}, false, {}};
  for (std::size_t i = 0; i < partition.cosets.size(); ++i) {
    const Index a = partition.representatives[i];
    if (h.contains(a)) continue;
    const CosetReport report = analyze_coset(Element(g, a), h);
    std::optional<std::uint64_t> witness;
    if (report.least_closedness && *report.least_closedness <= bound)
      witness = report.least_closedness;
    if (witness) {
      if ((*witness - 1) % report.least_exponent != 0)
        v.violations.push_back("witness " + std::to_string(*witness) +
                               " not congruent to 1 mod t for " + g.label(a));
      if (!is_n_closed(partition.cosets[i], *witness))
        v.violations.push_back("engine rejects witness " + std::to_string(*witness) +
                               " for coset of " + g.label(a));
    }
    if (!report.commutes) {
      const auto closed = closedness_profile(partition.cosets[i], bound);
      for (std::uint64_t m = 2; m <= bound; ++m)
        if (closed[m])
          v.violations.push_back("non-commuting coset of " + g.label(a) + " is " +
                                 std::to_string(m) + "-closed");
    }
    for (const auto& msg : report.violations) v.violations.push_back(msg);
    v.per_coset.push_back({a, witness, witness.has_value()});
    v.verdict_via_closedness = v.verdict_via_closedness && witness.has_value();
  }
  v.verdict_classic = is_normal_classic(h);
  v.agreement = v.verdict_classic == v.verdict_via_closedness;
  return v;
}

}  // namespace nclosed
