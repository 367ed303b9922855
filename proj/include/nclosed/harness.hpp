#pragma once

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nclosed/closedness.hpp"
#include "nclosed/group.hpp"

namespace nclosed {

/// Enough information to re-run a failed check from the command line:
/// `check <group> --subset <subset> --n <n>` (or the embedded table for
/// semigroups, which have no spec syntax).
struct Certificate {
  std::string theorem;
  std::string group;
  std::vector<std::string> subset;
  std::optional<std::size_t> n;
  std::optional<std::string> rep;
  std::vector<std::string> subgroup;
  std::vector<std::string> witness;
  std::optional<bool> engine_said;
  std::optional<bool> expected;
  std::string detail;
  std::optional<nlohmann::json> table;
};

struct TheoremTally {
  std::uint64_t checked = 0;
  std::vector<Certificate> violations;
};

/// Identifiers of the checked results, in report order.
const std::vector<std::string>& theorem_ids();

struct GroupSummary {
  std::string spec;
  std::size_t order;
  std::size_t subgroups;
  std::size_t normal_subgroups;
};

struct VerificationReport {
  std::vector<std::string> corpus;
  std::vector<std::string> semigroup_corpus;
  std::vector<GroupSummary> groups;
  std::map<std::string, TheoremTally> per_theorem;
  std::uint64_t engine_oracle_checks = 0;
  std::vector<Certificate> engine_oracle_mismatches;
  std::uint64_t seed = 0;
  std::chrono::milliseconds elapsed{0};

  std::size_t violation_count() const;
  bool clean() const { return violation_count() == 0; }
};

struct VerifyOptions {
  std::vector<std::string> corpus;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;
  /// Exhaustive subset sweeps (subgroup extraction, engine/oracle) run on
  /// groups up to this order.
  std::size_t exhaustive_max_order = 10;
  /// Subgroup enumeration cap.
  std::size_t max_group_order = 24;
  /// Moduli of the multiplicative semigroups (Z_n, *) used for the
  /// semigroup shift-set checks.
  std::vector<std::uint64_t> semigroup_moduli = {2, 3, 4, 5, 6, 7, 8, 9, 10};
};

std::vector<std::string> default_corpus();

/// Parses every corpus spec first (parse errors propagate), then runs all
/// checks on a pool of `jobs` workers. Output is independent of `jobs`.
VerificationReport run_verification(const VerifyOptions& options);

nlohmann::json to_json(const VerificationReport& report, bool include_timing);
std::string to_text(const VerificationReport& report);
nlohmann::json to_json(const Certificate& c);

struct ScanEntry {
  GSubset subset;
  /// Least n in [2, n_max]; absent means none up to n_max.
  std::optional<std::size_t> least_closedness;
  /// Present for n-closed subsets that are not 2-closed.
  std::optional<SubgroupExtraction> extraction;
  /// The extracted coset satisfies the commuting-coset criterion
  /// (bH = Hb and b^(k-1) in H).
  bool criterion_holds = true;
  std::vector<std::string> violations;
};

struct ScanReport {
  std::string group;
  std::size_t order;
  std::size_t n_max;
  std::vector<ScanEntry> entries;  // ascending bitmap value
  std::size_t subgroups = 0;
  std::size_t cosets = 0;
  std::size_t never_up_to_bound = 0;
  std::size_t other_closed = 0;
};

inline constexpr std::size_t kMaxScanOrder = 14;

/// Classifies every nonempty subset. Throws GroupTooLargeForScan above
/// kMaxScanOrder.
ScanReport scan_subsets(const FiniteGroup& g, const std::string& spec, std::size_t n_max,
                        std::size_t jobs, std::uint64_t seed = 0);

nlohmann::json to_json(const ScanReport& report);
std::string to_text(const ScanReport& report);

/// Runs fn(i) for i in [0, count) on up to `jobs` threads.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t jobs, Fn&& fn);

}  // namespace nclosed

#include "nclosed/detail/parallel.hpp"
