#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nclosed/subset.hpp"

namespace nclosed {

// A subset D is n-closed when every ordered product a_1 * ... * a_n of
// members (repetition allowed) lies in D again. The engine decides this by
// iterating product sets P_1 = D, P_{i+1} = P_i * D and testing P_n ⊆ D.

inline constexpr std::uint64_t kDefaultTupleBudget = 200'000;

/// Throws EmptySubset for an empty D and InvalidArgument for n < 2.
bool is_n_closed(const GSubset& d, std::size_t n);

/// closed[m] == is_n_closed(d, m) for 2 <= m <= n_max; entries 0 and 1 are
/// false. One pass over the product-set sequence.
std::vector<bool> closedness_profile(const GSubset& d, std::size_t n_max);

/// An ordered n-tuple from D whose product escapes D, or nullopt when D is
/// n-closed.
std::optional<std::vector<Index>> non_closure_witness(const GSubset& d, std::size_t n);

/// Reference decision by enumerating all |D|^n ordered tuples. Throws
/// BudgetExceeded when |D|^n > budget.
bool is_n_closed_oracle(const GSubset& d, std::size_t n,
                        std::uint64_t budget = kDefaultTupleBudget);

/// Least n in [2, n_max] such that D is n-closed. nullopt means "none up to
/// n_max", not "none at all"; default n_max is 2*|G| + 1.
std::optional<std::size_t> least_closed_scan(const GSubset& d,
                                             std::optional<std::size_t> n_max = std::nullopt);

struct CosetReport {
  Index rep;
  Subgroup subgroup;
  GSubset coset;
  /// aH == Ha as sets.
  bool commutes;
  /// Least t >= 1 with a^t in H.
  std::uint64_t least_exponent;
  /// t + 1 when commutes. Absent means the coset is m-closed for no m at all.
  std::optional<std::uint64_t> least_closedness;
  std::optional<std::uint64_t> spectrum_step;
  /// Failed internal assertions (bH = Hb = L for b in L, a^(k-2) L = L a^(k-2) = H).
  std::vector<std::string> violations;
};

/// Throws RepInSubgroup when a is in H, NotAGroup for semigroups.
CosetReport analyze_coset(const Element& a, const Subgroup& h);

/// The set {c * step + offset : c >= 1}.
struct SpectrumDescription {
  std::uint64_t step;
  std::uint64_t offset = 1;
  std::size_t verified_up_to;

  bool contains(std::uint64_t m) const noexcept {
    return m > offset && (m - offset) % step == 0;
  }
};

/// Throws NonCommutingCoset when aH != Ha, TheoremViolation when the engine
/// disagrees with the predicate for some 2 <= m <= verify_up_to.
SpectrumDescription closedness_spectrum(const Element& a, const Subgroup& h,
                                        std::size_t verify_up_to);

/// c = k / gcd(m, k), where k is the least positive exponent with a^k in H;
/// c is the least positive integer with (a^m)^c in H. Cross-checked by
/// direct search up to 2k (TheoremViolation on mismatch).
std::uint64_t least_power_exponent(const Element& a, const Subgroup& h, std::uint64_t m);

struct PowerCoset {
  GSubset coset;                 // a^m * H
  std::uint64_t closedness;      // c + 1 with c = (k-1) / gcd(m, k-1)
};

/// For a commuting coset aH with least closedness k. The spectrum of a^m H
/// is checked against {b*c + 1} up to 3c + 1 (TheoremViolation on mismatch).
PowerCoset power_coset_closedness(const Element& a, const Subgroup& h, std::uint64_t m);

struct SubgroupExtraction {
  GSubset input;
  std::size_t n;
  /// d^(n-2) * D
  Subgroup extracted;
  Index witness;
  /// D = coset_rep * extracted
  Index coset_rep;
  std::vector<std::string> violations;
};

/// D must be n-closed (NotNClosed) and not 2-closed (AlreadyClosed).
/// Tuple-prefix invariance is checked exhaustively when |D|^(n-2) <= 256 and
/// on 64 seeded samples otherwise.
SubgroupExtraction extract_subgroup(const GSubset& d, std::size_t n, std::uint64_t seed = 0);

struct ShiftResult {
  /// d_1 * ... * d_(n-2) * D
  GSubset shifted;
  bool two_closed;
  /// A pair from `shifted` whose product escapes it; set only when
  /// two_closed is false.
  std::optional<std::pair<Index, Index>> witness;
};

/// Works over any semigroup. `prefix` holds n-2 members of D.
ShiftResult semigroup_shift_2closed(const GSubset& d, std::size_t n,
                                    std::span<const Index> prefix);

}  // namespace nclosed
