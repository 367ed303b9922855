#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nclosed/subset.hpp"

namespace nclosed {

struct CosetCheck {
  Index rep;
  /// The m tested for this coset: index + 1 for the index form, the
  /// witness t + 1 for the existential form (absent when none exists).
  std::optional<std::uint64_t> closedness_checked;
  bool passed;
};

struct NormalityVerdict {
  Subgroup subgroup;
  std::size_t index;
  bool verdict_classic;
  bool verdict_via_closedness;
  std::vector<CosetCheck> per_coset;
  bool agreement;
  /// Fast-path vs engine disagreements and witness inconsistencies.
  std::vector<std::string> violations;
};

/// H is normal iff every left coset aH, a not in H, is (index+1)-closed.
/// Throws NotProperSubgroup when H = G.
NormalityVerdict normal_iff_index_plus_one(const Subgroup& h);

/// H is normal iff each coset aH, a not in H, is m-closed for some
/// 3 <= m <= m_max (default |G| + 1, always enough in a finite group).
NormalityVerdict normal_iff_existential(const Subgroup& h,
                                        std::optional<std::uint64_t> m_max = std::nullopt);

}  // namespace nclosed
