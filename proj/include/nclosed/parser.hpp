#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "nclosed/group.hpp"
#include "nclosed/subset.hpp"

namespace nclosed {

// Input grammar (whitespace allowed between tokens):
//
//   group       := factor ('x' factor)*                 left-associative product
//   factor      := 'Z' int | 'S' int | 'D' int | 'Q8'
//                | 'perm' '(' int ')' ':' perm (',' perm)*
//                | 'table:' path                        path runs to end of input
//                | '(' group ')'
//   perm        := 'e' | cycle+
//   cycle       := '(' (int (','? int)*)? ')'
//
// Cycles compose right-to-left: "(1 2)(2 3)" applies (2 3) first.

struct CycleNotation {
  std::size_t degree;
  std::vector<std::vector<unsigned>> cycles;  // 1-based points
};

inline constexpr std::size_t kMaxPermDegree = 6;

CycleNotation parse_cycles(std::string_view text, std::size_t degree);
Permutation to_permutation(const CycleNotation& c);
Permutation parse_permutation(std::string_view text, std::size_t degree);

FiniteGroup parse_group_spec(std::string_view text);

/// Comma-separated element labels resolved against `owner`; commas nested
/// inside parentheses do not split. Elements of permutation groups may also
/// be written in any cycle notation that denotes them.
GSubset parse_subset_spec(std::string_view text, const FiniteSemigroup& owner);
Element parse_element(std::string_view text, const FiniteSemigroup& owner);

}  // namespace nclosed
