#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace nclosed {

enum class ErrorKind {
  // Cayley table validation
  NotClosed,
  NotAssociative,
  NoIdentity,
  NoInverse,
  DuplicateLabel,
  // constructors and element arithmetic
  UnsupportedParameter,
  TooLarge,
  MixedStructures,
  NotAGroup,
  InvalidArgument,
  // closedness engine
  EmptySubset,
  BudgetExceeded,
  RepInSubgroup,
  NonCommutingCoset,
  NotNClosed,
  AlreadyClosed,
  PrefixNotInD,
  NotProperSubgroup,
  TheoremViolation,
  // input parsing
  SyntaxError,
  PointOutOfRange,
  RepeatedPointInCycle,
  UnknownLabel,
  EmptySubsetSpec,
  GenerationOverflow,
  GroupTooLargeForScan,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library. Parser errors carry the byte offset
/// into the input at which the problem was detected.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> position = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> position() const noexcept { return position_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> position_;
  std::string detail_;
};

}  // namespace nclosed
