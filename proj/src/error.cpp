#include "nclosed/error.hpp"

namespace nclosed {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::NotAssociative: return "NotAssociative";
    case ErrorKind::NoIdentity: return "NoIdentity";
    case ErrorKind::NoInverse: return "NoInverse";
    case ErrorKind::DuplicateLabel: return "DuplicateLabel";
    case ErrorKind::UnsupportedParameter: return "UnsupportedParameter";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::MixedStructures: return "MixedStructures";
    case ErrorKind::NotAGroup: return "NotAGroup";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptySubset: return "EmptySubset";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::RepInSubgroup: return "RepInSubgroup";
    case ErrorKind::NonCommutingCoset: return "NonCommutingCoset";
    case ErrorKind::NotNClosed: return "NotNClosed";
    case ErrorKind::AlreadyClosed: return "AlreadyClosed";
    case ErrorKind::PrefixNotInD: return "PrefixNotInD";
    case ErrorKind::NotProperSubgroup: return "NotProperSubgroup";
    case ErrorKind::TheoremViolation: return "TheoremViolation";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::PointOutOfRange: return "PointOutOfRange";
    case ErrorKind::RepeatedPointInCycle: return "RepeatedPointInCycle";
    case ErrorKind::UnknownLabel: return "UnknownLabel";
    case ErrorKind::EmptySubsetSpec: return "EmptySubsetSpec";
    case ErrorKind::GenerationOverflow: return "GenerationOverflow";
    case ErrorKind::GroupTooLargeForScan: return "GroupTooLargeForScan";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& message,
                           std::optional<std::size_t> position) {
  std::string out(to_string(kind));
  if (position) out += " at position " + std::to_string(*position);
  if (!message.empty()) out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& message,
             std::optional<std::size_t> position)
    : std::runtime_error(format_message(kind, message, position)),
      kind_(kind),
      position_(position),
      detail_(message) {}

}  // namespace nclosed
