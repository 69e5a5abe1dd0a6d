#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace noa {

enum class ErrorKind {
  NotPrime,
  Overflow,
  IndexOutOfRange,
  BadStrength,
  NotDivisor,
  BadIndex,
  Duplicate,
  StrengthTooHigh,
  TrivialField,
  NoNontrivialPlan,
  InternalInvariant,
  UnbalancedColumn,
  DimensionMismatch,
  InvalidDesign,
  Parse,
  InvalidArgument,
};

constexpr std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::Overflow: return "Overflow";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::BadStrength: return "BadStrength";
    case ErrorKind::NotDivisor: return "NotDivisor";
    case ErrorKind::BadIndex: return "BadIndex";
    case ErrorKind::Duplicate: return "Duplicate";
    case ErrorKind::StrengthTooHigh: return "StrengthTooHigh";
    case ErrorKind::TrivialField: return "TrivialField";
    case ErrorKind::NoNontrivialPlan: return "NoNontrivialPlan";
    case ErrorKind::InternalInvariant: return "InternalInvariant";
    case ErrorKind::UnbalancedColumn: return "UnbalancedColumn";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidDesign: return "InvalidDesign";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), message_(message) {}

  [[nodiscard]] ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  [[nodiscard]] const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

}  // namespace noa
