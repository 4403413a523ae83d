#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace zador {

enum class ErrorKind {
  UnboundedRegion,
  EmptyRegion,
  DegenerateRegion,
  AlphaOutOfRange,
  SiteOutsideCell,
  ConservationViolated,
  NoOwner,
  NonFiniteValue,
  MaxIterations,
  InvalidInput,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnboundedRegion: return "UnboundedRegion";
    case ErrorKind::EmptyRegion: return "EmptyRegion";
    case ErrorKind::DegenerateRegion: return "DegenerateRegion";
    case ErrorKind::AlphaOutOfRange: return "AlphaOutOfRange";
    case ErrorKind::SiteOutsideCell: return "SiteOutsideCell";
    case ErrorKind::ConservationViolated: return "ConservationViolated";
    case ErrorKind::NoOwner: return "NoOwner";
    case ErrorKind::NonFiniteValue: return "NonFiniteValue";
    case ErrorKind::MaxIterations: return "MaxIterations";
    case ErrorKind::InvalidInput: return "InvalidInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above so
/// callers (and the CLI) can react without parsing messages.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace zador
