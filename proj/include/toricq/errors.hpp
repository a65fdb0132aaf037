#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace toricq {

/// Failure categories raised by the library. The CLI maps these onto exit codes.
enum class ErrorKind {
  Parse,
  InvalidFan,
  NotSmoothCone,
  NotComplete,
  NotProjective,
  TorsionClassGroup,
  InvalidClass,
  NotIdempotentUnderP,
  NotRegularOnChart,
  NotMuP,
  NotPClosed,
  NeedsFieldExtension,
  NoExactLift,
  NotDiagonalizable,
  NoAutomorphismSelection,
  TrivialAction,
  InconsistentOverlattice,
  InvalidLocalizer,
  FieldMismatch,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
  case ErrorKind::Parse: return "ParseError";
  case ErrorKind::InvalidFan: return "InvalidFan";
  case ErrorKind::NotSmoothCone: return "NotSmoothCone";
  case ErrorKind::NotComplete: return "NotComplete";
  case ErrorKind::NotProjective: return "NotProjective";
  case ErrorKind::TorsionClassGroup: return "TorsionClassGroup";
  case ErrorKind::InvalidClass: return "InvalidClass";
  case ErrorKind::NotIdempotentUnderP: return "NotIdempotentUnderP";
  case ErrorKind::NotRegularOnChart: return "NotRegularOnChart";
  case ErrorKind::NotMuP: return "NotMuP";
  case ErrorKind::NotPClosed: return "NotPClosed";
  case ErrorKind::NeedsFieldExtension: return "NeedsFieldExtension";
  case ErrorKind::NoExactLift: return "NoExactLift";
  case ErrorKind::NotDiagonalizable: return "NotDiagonalizable";
  case ErrorKind::NoAutomorphismSelection: return "NoAutomorphismSelection";
  case ErrorKind::TrivialAction: return "TrivialAction";
  case ErrorKind::InconsistentOverlattice: return "InconsistentOverlattice";
  case ErrorKind::InvalidLocalizer: return "InvalidLocalizer";
  case ErrorKind::FieldMismatch: return "FieldMismatch";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what, std::string stage = {})
      : std::runtime_error(what), kind_(kind), stage_(std::move(stage)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string &stage() const noexcept { return stage_; }

  // Only meaningful for NeedsFieldExtension: smallest extension degree with a root.
  int extension_degree() const noexcept { return extension_degree_; }
  Error &with_extension_degree(int e) {
    extension_degree_ = e;
    return *this;
  }

  /// Copy of this error tagged with the pipeline stage it escaped from.
  Error at_stage(std::string stage) const {
    Error e(kind_, what(), std::move(stage));
    e.extension_degree_ = extension_degree_;
    return e;
  }

private:
  ErrorKind kind_;
  std::string stage_;
  int extension_degree_ = 0;
};

} // namespace toricq
