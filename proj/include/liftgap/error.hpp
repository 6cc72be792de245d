#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace liftgap {

enum class ErrorKind {
  NotPrime,
  DimensionOutOfRange,
  NonSymmetric,
  SizeCapExceeded,
  MissingValue,
  PreconditionFailed,
  InvalidParams,
  MissingLabel,
  CapExceeded,
  InvalidK,
  GirthTooSmall,
  BoundExceeded,
  StructureViolation,
  NotASolution,
  EmptyLabelSet,
  NoPathExists,
  PathCapExceeded,
  SupportCapExceeded,
  DepthInsufficient,
  ClosedFormMismatch,
  ProvenanceMismatch,
  WeightsNotNormalized,
  ImperfectAssignment,
  ToleranceViolated,
  NumericalFailure,
  ParseError,
};

constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NotPrime: return "NotPrime";
    case ErrorKind::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorKind::NonSymmetric: return "NonSymmetric";
    case ErrorKind::SizeCapExceeded: return "SizeCapExceeded";
    case ErrorKind::MissingValue: return "MissingValue";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::InvalidParams: return "InvalidParams";
    case ErrorKind::MissingLabel: return "MissingLabel";
    case ErrorKind::CapExceeded: return "CapExceeded";
    case ErrorKind::InvalidK: return "InvalidK";
    case ErrorKind::GirthTooSmall: return "GirthTooSmall";
    case ErrorKind::BoundExceeded: return "BoundExceeded";
    case ErrorKind::StructureViolation: return "StructureViolation";
    case ErrorKind::NotASolution: return "NotASolution";
    case ErrorKind::EmptyLabelSet: return "EmptyLabelSet";
    case ErrorKind::NoPathExists: return "NoPathExists";
    case ErrorKind::PathCapExceeded: return "PathCapExceeded";
    case ErrorKind::SupportCapExceeded: return "SupportCapExceeded";
    case ErrorKind::DepthInsufficient: return "DepthInsufficient";
    case ErrorKind::ClosedFormMismatch: return "ClosedFormMismatch";
    case ErrorKind::ProvenanceMismatch: return "ProvenanceMismatch";
    case ErrorKind::WeightsNotNormalized: return "WeightsNotNormalized";
    case ErrorKind::ImperfectAssignment: return "ImperfectAssignment";
    case ErrorKind::ToleranceViolated: return "ToleranceViolated";
    case ErrorKind::NumericalFailure: return "NumericalFailure";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-checkable kind.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace liftgap
