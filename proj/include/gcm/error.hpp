#pragma once
#include <stdexcept>
#include <string>

namespace gcm {

enum class ErrorKind {
  DimensionMismatch,
  IndexOutOfRange,
  AmbientMismatch,
  JacobiFailure,
  TwistNotClosed,
  NotIsotropic,
  NotClosedUnderBracket,
  NotAlmostComplex,
  NotOrthogonal,
  NotIntegrable,
  NoInvariantSpinor,
  DegenerateOmega,
  OmegaNotClosed,
  BMismatch,
  TwistWrongType,
  SpectrumViolation,
  WrongType,
  GraphConditionFailed,
  NotClosed,
  SectionNotClosed,
  ExtensionFailed,
  SpinorNotClosed,
  NotCommuting,
  MetricNotPositive,
  SplitNotIntegrable,
  NotADecomposition,
  CompatibilityFailed,
  SyntaxError,
  UnknownGenerator,
  DimensionOdd,
};

const char *to_string(ErrorKind k);

class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string &what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}
  ErrorKind kind() const { return kind_; }

private:
  ErrorKind kind_;
};

} // namespace gcm
