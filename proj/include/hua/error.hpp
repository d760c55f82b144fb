#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hua {

enum class Errc {
  // parameter validation
  NonPositiveDepth,
  NonPositiveRange,
  DeformationOutOfRange,
  NonPositiveMassOrHbar,
  NonPositiveRadius,
  InvalidRange,
  // Nikiforov-Uvarov engine
  ComplexKRoots,
  DegenerateK,
  NotPerfectSquare,
  NoPhysicalBranch,
  BranchTie,
  UnsupportedSigma,
  NoSignChange,
  MaxIterations,
  // closed forms
  NegativeRadicand,
  NoBoundState,
  GridTooShort,
  // numerical oracle
  ExtendedDomainInvalid,
  IndexOutOfRange,
  FewerBoundStates,
  MatchFailure,
  // harness
  ConfigError,
  IoError,
};

std::string_view to_string(Errc code) noexcept;

/// Library-wide exception carrying a machine-checkable code.
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

} // namespace hua
