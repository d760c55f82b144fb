#include "hua/error.hpp"

namespace hua {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
  case Errc::NonPositiveDepth: return "NonPositiveDepth";
  case Errc::NonPositiveRange: return "NonPositiveRange";
  case Errc::DeformationOutOfRange: return "DeformationOutOfRange";
  case Errc::NonPositiveMassOrHbar: return "NonPositiveMassOrHbar";
  case Errc::NonPositiveRadius: return "NonPositiveRadius";
  case Errc::InvalidRange: return "InvalidRange";
  case Errc::ComplexKRoots: return "ComplexKRoots";
  case Errc::DegenerateK: return "DegenerateK";
  case Errc::NotPerfectSquare: return "NotPerfectSquare";
  case Errc::NoPhysicalBranch: return "NoPhysicalBranch";
  case Errc::BranchTie: return "BranchTie";
  case Errc::UnsupportedSigma: return "UnsupportedSigma";
  case Errc::NoSignChange: return "NoSignChange";
  case Errc::MaxIterations: return "MaxIterations";
  case Errc::NegativeRadicand: return "NegativeRadicand";
  case Errc::NoBoundState: return "NoBoundState";
  case Errc::GridTooShort: return "GridTooShort";
  case Errc::ExtendedDomainInvalid: return "ExtendedDomainInvalid";
  case Errc::IndexOutOfRange: return "IndexOutOfRange";
  case Errc::FewerBoundStates: return "FewerBoundStates";
  case Errc::MatchFailure: return "MatchFailure";
  case Errc::ConfigError: return "ConfigError";
  case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

} // namespace hua
