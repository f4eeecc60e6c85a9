#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace belief {

/// Failure categories raised by the library. Each maps to one named error of
/// the public contract so callers (and tests) can branch on the kind rather
/// than on message text.
enum class Errc {
  InvalidFrame,
  UnknownLabel,
  FrameMismatch,
  MassOnEmptySet,
  MassNotNormalized,
  NegativeMass,
  NotABeliefFunction,
  InvalidModel,
  UnknownMessage,
  UnknownPlaintext,
  CodeNotPossible,
  TotalConflict,
  InvalidPrior,
  ZeroMarginal,
  UndefinedOdds,
  InfiniteOdds,
  NoAcceptedTrials,
  SyntaxError,
  ProbabilitySumError,
  DuplicateCodeName,
  IncompleteCodebook,
  IoError,
};

constexpr std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidFrame: return "InvalidFrame";
    case Errc::UnknownLabel: return "UnknownLabel";
    case Errc::FrameMismatch: return "FrameMismatch";
    case Errc::MassOnEmptySet: return "MassOnEmptySet";
    case Errc::MassNotNormalized: return "MassNotNormalized";
    case Errc::NegativeMass: return "NegativeMass";
    case Errc::NotABeliefFunction: return "NotABeliefFunction";
    case Errc::InvalidModel: return "InvalidModel";
    case Errc::UnknownMessage: return "UnknownMessage";
    case Errc::UnknownPlaintext: return "UnknownPlaintext";
    case Errc::CodeNotPossible: return "CodeNotPossible";
    case Errc::TotalConflict: return "TotalConflict";
    case Errc::InvalidPrior: return "InvalidPrior";
    case Errc::ZeroMarginal: return "ZeroMarginal";
    case Errc::UndefinedOdds: return "UndefinedOdds";
    case Errc::InfiniteOdds: return "InfiniteOdds";
    case Errc::NoAcceptedTrials: return "NoAcceptedTrials";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::ProbabilitySumError: return "ProbabilitySumError";
    case Errc::DuplicateCodeName: return "DuplicateCodeName";
    case Errc::IncompleteCodebook: return "IncompleteCodebook";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace belief
