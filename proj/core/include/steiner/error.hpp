#pragma once

#include <stdexcept>
#include <string>

namespace steiner {

enum class Errc {
  DisconnectedGraph,
  NonPositiveWeight,
  DuplicatePoint,
  TooFewTerminals,
  UnknownEdge,
  SyntaxError,
  MissingSection,
  IndexOutOfRange,
  DuplicateEdge,
  BudgetExceeded,
  TooManyTerminals,
  MultiplierOutOfRange,
  SameTree,
  ThetaOutOfRange,
  MissingCoordinates,
  PreconditionViolated,
  NoFeasibleStep,
  OracleContractViolated,
  InconsistentTrace,
  SearchExhausted,
  InvalidArgument,
};

inline const char* errc_name(Errc code) {
  switch (code) {
    case Errc::DisconnectedGraph: return "DisconnectedGraph";
    case Errc::NonPositiveWeight: return "NonPositiveWeight";
    case Errc::DuplicatePoint: return "DuplicatePoint";
    case Errc::TooFewTerminals: return "TooFewTerminals";
    case Errc::UnknownEdge: return "UnknownEdge";
    case Errc::SyntaxError: return "SyntaxError";
    case Errc::MissingSection: return "MissingSection";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DuplicateEdge: return "DuplicateEdge";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::TooManyTerminals: return "TooManyTerminals";
    case Errc::MultiplierOutOfRange: return "MultiplierOutOfRange";
    case Errc::SameTree: return "SameTree";
    case Errc::ThetaOutOfRange: return "ThetaOutOfRange";
    case Errc::MissingCoordinates: return "MissingCoordinates";
    case Errc::PreconditionViolated: return "PreconditionViolated";
    case Errc::NoFeasibleStep: return "NoFeasibleStep";
    case Errc::OracleContractViolated: return "OracleContractViolated";
    case Errc::InconsistentTrace: return "InconsistentTrace";
    case Errc::SearchExhausted: return "SearchExhausted";
    case Errc::InvalidArgument: return "InvalidArgument";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail),
        code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

}  // namespace steiner
