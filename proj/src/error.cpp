#include "sharp/error.hpp"

namespace sharp {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidParam: return "InvalidParam";
    case ErrorKind::InvalidDomain: return "InvalidDomain";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::BelowThreshold: return "BelowThreshold";
    case ErrorKind::AboveThreshold: return "AboveThreshold";
    case ErrorKind::NegativeValues: return "NegativeValues";
    case ErrorKind::DegenerateInput: return "DegenerateInput";
    case ErrorKind::NotConverged: return "NotConverged";
    case ErrorKind::StepFailure: return "StepFailure";
    case ErrorKind::SlopeSingularity: return "SlopeSingularity";
    case ErrorKind::Inadmissible: return "Inadmissible";
    case ErrorKind::PoleSingularity: return "PoleSingularity";
    case ErrorKind::SupportViolation: return "SupportViolation";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

}  // namespace sharp
