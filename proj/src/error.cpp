#include "haptibench/error.hpp"

namespace haptibench {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::NonMonotonicTime: return "NonMonotonicTime";
    case ErrorKind::EmptyRecording: return "EmptyRecording";
    case ErrorKind::MalformedLine: return "MalformedLine";
    case ErrorKind::InconsistentSuccessFlag: return "InconsistentSuccessFlag";
    case ErrorKind::MalformedMeta: return "MalformedMeta";
    case ErrorKind::AllSamplesInvalid: return "AllSamplesInvalid";
    case ErrorKind::NoSwipesFound: return "NoSwipesFound";
    case ErrorKind::InsufficientData: return "InsufficientData";
    case ErrorKind::AlreadyCorrected: return "AlreadyCorrected";
    case ErrorKind::NoAcceptedSwipes: return "NoAcceptedSwipes";
    case ErrorKind::ParticipantSetMismatch: return "ParticipantSetMismatch";
    case ErrorKind::RidgeNotCrossed: return "RidgeNotCrossed";
    case ErrorKind::NoActuationDetected: return "NoActuationDetected";
    case ErrorKind::InsufficientCrossings: return "InsufficientCrossings";
    case ErrorKind::NonPositiveGeometry: return "NonPositiveGeometry";
    case ErrorKind::EmptyCondition: return "EmptyCondition";
    case ErrorKind::DegenerateDesign: return "DegenerateDesign";
    case ErrorKind::InsufficientSamples: return "InsufficientSamples";
    case ErrorKind::ZeroVariance: return "ZeroVariance";
    case ErrorKind::InsufficientGroups: return "InsufficientGroups";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::MissingMetric: return "MissingMetric";
    case ErrorKind::InvalidSpec: return "InvalidSpec";
    case ErrorKind::Io: return "Io";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
  }
  return "Unknown";
}

namespace {

std::string format_message(ErrorKind kind, const std::string& detail,
                           std::optional<std::size_t> line) {
  std::string msg(to_string(kind));
  if (line) msg += "(" + std::to_string(*line) + ")";
  if (!detail.empty()) msg += ": " + detail;
  return msg;
}

}  // namespace

Error::Error(ErrorKind kind, const std::string& detail, std::optional<std::size_t> line)
    : std::runtime_error(format_message(kind, detail, line)), kind_(kind), line_(line) {}

}  // namespace haptibench
