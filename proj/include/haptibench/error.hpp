#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace haptibench {

enum class ErrorKind {
  // recording-io
  MalformedRow,
  NonMonotonicTime,
  EmptyRecording,
  MalformedLine,
  InconsistentSuccessFlag,
  MalformedMeta,
  // swipe-pipeline
  AllSamplesInvalid,
  NoSwipesFound,
  InsufficientData,
  AlreadyCorrected,
  // friction-metrics
  NoAcceptedSwipes,
  ParticipantSetMismatch,
  // latency-metrics
  RidgeNotCrossed,
  NoActuationDetected,
  InsufficientCrossings,
  // fitts-analysis
  NonPositiveGeometry,
  EmptyCondition,
  // stats
  DegenerateDesign,
  InsufficientSamples,
  ZeroVariance,
  InsufficientGroups,
  DomainError,
  // comparison-report
  MissingMetric,
  // synth-bench
  InvalidSpec,
  // file system / configuration
  Io,
  InvalidConfig,
};

std::string_view to_string(ErrorKind kind);

/// Error raised by every haptibench operation. `kind()` identifies the
/// failure; `line()` carries the 1-based row/line number for parse errors.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail, std::optional<std::size_t> line = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> line_;
};

}  // namespace haptibench
