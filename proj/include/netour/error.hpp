#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netour {

// Error taxonomy shared by every module. The string form of each code is
// part of the wire format (service error bodies, CLI messages).
enum class ErrorCode {
  // graph-model
  MalformedFile,
  DanglingEndpoint,
  NegativeWeight,
  DuplicateNodeId,
  EmptyNoun,
  UnknownNode,
  EmptySelection,
  // metrics-engine
  DegenerateGraph,
  Unweighted,
  RankOutOfRange,
  EmptyScope,
  SameNode,
  NoPath,
  OverlappingSubgraphs,
  NotTemporal,
  NotGeographic,
  // fact-library
  DuplicateFactId,
  UnknownTag,
  UnknownFactId,
  SubjectMismatch,
  NotApplicable,
  // tour-engine
  SchemaViolation,
  ScopeMismatch,
  SubjectMissing,
  DisconnectedPath,
  UnknownTour,
  // detour-recommender / session-manager
  UnknownSection,
  UnknownSlide,
  HiddenSlide,
  NoActiveTour,
  // service
  UnknownDataset,
  UnknownSession,
  BadRequest,
};

std::string_view to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace netour
