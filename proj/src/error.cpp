#include "netour/error.hpp"

namespace netour {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::DanglingEndpoint: return "DanglingEndpoint";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::DuplicateNodeId: return "DuplicateNodeId";
    case ErrorCode::EmptyNoun: return "EmptyNoun";
    case ErrorCode::UnknownNode: return "UnknownNode";
    case ErrorCode::EmptySelection: return "EmptySelection";
    case ErrorCode::DegenerateGraph: return "DegenerateGraph";
    case ErrorCode::Unweighted: return "Unweighted";
    case ErrorCode::RankOutOfRange: return "RankOutOfRange";
    case ErrorCode::EmptyScope: return "EmptyScope";
    case ErrorCode::SameNode: return "SameNode";
    case ErrorCode::NoPath: return "NoPath";
    case ErrorCode::OverlappingSubgraphs: return "OverlappingSubgraphs";
    case ErrorCode::NotTemporal: return "NotTemporal";
    case ErrorCode::NotGeographic: return "NotGeographic";
    case ErrorCode::DuplicateFactId: return "DuplicateFactId";
    case ErrorCode::UnknownTag: return "UnknownTag";
    case ErrorCode::UnknownFactId: return "UnknownFactId";
    case ErrorCode::SubjectMismatch: return "SubjectMismatch";
    case ErrorCode::NotApplicable: return "NotApplicable";
    case ErrorCode::SchemaViolation: return "SchemaViolation";
    case ErrorCode::ScopeMismatch: return "ScopeMismatch";
    case ErrorCode::SubjectMissing: return "SubjectMissing";
    case ErrorCode::DisconnectedPath: return "DisconnectedPath";
    case ErrorCode::UnknownTour: return "UnknownTour";
    case ErrorCode::UnknownSection: return "UnknownSection";
    case ErrorCode::UnknownSlide: return "UnknownSlide";
    case ErrorCode::HiddenSlide: return "HiddenSlide";
    case ErrorCode::NoActiveTour: return "NoActiveTour";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::UnknownSession: return "UnknownSession";
    case ErrorCode::BadRequest: return "BadRequest";
  }
  return "Unknown";
}

}  // namespace netour
