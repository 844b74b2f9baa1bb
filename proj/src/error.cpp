#include "semaxis/error.hpp"

namespace semaxis {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::NonNumericCell: return "NonNumericCell";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::EmptyTable: return "EmptyTable";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::AlreadyNormalized: return "AlreadyNormalized";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InvalidTarget: return "InvalidTarget";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::EmptyCheckSet: return "EmptyCheckSet";
    case ErrorCode::InvalidWeights: return "InvalidWeights";
    case ErrorCode::TooFewPoints: return "TooFewPoints";
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyGroup: return "EmptyGroup";
    case ErrorCode::OverlappingGroups: return "OverlappingGroups";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::ZeroAxis: return "ZeroAxis";
    case ErrorCode::InvalidFilter: return "InvalidFilter";
    case ErrorCode::UnknownPeriod: return "UnknownPeriod";
    case ErrorCode::NoSlices: return "NoSlices";
    case ErrorCode::InvalidPolygon: return "InvalidPolygon";
    case ErrorCode::UnknownAxis: return "UnknownAxis";
    case ErrorCode::UnknownCheckpoint: return "UnknownCheckpoint";
    case ErrorCode::UnknownDataset: return "UnknownDataset";
    case ErrorCode::UnknownJob: return "UnknownJob";
    case ErrorCode::DatasetGone: return "DatasetGone";
    case ErrorCode::SlotsFull: return "SlotsFull";
    case ErrorCode::CompositeLocked: return "CompositeLocked";
    case ErrorCode::JobActive: return "JobActive";
    case ErrorCode::NoEmbedding: return "NoEmbedding";
    case ErrorCode::BadRequest: return "BadRequest";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace semaxis
