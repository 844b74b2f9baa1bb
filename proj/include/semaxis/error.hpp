#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace semaxis {

enum class ErrorCode {
  // ingestion
  DuplicateId,
  NonNumericCell,
  RaggedRow,
  EmptyTable,
  MissingColumn,
  // normalization / weights
  AlreadyNormalized,
  DimensionMismatch,
  InvalidTarget,
  IndexOutOfRange,
  EmptyCheckSet,
  InvalidWeights,
  // embedding
  TooFewPoints,
  DegenerateInput,
  InvalidConfig,
  // axes
  EmptyGroup,
  OverlappingGroups,
  UnknownId,
  ZeroAxis,
  // ranking
  InvalidFilter,
  UnknownPeriod,
  NoSlices,
  // session
  InvalidPolygon,
  UnknownAxis,
  UnknownCheckpoint,
  UnknownDataset,
  UnknownJob,
  DatasetGone,
  SlotsFull,
  CompositeLocked,
  JobActive,
  NoEmbedding,
  BadRequest,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Every failure in the library is reported through this type; the code is
/// stable and is what the HTTP layer maps to status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace semaxis
