// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/error.h"

namespace mocap {

std::string_view ToString(ErrorCode code) {
  switch (code) {
    case ErrorCode::kNonPositiveDepth:
      return "NonPositiveDepth";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kMissingJoint:
      return "MissingJoint";
    case ErrorCode::kZeroLengthBone:
      return "ZeroLengthBone";
    case ErrorCode::kDegenerateParallel:
      return "DegenerateParallel";
    case ErrorCode::kNoComparableJoints:
      return "NoComparableJoints";
    case ErrorCode::kEmptySequence:
      return "EmptySequence";
    case ErrorCode::kRankDeficient:
      return "RankDeficient";
    case ErrorCode::kUnknownPreset:
      return "UnknownPreset";
    case ErrorCode::kInputParse:
      return "InputParseError";
    case ErrorCode::kFrameMismatch:
      return "FrameMismatch";
  }
  return "Unknown";
}

}  // namespace mocap
