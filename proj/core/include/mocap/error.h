// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOCAP_ERROR_H_
#define MOCAP_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace mocap {

enum class ErrorCode {
  kNonPositiveDepth,
  kInvalidArgument,
  kMissingJoint,
  kZeroLengthBone,
  kDegenerateParallel,
  kNoComparableJoints,
  kEmptySequence,
  kRankDeficient,
  kUnknownPreset,
  kInputParse,
  kFrameMismatch,
};

std::string_view ToString(ErrorCode code);

// Every recoverable failure in the library is reported with this exception.
// The code is what callers branch on; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ToString(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace mocap

#endif  // MOCAP_ERROR_H_
