// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

// File formats. Emitted reals always use six fixed decimals so output bytes
// are reproducible.
//
//   calibration  JSON array: {id, K:[[3x3]], R:[[3x3]], t:[3], width, height}
//   keypoints    JSONL: {frame, views:[{view_id, joints:[{idx, u, v, c}]}]}
//   skeletons    JSONL: {frame, joints:[{idx, name, status, x, y, z}]}
//   animation    JSONL: {frame, bones:[{name, status, T:[[4x4]]}]}
//
// Matrices are row-major. Parse failures throw Error(kInputParse) carrying
// the source name and line.

#ifndef MOCAP_IO_H_
#define MOCAP_IO_H_

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "mocap/geometry.h"
#include "mocap/retarget.h"
#include "mocap/skeleton.h"
#include "mocap/voxel_estimator.h"

namespace mocap {

// "%.6f", with negative zero printed as zero.
std::string FormatFixed(double value);

std::vector<CameraParams> ParseCalibration(std::string_view text,
                                           std::string_view source = "calibration");
std::vector<CameraParams> LoadCalibration(const std::string& path);
std::string FormatCalibration(const std::vector<CameraParams>& cameras);

JointObservationFrame ParseKeypointLine(std::string_view line);
std::string FormatKeypointLine(const JointObservationFrame& frame);

Skeleton3D ParseSkeletonLine(std::string_view line,
                             const SkeletonTopology& topology);
std::string FormatSkeletonLine(const Skeleton3D& skeleton,
                               const SkeletonTopology& topology);

BoneTransformSet ParseAnimationLine(std::string_view line,
                                    const SkeletonTopology& topology);
std::string FormatAnimationLine(const BoneTransformSet& transforms,
                                const SkeletonTopology& topology);

// Rig override: {"joints":[{index,name}], "bones":[{name, parent_joint,
// child_joint, parent_bone, frame_class}], "root_joint", "root_sources"}.
// parent_bone is a bone name or null.
SkeletonTopology ParseTopology(std::string_view text);
std::string FormatTopology(const SkeletonTopology& topology);

// {"rest_direction":{bone:[3]}, "frame_rotation":{class:[[3x3]]}}
TPoseTemplate ParseTemplate(std::string_view text,
                            const SkeletonTopology& topology);
std::string FormatTemplate(const TPoseTemplate& tpl,
                           const SkeletonTopology& topology);

std::string ReadFile(const std::string& path);

// Iterates non-blank lines of a JSONL stream, tracking line numbers for
// error messages.
class JsonLinesReader {
 public:
  JsonLinesReader(std::istream& in, std::string source)
      : in_(in), source_(std::move(source)) {}

  bool Next(std::string& line);
  int line_number() const { return line_number_; }
  const std::string& source() const { return source_; }

  // Runs `parse` on `line`, rewriting parse errors with file:line context.
  template <typename Fn>
  auto Parse(const std::string& line, Fn&& parse) const -> decltype(parse(line));

 private:
  [[noreturn]] void Rethrow(const std::exception& e) const;

  std::istream& in_;
  std::string source_;
  int line_number_ = 0;
};

template <typename Fn>
auto JsonLinesReader::Parse(const std::string& line, Fn&& parse) const
    -> decltype(parse(line)) {
  try {
    return parse(line);
  } catch (const std::exception& e) {
    Rethrow(e);
  }
}

}  // namespace mocap

#endif  // MOCAP_IO_H_
