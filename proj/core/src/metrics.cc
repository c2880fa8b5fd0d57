// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/metrics.h"

#include <algorithm>

#include "mocap/error.h"

namespace mocap {

int ComparableJointCount(const Skeleton3D& a, const Skeleton3D& b) {
  const int n = static_cast<int>(std::min(a.positions.size(), b.positions.size()));
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (a.Has(i) && b.Has(i)) ++count;
  }
  return count;
}

double MeanAbs3dErr(const Skeleton3D& estimated, const Skeleton3D& truth) {
  const int n = static_cast<int>(
      std::min(estimated.positions.size(), truth.positions.size()));
  double sum = 0.0;
  int count = 0;
  for (int i = 0; i < n; ++i) {
    if (!estimated.Has(i) || !truth.Has(i)) continue;
    sum += (*estimated.positions[i] - *truth.positions[i]).norm();
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kNoComparableJoints,
                "frame " + std::to_string(estimated.frame));
  }
  return sum / count;
}

double SequenceMean(std::span<const double> per_frame) {
  if (per_frame.empty()) throw Error(ErrorCode::kEmptySequence, "no frames");
  double sum = 0.0;
  for (double v : per_frame) sum += v;
  return sum / static_cast<double>(per_frame.size());
}

double Avg2dErr(const ViewPixels& detected, const ViewPixels& reprojected) {
  double sum = 0.0;
  int count = 0;
  for (const auto& [joint, pixel] : detected) {
    auto it = reprojected.find(joint);
    if (it == reprojected.end()) continue;
    sum += (pixel - it->second).norm();
    ++count;
  }
  if (count == 0) {
    throw Error(ErrorCode::kNoComparableJoints, "no joint seen in both sets");
  }
  return sum / count;
}

ViewPixels Reproject(const Skeleton3D& skeleton, const CameraParams& cam,
                     int max_joint) {
  ViewPixels out;
  const int n = std::min(max_joint, static_cast<int>(skeleton.positions.size()));
  for (int j = 0; j < n; ++j) {
    if (!skeleton.Has(j)) continue;
    const WorldPoint& p = *skeleton.positions[j];
    if (!(cam.DepthOf(p) > 0.0)) continue;
    out.emplace(j, Project(p, cam));
  }
  return out;
}

}  // namespace mocap
