// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOCAP_METRICS_H_
#define MOCAP_METRICS_H_

#include <map>
#include <span>
#include <vector>

#include "mocap/geometry.h"
#include "mocap/skeleton.h"

namespace mocap {

// Mean Euclidean distance (mm) over joints present in both skeletons.
// Throws Error(kNoComparableJoints) when no joint is shared.
double MeanAbs3dErr(const Skeleton3D& estimated, const Skeleton3D& truth);

// Number of joints MeanAbs3dErr compares.
int ComparableJointCount(const Skeleton3D& a, const Skeleton3D& b);

// Arithmetic mean. Throws Error(kEmptySequence).
double SequenceMean(std::span<const double> per_frame);

// Joint index -> pixel for one view.
using ViewPixels = std::map<int, PixelPoint>;

// Mean pixel distance over joints present in both maps. Throws
// Error(kNoComparableJoints).
double Avg2dErr(const ViewPixels& detected, const ViewPixels& reprojected);

// Projects every Ok joint of `skeleton` into `cam`, restricted to joint
// indices below `max_joint`. Joints behind the camera are skipped.
ViewPixels Reproject(const Skeleton3D& skeleton, const CameraParams& cam,
                     int max_joint);

struct ErrorReport {
  std::vector<int> frames;
  std::vector<double> per_frame_3d;
  double sequence_mean_3d = 0.0;
  // view id -> mean over frames of that view's Avg 2D Err.
  std::map<int, double> per_view_2d;
  // Joints compared per frame.
  std::vector<int> joint_count;
};

}  // namespace mocap

#endif  // MOCAP_METRICS_H_
