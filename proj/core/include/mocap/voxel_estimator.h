// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

// 3D joint estimation by iterative space subdivision.
//
// A cube of world space is kept while at least `sigma` views see their 2D
// detection inside the cube's projected footprint. Kept cubes are halved
// along every axis until all edges fall below `delta`; the centers of the
// surviving terminal cubes are averaged into the joint estimate.

#ifndef MOCAP_VOXEL_ESTIMATOR_H_
#define MOCAP_VOXEL_ESTIMATOR_H_

#include <cstdint>
#include <span>
#include <vector>

#include "mocap/geometry.h"
#include "mocap/skeleton.h"

namespace mocap {

struct EstimatorConfig {
  int sigma = 4;
  Vec3 delta = Vec3(10.0, 10.0, 10.0);
  Cube initial_volume{WorldPoint::Zero(), Vec3(4000.0, 3000.0, 4000.0)};
  double min_confidence = 0.1;
  int max_candidates = 100000;
  // Widens every projected footprint by this many pixels to absorb detector
  // error. 0 tests the exact footprint.
  double pixel_tolerance = 0.0;

  // Throws Error(kInvalidArgument).
  void Validate() const;
};

struct JointObservation {
  int view_id = 0;
  PixelPoint pixel = PixelPoint::Zero();
  double confidence = 1.0;
};

// One view's detections for one frame. Joints absent from the detector are
// simply not listed.
struct Keypoint {
  int idx = 0;
  PixelPoint pixel = PixelPoint::Zero();
  double confidence = 1.0;
};

struct ViewKeypoints {
  int view_id = 0;
  std::vector<Keypoint> joints;
};

struct JointObservationFrame {
  int frame = 0;
  std::vector<ViewKeypoints> views;

  // All observations of one joint across views, in view order.
  std::vector<JointObservation> ObservationsOf(int joint) const;
};

enum class EstimateStatus { kOk, kNoConsensus };

struct JointEstimate {
  WorldPoint position = WorldPoint::Zero();
  int candidate_count = 0;
  // Views that voted for at least one emitted candidate, ascending.
  std::vector<int> supporting_views;
  EstimateStatus status = EstimateStatus::kNoConsensus;
  // Cubes whose votes were counted during the traversal.
  int64_t nodes_visited = 0;
  // Centers of the emitted terminal cubes, lexicographically sorted.
  std::vector<WorldPoint> candidates;
};

// N_Cube: observations at or above `min_confidence` whose pixel lies inside
// the cube's projection in their camera. Views for which the cube fails the
// depth test vote 0. Observations of unknown views are ignored.
int CountVotes(const Cube& cube, std::span<const JointObservation> observations,
               std::span<const CameraParams> cameras, double min_confidence,
               double pixel_tolerance = 0.0);

JointEstimate EstimateJoint(std::span<const JointObservation> observations,
                            std::span<const CameraParams> cameras,
                            const EstimatorConfig& config);

struct SkeletonEstimate {
  Skeleton3D skeleton;
  // Indexed by joint; the synthesized root carries the combined support of
  // its sources.
  std::vector<JointEstimate> joints;

  int64_t NodesVisited() const;
};

// Per joint of `topology`, the observations of that joint in `frame`. The
// root entry stays empty.
std::vector<std::vector<JointObservation>> GroupObservations(
    const JointObservationFrame& frame, const SkeletonTopology& topology);

SkeletonEstimate EstimateGroupedSkeleton(
    int frame_index, const std::vector<std::vector<JointObservation>>& grouped,
    std::span<const CameraParams> cameras, const EstimatorConfig& config,
    const SkeletonTopology& topology);

SkeletonEstimate EstimateSkeletonDetailed(const JointObservationFrame& frame,
                                          std::span<const CameraParams> cameras,
                                          const EstimatorConfig& config,
                                          const SkeletonTopology& topology);

inline Skeleton3D EstimateSkeleton(const JointObservationFrame& frame,
                                   std::span<const CameraParams> cameras,
                                   const EstimatorConfig& config,
                                   const SkeletonTopology& topology) {
  return EstimateSkeletonDetailed(frame, cameras, config, topology).skeleton;
}

}  // namespace mocap

#endif  // MOCAP_VOXEL_ESTIMATOR_H_
