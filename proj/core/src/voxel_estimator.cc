// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/voxel_estimator.h"

#include <algorithm>
#include <bit>
#include <cassert>
#include <deque>
#include <string>

#include "mocap/error.h"

namespace mocap {

namespace {

const CameraParams* FindCamera(std::span<const CameraParams> cameras, int id) {
  for (const auto& cam : cameras) {
    if (cam.id == id) return &cam;
  }
  return nullptr;
}

struct ResolvedObservation {
  const CameraParams* camera;
  PixelPoint pixel;
};

std::vector<ResolvedObservation> Resolve(
    std::span<const JointObservation> observations,
    std::span<const CameraParams> cameras, double min_confidence) {
  std::vector<ResolvedObservation> out;
  out.reserve(observations.size());
  for (const auto& obs : observations) {
    if (obs.confidence < min_confidence) continue;
    const CameraParams* cam = FindCamera(cameras, obs.view_id);
    if (cam == nullptr) continue;
    out.push_back({cam, obs.pixel});
  }
  return out;
}

bool Votes(const ConvexRegion& region, const PixelPoint& pixel,
           double pixel_tolerance) {
  if (pixel_tolerance <= 0.0) return RegionContains(region, pixel);
  return RegionDistance(region, pixel) <= pixel_tolerance;
}

// Bit i of the result is set when resolved observation i votes for the cube.
uint64_t VoteMask(const Cube& cube,
                  std::span<const ResolvedObservation> observations,
                  double pixel_tolerance, ConvexRegion& scratch) {
  uint64_t mask = 0;
  for (size_t i = 0; i < observations.size(); ++i) {
    const auto& obs = observations[i];
    if (!TryCubeProjectionRegion(cube, *obs.camera, scratch)) continue;
    if (Votes(scratch, obs.pixel, pixel_tolerance)) mask |= uint64_t{1} << i;
  }
  return mask;
}

bool LexLess(const WorldPoint& a, const WorldPoint& b) {
  if (a.x() != b.x()) return a.x() < b.x();
  if (a.y() != b.y()) return a.y() < b.y();
  return a.z() < b.z();
}

}  // namespace

void EstimatorConfig::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "estimator config: " + what);
  };
  if (sigma < 2) fail("sigma must be at least 2");
  if (!(delta.array() > 0.0).all()) fail("delta must be positive");
  if (!(initial_volume.edges.array() >= delta.array()).all())
    fail("initial volume must be at least delta on every axis");
  if (!initial_volume.center.allFinite()) fail("volume center not finite");
  if (!(min_confidence >= 0.0 && min_confidence <= 1.0))
    fail("min_confidence must lie in [0, 1]");
  if (max_candidates < 1) fail("max_candidates must be positive");
  if (!(pixel_tolerance >= 0.0)) fail("pixel_tolerance must be >= 0");
}

std::vector<JointObservation> JointObservationFrame::ObservationsOf(
    int joint) const {
  std::vector<JointObservation> out;
  for (const auto& view : views) {
    for (const auto& kp : view.joints) {
      if (kp.idx == joint) {
        out.push_back({view.view_id, kp.pixel, kp.confidence});
        break;
      }
    }
  }
  return out;
}

int CountVotes(const Cube& cube, std::span<const JointObservation> observations,
               std::span<const CameraParams> cameras, double min_confidence,
               double pixel_tolerance) {
  int votes = 0;
  ConvexRegion region;
  for (const auto& obs : observations) {
    if (obs.confidence < min_confidence) continue;
    const CameraParams* cam = FindCamera(cameras, obs.view_id);
    if (cam == nullptr) continue;
    if (!TryCubeProjectionRegion(cube, *cam, region)) continue;
    if (Votes(region, obs.pixel, pixel_tolerance)) ++votes;
  }
  return votes;
}

JointEstimate EstimateJoint(std::span<const JointObservation> observations,
                            std::span<const CameraParams> cameras,
                            const EstimatorConfig& config) {
  config.Validate();
  JointEstimate result;
  const auto resolved =
      Resolve(observations, cameras, config.min_confidence);
  if (static_cast<int>(resolved.size()) < config.sigma) return result;
  if (resolved.size() > 64) {
    throw Error(ErrorCode::kInvalidArgument,
                "at most 64 observations per joint are supported");
  }

  std::vector<WorldPoint> candidates;
  uint64_t support = 0;
  ConvexRegion scratch;
  std::deque<Cube> queue{config.initial_volume};
  while (!queue.empty() &&
         static_cast<int>(candidates.size()) < config.max_candidates) {
    const Cube cube = queue.front();
    queue.pop_front();
    ++result.nodes_visited;

    const uint64_t mask = VoteMask(cube, resolved, config.pixel_tolerance, scratch);
    const int votes = std::popcount(mask);
    if (votes < config.sigma) continue;

    if ((cube.edges.array() < config.delta.array()).all()) {
      assert(votes >= config.sigma);
      candidates.push_back(cube.center);
      support |= mask;
      continue;
    }
    for (const Cube& child : cube.Children()) queue.push_back(child);
  }

  if (candidates.empty()) return result;

  // Canonical order so the mean does not depend on traversal order.
  std::sort(candidates.begin(), candidates.end(), LexLess);
  Vec3 sum = Vec3::Zero();
  for (const auto& c : candidates) sum += c;
  result.position = sum / static_cast<double>(candidates.size());
  result.candidate_count = static_cast<int>(candidates.size());
  result.status = EstimateStatus::kOk;
  result.candidates = std::move(candidates);
  for (size_t i = 0; i < resolved.size(); ++i) {
    if (support & (uint64_t{1} << i))
      result.supporting_views.push_back(resolved[i].camera->id);
  }
  std::sort(result.supporting_views.begin(), result.supporting_views.end());
  result.supporting_views.erase(
      std::unique(result.supporting_views.begin(),
                  result.supporting_views.end()),
      result.supporting_views.end());
  return result;
}

int64_t SkeletonEstimate::NodesVisited() const {
  int64_t total = 0;
  for (const auto& j : joints) total += j.nodes_visited;
  return total;
}

std::vector<std::vector<JointObservation>> GroupObservations(
    const JointObservationFrame& frame, const SkeletonTopology& topology) {
  std::vector<std::vector<JointObservation>> grouped(topology.NumJoints());
  for (int j = 0; j < topology.NumJoints(); ++j) {
    if (j == topology.root_joint) continue;
    grouped[j] = frame.ObservationsOf(j);
  }
  return grouped;
}

SkeletonEstimate EstimateSkeletonDetailed(const JointObservationFrame& frame,
                                          std::span<const CameraParams> cameras,
                                          const EstimatorConfig& config,
                                          const SkeletonTopology& topology) {
  return EstimateGroupedSkeleton(frame.frame, GroupObservations(frame, topology),
                                 cameras, config, topology);
}

SkeletonEstimate EstimateGroupedSkeleton(
    int frame_index, const std::vector<std::vector<JointObservation>>& grouped,
    std::span<const CameraParams> cameras, const EstimatorConfig& config,
    const SkeletonTopology& topology) {
  if (static_cast<int>(grouped.size()) != topology.NumJoints())
    throw Error(ErrorCode::kInvalidArgument,
                "grouped observations do not match the topology");
  SkeletonEstimate out{Skeleton3D(frame_index, topology.NumJoints()),
                       std::vector<JointEstimate>(topology.NumJoints())};
  for (int j = 0; j < topology.NumJoints(); ++j) {
    if (j == topology.root_joint) continue;
    out.joints[j] = EstimateJoint(grouped[j], cameras, config);
    if (out.joints[j].status == EstimateStatus::kOk)
      out.skeleton.positions[j] = out.joints[j].position;
  }

  SynthesizeRoot(out.skeleton, topology);
  if (out.skeleton.Has(topology.root_joint)) {
    JointEstimate& root = out.joints[topology.root_joint];
    root.status = EstimateStatus::kOk;
    root.position = *out.skeleton.positions[topology.root_joint];
    for (int s : topology.root_sources) {
      root.candidate_count += out.joints[s].candidate_count;
      root.supporting_views.insert(root.supporting_views.end(),
                                   out.joints[s].supporting_views.begin(),
                                   out.joints[s].supporting_views.end());
    }
    std::sort(root.supporting_views.begin(), root.supporting_views.end());
    root.supporting_views.erase(std::unique(root.supporting_views.begin(),
                                            root.supporting_views.end()),
                                root.supporting_views.end());
  }
  return out;
}

}  // namespace mocap
