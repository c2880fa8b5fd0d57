// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOCAP_SKELETON_H_
#define MOCAP_SKELETON_H_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mocap/geometry.h"

namespace mocap {

// Joint indices of the built-in body model. Indices 0-13 come from the 2D
// detector; the root is synthesized from the hips.
enum JointIndex : int {
  kHead = 0,
  kNeck = 1,
  kRShoulder = 2,
  kRElbow = 3,
  kRHand = 4,
  kLShoulder = 5,
  kLElbow = 6,
  kLHand = 7,
  kRHip = 8,
  kRKnee = 9,
  kRFoot = 10,
  kLHip = 11,
  kLKnee = 12,
  kLFoot = 13,
  kRoot = 14,
};

inline constexpr int kNumDetectedJoints = 14;
inline constexpr int kNumJoints = 15;

// Local coordinate classes of the T-pose. The local x axis points along the
// limb.
enum class FrameClass { kLeft = 0, kRight = 1, kUp = 2, kDown = 3 };

std::string_view ToString(FrameClass c);
std::optional<FrameClass> FrameClassFromString(std::string_view name);

struct JointDef {
  int index = 0;
  std::string name;
};

struct BoneDef {
  std::string name;
  int parent_joint = 0;
  int child_joint = 0;
  int parent_bone = -1;  // -1 for the root bone
  FrameClass frame_class = FrameClass::kUp;
};

struct SkeletonTopology {
  std::vector<JointDef> joints;
  // Parents precede children.
  std::vector<BoneDef> bones;
  int root_joint = kRoot;
  // The root position is the midpoint of these joints.
  std::vector<int> root_sources;

  static SkeletonTopology Default();

  // Throws Error(kInvalidArgument) when the bone graph is not a tree in
  // topological order or references unknown joints.
  void Validate() const;

  int NumJoints() const { return static_cast<int>(joints.size()); }
  int NumBones() const { return static_cast<int>(bones.size()); }
  // -1 if absent.
  int BoneIndex(std::string_view name) const;
  int JointIndexOf(std::string_view name) const;
  const std::string& JointName(int index) const;
};

struct TPoseTemplate {
  // Per bone, unit vector in global coordinates.
  std::vector<Vec3> rest_direction;
  // Indexed by FrameClass; maps local to global.
  std::array<Mat3, 4> frame_rotation;

  const Mat3& FrameRotation(FrameClass c) const {
    return frame_rotation[static_cast<int>(c)];
  }

  static TPoseTemplate Default(const SkeletonTopology& topology);

  void Validate(const SkeletonTopology& topology) const;
};

enum class JointStatus { kOk, kNoConsensus };

std::string_view ToString(JointStatus s);

// One frame's 3D joints. A joint is Ok exactly when its position is set.
struct Skeleton3D {
  int frame = 0;
  std::vector<std::optional<WorldPoint>> positions;

  explicit Skeleton3D(int frame_index = 0, int num_joints = kNumJoints)
      : frame(frame_index), positions(num_joints) {}

  JointStatus Status(int joint) const {
    return positions[joint] ? JointStatus::kOk : JointStatus::kNoConsensus;
  }
  bool Has(int joint) const {
    return joint >= 0 && joint < static_cast<int>(positions.size()) &&
           positions[joint].has_value();
  }
};

// Normalized (child - parent) of a bone. Throws Error(kMissingJoint) or
// Error(kZeroLengthBone) for endpoints closer than 1e-6 mm.
Vec3 BoneVector(const Skeleton3D& skeleton, int bone,
                const SkeletonTopology& topology);

// Sets the root to the midpoint of the topology's root sources when all of
// them are present, clears it otherwise.
void SynthesizeRoot(Skeleton3D& skeleton, const SkeletonTopology& topology);

}  // namespace mocap

#endif  // MOCAP_SKELETON_H_
