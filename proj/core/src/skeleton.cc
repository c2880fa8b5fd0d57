// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/skeleton.h"

#include <cmath>
#include <set>

#include "mocap/error.h"

namespace mocap {

std::string_view ToString(FrameClass c) {
  switch (c) {
    case FrameClass::kLeft:
      return "left";
    case FrameClass::kRight:
      return "right";
    case FrameClass::kUp:
      return "up";
    case FrameClass::kDown:
      return "down";
  }
  return "unknown";
}

std::optional<FrameClass> FrameClassFromString(std::string_view name) {
  if (name == "left") return FrameClass::kLeft;
  if (name == "right") return FrameClass::kRight;
  if (name == "up") return FrameClass::kUp;
  if (name == "down") return FrameClass::kDown;
  return std::nullopt;
}

std::string_view ToString(JointStatus s) {
  return s == JointStatus::kOk ? "Ok" : "NoConsensus";
}

SkeletonTopology SkeletonTopology::Default() {
  SkeletonTopology t;
  t.joints = {{kHead, "Head"},         {kNeck, "Neck"},
              {kRShoulder, "R_Shoulder"}, {kRElbow, "R_Elbow"},
              {kRHand, "R_Hand"},       {kLShoulder, "L_Shoulder"},
              {kLElbow, "L_Elbow"},     {kLHand, "L_Hand"},
              {kRHip, "R_Hip"},         {kRKnee, "R_Knee"},
              {kRFoot, "R_Foot"},       {kLHip, "L_Hip"},
              {kLKnee, "L_Knee"},       {kLFoot, "L_Foot"},
              {kRoot, "Torso"}};
  using FC = FrameClass;
  t.bones = {
      {"torso", kRoot, kNeck, -1, FC::kUp},
      {"head", kNeck, kHead, 0, FC::kUp},
      {"r_shoulder", kNeck, kRShoulder, 0, FC::kRight},
      {"l_shoulder", kNeck, kLShoulder, 0, FC::kLeft},
      {"r_upper_arm", kRShoulder, kRElbow, 2, FC::kRight},
      {"l_upper_arm", kLShoulder, kLElbow, 3, FC::kLeft},
      {"r_lower_arm", kRElbow, kRHand, 4, FC::kRight},
      {"l_lower_arm", kLElbow, kLHand, 5, FC::kLeft},
      {"r_upper_leg", kRHip, kRKnee, 0, FC::kDown},
      {"l_upper_leg", kLHip, kLKnee, 0, FC::kDown},
      {"r_lower_leg", kRKnee, kRFoot, 8, FC::kDown},
      {"l_lower_leg", kLKnee, kLFoot, 9, FC::kDown},
  };
  t.root_joint = kRoot;
  t.root_sources = {kRHip, kLHip};
  return t;
}

void SkeletonTopology::Validate() const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "topology: " + what);
  };
  for (int i = 0; i < NumJoints(); ++i) {
    if (joints[i].index != i) fail("joint indices must be 0..n-1 in order");
  }
  if (root_joint < 0 || root_joint >= NumJoints()) fail("bad root joint");
  for (int s : root_sources) {
    if (s < 0 || s >= NumJoints() || s == root_joint) fail("bad root source");
  }
  int roots = 0;
  std::set<std::string> names;
  for (int b = 0; b < NumBones(); ++b) {
    const BoneDef& bone = bones[b];
    if (!names.insert(bone.name).second) fail("duplicate bone " + bone.name);
    if (bone.parent_joint < 0 || bone.parent_joint >= NumJoints() ||
        bone.child_joint < 0 || bone.child_joint >= NumJoints() ||
        bone.parent_joint == bone.child_joint) {
      fail("bone " + bone.name + " has invalid endpoints");
    }
    if (bone.parent_bone < 0) {
      ++roots;
    } else if (bone.parent_bone >= b) {
      fail("bone " + bone.name + " precedes its parent");
    }
  }
  if (roots != 1) fail("exactly one root bone required");
}

int SkeletonTopology::BoneIndex(std::string_view name) const {
  for (int b = 0; b < NumBones(); ++b) {
    if (bones[b].name == name) return b;
  }
  return -1;
}

int SkeletonTopology::JointIndexOf(std::string_view name) const {
  for (const auto& j : joints) {
    if (j.name == name) return j.index;
  }
  return -1;
}

const std::string& SkeletonTopology::JointName(int index) const {
  return joints.at(index).name;
}

TPoseTemplate TPoseTemplate::Default(const SkeletonTopology& topology) {
  TPoseTemplate tpl;
  Mat3 left = Mat3::Identity();
  Mat3 right;
  right << -1, 0, 0,  //
      0, 1, 0,        //
      0, 0, -1;
  Mat3 up;
  up << 0, -1, 0,  //
      1, 0, 0,     //
      0, 0, 1;
  Mat3 down;
  down << 0, 1, 0,  //
      -1, 0, 0,     //
      0, 0, 1;
  tpl.frame_rotation = {left, right, up, down};
  tpl.rest_direction.reserve(topology.bones.size());
  for (const auto& bone : topology.bones) {
    tpl.rest_direction.push_back(tpl.FrameRotation(bone.frame_class).col(0));
  }
  return tpl;
}

void TPoseTemplate::Validate(const SkeletonTopology& topology) const {
  auto fail = [](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument, "template: " + what);
  };
  if (rest_direction.size() != topology.bones.size())
    fail("one rest direction per bone required");
  for (const Mat3& r : frame_rotation) {
    if (!(r * r.transpose()).isApprox(Mat3::Identity(), 1e-12) ||
        std::abs(r.determinant() - 1.0) > 1e-12) {
      fail("frame rotation is not a proper rotation");
    }
  }
  for (int b = 0; b < topology.NumBones(); ++b) {
    const Vec3& d = rest_direction[b];
    if (std::abs(d.norm() - 1.0) > 1e-9) fail("rest direction not unit");
    const Vec3 axis = FrameRotation(topology.bones[b].frame_class).col(0);
    if ((axis - d).norm() > 1e-9) {
      fail("rest direction of " + topology.bones[b].name +
           " disagrees with its frame class");
    }
  }
}

Vec3 BoneVector(const Skeleton3D& skeleton, int bone,
                const SkeletonTopology& topology) {
  const BoneDef& def = topology.bones.at(bone);
  if (!skeleton.Has(def.parent_joint) || !skeleton.Has(def.child_joint)) {
    throw Error(ErrorCode::kMissingJoint, "bone " + def.name);
  }
  const Vec3 d = *skeleton.positions[def.child_joint] -
                 *skeleton.positions[def.parent_joint];
  const double len = d.norm();
  if (len < 1e-6) throw Error(ErrorCode::kZeroLengthBone, "bone " + def.name);
  return d / len;
}

void SynthesizeRoot(Skeleton3D& skeleton, const SkeletonTopology& topology) {
  if (topology.root_sources.empty()) return;
  Vec3 sum = Vec3::Zero();
  for (int s : topology.root_sources) {
    if (!skeleton.Has(s)) {
      skeleton.positions[topology.root_joint].reset();
      return;
    }
    sum += *skeleton.positions[s];
  }
  skeleton.positions[topology.root_joint] =
      sum / static_cast<double>(topology.root_sources.size());
}

}  // namespace mocap
