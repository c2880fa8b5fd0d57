// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

// Per-bone rotations relative to the T-pose template.
//
// Rotations act on column vectors. For every bone the observed direction is
// expressed in its parent's accumulated frame and then in the bone's class
// frame, where the rest direction is +x. The local rotation taking +x to that
// direction is spin corrected, conjugated back to global axes, and composed
// onto the parent: G_bone = G_parent * r_bone.

#ifndef MOCAP_RETARGET_H_
#define MOCAP_RETARGET_H_

#include <optional>
#include <string_view>
#include <vector>

#include "mocap/geometry.h"
#include "mocap/skeleton.h"

namespace mocap {

// Rotation R with R * x_ref == x_prime that fixes the axis x_prime × x_ref.
// Built from the orthogonal frames {x, y, z} with y = normalize(x_prime ×
// x_ref) shared by both and z = y × x. Returns identity when the inputs
// coincide. Throws Error(kDegenerateParallel) when they are antiparallel
// (|x_prime × x_ref| < 1e-6 and x_prime · x_ref < 0).
Mat3 FrameFromBone(const Vec3& x_prime, const Vec3& x_ref);

// As FrameFromBone, but an antiparallel pair is resolved by a half turn about
// `secondary` (made perpendicular to x_ref).
Mat3 FrameFromBoneWithFallback(const Vec3& x_prime, const Vec3& x_ref,
                               const Vec3& secondary);

// Rotation by `angle` about the unit `axis` (Rodrigues).
Mat3 Rodrigues(const Vec3& axis, double angle);

// Removes spin about the bone axis x' = rotation * e_x. The rotated y axis is
// turned about x' by the dihedral angle between the plane (x', y') and the
// plane (x', parent y) so that it lands on the parent y axis projected
// orthogonally to x'. Both signs of the angle are tried and the one whose y
// axis reaches the target is kept. The input is returned unchanged when the
// angle is ~0 or when x' is parallel to the parent y axis.
Mat3 SpinCorrect(const Mat3& rotation, const Mat3& parent_frame);

// Distance of the y axis of `rotation` from the plane spanned by its x axis
// and the y axis of `parent_frame`; 0 when that plane is undefined.
double SpinResidual(const Mat3& rotation, const Mat3& parent_frame);

// R_C * local * R_C^T.
Mat3 ToGlobal(const Mat3& local, FrameClass frame_class,
              const TPoseTemplate& tpl);

enum class BoneStatus { kOk, kFellBack };

std::string_view ToString(BoneStatus s);

struct BoneTransformSet {
  int frame = 0;
  // Per bone, [r 0; 0 1] with r the bone's rotation relative to its parent,
  // in global axes.
  std::vector<Mat4> transforms;
  std::vector<BoneStatus> statuses;

  Mat3 Rotation(int bone) const { return transforms[bone].topLeftCorner<3, 3>(); }
};

struct ChainRotations {
  // r_n per bone, global axes, relative to the parent bone.
  std::vector<Mat3> local;
  // Parent-then-local product along the chain.
  std::vector<Mat3> accumulated;
  std::vector<BoneStatus> statuses;
};

// Bones whose endpoints are missing or coincident fall back to the matching
// rotation of `previous` when given, identity otherwise.
ChainRotations ComputeChainRotations(const Skeleton3D& skeleton,
                                     const SkeletonTopology& topology,
                                     const TPoseTemplate& tpl,
                                     const BoneTransformSet* previous = nullptr);

BoneTransformSet RetargetFrame(const Skeleton3D& skeleton,
                               const SkeletonTopology& topology,
                               const TPoseTemplate& tpl,
                               const BoneTransformSet* previous = nullptr);

// Global bone directions obtained by composing the transforms along the chain
// and applying them to the template rest directions.
std::vector<Vec3> ForwardKinematicsDirections(const BoneTransformSet& transforms,
                                              const SkeletonTopology& topology,
                                              const TPoseTemplate& tpl);

// Retargets a sequence in order, holding the last rotation of bones whose
// joints go missing.
class SequenceRetargeter {
 public:
  SequenceRetargeter(SkeletonTopology topology, TPoseTemplate tpl)
      : topology_(std::move(topology)), template_(std::move(tpl)) {}

  BoneTransformSet Next(const Skeleton3D& skeleton);

 private:
  SkeletonTopology topology_;
  TPoseTemplate template_;
  std::optional<BoneTransformSet> previous_;
};

}  // namespace mocap

#endif  // MOCAP_RETARGET_H_
