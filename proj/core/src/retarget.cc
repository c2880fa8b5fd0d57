// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/retarget.h"

#include <cmath>
#include <numbers>

#include "mocap/error.h"

namespace mocap {

namespace {

constexpr double kParallelTolerance = 1e-6;

Mat3 Skew(const Vec3& v) {
  Mat3 k;
  k << 0, -v.z(), v.y(),  //
      v.z(), 0, -v.x(),   //
      -v.y(), v.x(), 0;
  return k;
}

// Shortest-arc rotation from `from` to `to` for nearly aligned unit vectors.
Mat3 SmallArc(const Vec3& from, const Vec3& to) {
  const Vec3 w = from.cross(to);
  const double c = from.dot(to);
  const Mat3 k = Skew(w);
  return Mat3::Identity() + k + k * k / (1.0 + c);
}

Mat4 Assemble(const Mat3& r) {
  Mat4 t = Mat4::Identity();
  t.topLeftCorner<3, 3>() = r;
  return t;
}

}  // namespace

std::string_view ToString(BoneStatus s) {
  return s == BoneStatus::kOk ? "Ok" : "FellBack";
}

Mat3 FrameFromBone(const Vec3& x_prime, const Vec3& x_ref) {
  const Vec3 x = x_prime.normalized();
  const Vec3 ref = x_ref.normalized();
  const Vec3 cross = x.cross(ref);
  const double s = cross.norm();
  if (s < kParallelTolerance) {
    if (x.dot(ref) < 0.0) {
      throw Error(ErrorCode::kDegenerateParallel,
                  "bone direction opposes the reference axis");
    }
    return SmallArc(ref, x);
  }
  const Vec3 y = cross / s;
  Mat3 observed;
  observed.col(0) = x;
  observed.col(1) = y;
  observed.col(2) = y.cross(x);
  Mat3 reference;
  reference.col(0) = ref;
  reference.col(1) = y;
  reference.col(2) = y.cross(ref);
  return observed * reference.transpose();
}

Mat3 FrameFromBoneWithFallback(const Vec3& x_prime, const Vec3& x_ref,
                               const Vec3& secondary) {
  const Vec3 x = x_prime.normalized();
  const Vec3 ref = x_ref.normalized();
  if (x.cross(ref).norm() >= kParallelTolerance || x.dot(ref) >= 0.0) {
    return FrameFromBone(x, ref);
  }
  Vec3 axis = secondary - secondary.dot(ref) * ref;
  if (axis.norm() < kParallelTolerance) {
    // Secondary is useless; any perpendicular will do.
    axis = ref.unitOrthogonal();
  }
  const Mat3 half_turn = Rodrigues(axis.normalized(), std::numbers::pi);
  return SmallArc(-ref, x) * half_turn;
}

Mat3 Rodrigues(const Vec3& axis, double angle) {
  const Mat3 k = Skew(axis);
  return Mat3::Identity() + std::sin(angle) * k +
         (1.0 - std::cos(angle)) * k * k;
}

Mat3 SpinCorrect(const Mat3& rotation, const Mat3& parent_frame) {
  const Vec3 x = rotation.col(0);
  const Vec3 y = rotation.col(1);
  const Vec3 parent_y = parent_frame.col(1);
  Vec3 target = parent_y - parent_y.dot(x) * x;
  const double len = target.norm();
  if (len < 1e-9) return rotation;
  target /= len;

  // Dihedral angle between the half-planes (x', y') and (x', target).
  const double theta = std::atan2(y.cross(target).norm(), y.dot(target));
  if (theta < 1e-12) return rotation;

  const Mat3 plus = Rodrigues(x, theta) * rotation;
  const Mat3 minus = Rodrigues(x, -theta) * rotation;
  const double err_plus = (plus.col(1) - target).norm();
  const double err_minus = (minus.col(1) - target).norm();
  if (std::abs(err_plus - err_minus) < 1e-15) return rotation;
  return err_plus < err_minus ? plus : minus;
}

double SpinResidual(const Mat3& rotation, const Mat3& parent_frame) {
  const Vec3 normal = rotation.col(0).cross(parent_frame.col(1));
  const double len = normal.norm();
  if (len < 1e-9) return 0.0;
  return std::abs(rotation.col(1).dot(normal / len));
}

Mat3 ToGlobal(const Mat3& local, FrameClass frame_class,
              const TPoseTemplate& tpl) {
  const Mat3& rc = tpl.FrameRotation(frame_class);
  return rc * local * rc.transpose();
}

ChainRotations ComputeChainRotations(const Skeleton3D& skeleton,
                                     const SkeletonTopology& topology,
                                     const TPoseTemplate& tpl,
                                     const BoneTransformSet* previous) {
  const int n = topology.NumBones();
  ChainRotations out{std::vector<Mat3>(n, Mat3::Identity()),
                     std::vector<Mat3>(n, Mat3::Identity()),
                     std::vector<BoneStatus>(n, BoneStatus::kOk)};
  for (int b = 0; b < n; ++b) {
    const BoneDef& bone = topology.bones[b];
    const Mat3 parent = bone.parent_bone >= 0 ? out.accumulated[bone.parent_bone]
                                              : Mat3::Identity();
    std::optional<Vec3> observed;
    try {
      observed = BoneVector(skeleton, b, topology);
    } catch (const Error&) {
      // Missing or zero-length bone: handled below.
    }

    if (!observed) {
      out.statuses[b] = BoneStatus::kFellBack;
      if (previous != nullptr && b < static_cast<int>(previous->transforms.size()))
        out.local[b] = previous->Rotation(b);
    } else {
      const Mat3& rc = tpl.FrameRotation(bone.frame_class);
      const Vec3 in_class = rc.transpose() * (parent.transpose() * *observed);
      const Mat3 swing =
          FrameFromBoneWithFallback(in_class, Vec3::UnitX(), Vec3::UnitY());
      // Relative to the parent, the bone's rest frame is the identity.
      const Mat3 corrected = SpinCorrect(swing, Mat3::Identity());
      out.local[b] = ToGlobal(corrected, bone.frame_class, tpl);
    }
    out.accumulated[b] = parent * out.local[b];
  }
  return out;
}

BoneTransformSet RetargetFrame(const Skeleton3D& skeleton,
                               const SkeletonTopology& topology,
                               const TPoseTemplate& tpl,
                               const BoneTransformSet* previous) {
  const ChainRotations chain =
      ComputeChainRotations(skeleton, topology, tpl, previous);
  BoneTransformSet out;
  out.frame = skeleton.frame;
  out.statuses = chain.statuses;
  out.transforms.reserve(chain.local.size());
  for (const Mat3& r : chain.local) out.transforms.push_back(Assemble(r));
  return out;
}

std::vector<Vec3> ForwardKinematicsDirections(const BoneTransformSet& transforms,
                                              const SkeletonTopology& topology,
                                              const TPoseTemplate& tpl) {
  const int n = topology.NumBones();
  std::vector<Mat3> global(n);
  std::vector<Vec3> directions(n);
  for (int b = 0; b < n; ++b) {
    const int p = topology.bones[b].parent_bone;
    const Mat3 parent = p >= 0 ? global[p] : Mat3::Identity();
    global[b] = parent * transforms.Rotation(b);
    directions[b] = global[b] * tpl.rest_direction[b];
  }
  return directions;
}

BoneTransformSet SequenceRetargeter::Next(const Skeleton3D& skeleton) {
  BoneTransformSet out = RetargetFrame(skeleton, topology_, template_,
                                       previous_ ? &*previous_ : nullptr);
  previous_ = out;
  return out;
}

}  // namespace mocap
