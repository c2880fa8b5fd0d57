// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/synth.h"

#include <cmath>
#include <numbers>

#include <Eigen/Geometry>
#include <Eigen/SVD>

#include "mocap/error.h"
#include "mocap/io.h"

namespace mocap {

namespace {

constexpr double kPi = std::numbers::pi;

double Deg(double degrees) { return degrees * kPi / 180.0; }

Mat3 Rx(double a) { return Eigen::AngleAxisd(a, Vec3::UnitX()).toRotationMatrix(); }
Mat3 Ry(double a) { return Eigen::AngleAxisd(a, Vec3::UnitY()).toRotationMatrix(); }
Mat3 Rz(double a) { return Eigen::AngleAxisd(a, Vec3::UnitZ()).toRotationMatrix(); }

// Link lengths in mm; the T-pose places the root 930 mm above the floor.
constexpr double kRootHeight = 930.0;
constexpr double kHipHalfWidth = 100.0;
constexpr double kSpine = 520.0;
constexpr double kNeckToHead = 250.0;
constexpr double kShoulderWidth = 180.0;
constexpr double kUpperArm = 300.0;
constexpr double kLowerArm = 270.0;
constexpr double kThigh = 430.0;
constexpr double kShin = 420.0;

// Rotations of each link relative to its parent link, in global axes.
struct BodyPose {
  Vec3 root = Vec3(0.0, kFloorY + kRootHeight, 0.0);
  Mat3 pelvis = Mat3::Identity();
  Mat3 torso = Mat3::Identity();
  Mat3 head = Mat3::Identity();
  Mat3 r_shoulder = Mat3::Identity();
  Mat3 l_shoulder = Mat3::Identity();
  Mat3 r_upper_arm = Mat3::Identity();
  Mat3 l_upper_arm = Mat3::Identity();
  Mat3 r_lower_arm = Mat3::Identity();
  Mat3 l_lower_arm = Mat3::Identity();
  Mat3 r_upper_leg = Mat3::Identity();
  Mat3 l_upper_leg = Mat3::Identity();
  Mat3 r_lower_leg = Mat3::Identity();
  Mat3 l_lower_leg = Mat3::Identity();
};

Skeleton3D PoseToSkeleton(const BodyPose& pose, int frame) {
  Skeleton3D s(frame, kNumJoints);
  auto& p = s.positions;
  const Vec3 root = pose.root;
  const Vec3 r_hip = root + pose.pelvis * Vec3(-kHipHalfWidth, 0, 0);
  const Vec3 l_hip = root + pose.pelvis * Vec3(kHipHalfWidth, 0, 0);
  const Vec3 neck = root + pose.torso * Vec3(0, kSpine, 0);
  p[kRHip] = r_hip;
  p[kLHip] = l_hip;
  p[kRoot] = 0.5 * (r_hip + l_hip);
  p[kNeck] = neck;
  p[kHead] = neck + pose.torso * pose.head * Vec3(0, kNeckToHead, 0);

  const Mat3 r_sh = pose.torso * pose.r_shoulder;
  const Mat3 r_ua = r_sh * pose.r_upper_arm;
  const Mat3 r_la = r_ua * pose.r_lower_arm;
  p[kRShoulder] = neck + r_sh * Vec3(-kShoulderWidth, 0, 0);
  p[kRElbow] = *p[kRShoulder] + r_ua * Vec3(-kUpperArm, 0, 0);
  p[kRHand] = *p[kRElbow] + r_la * Vec3(-kLowerArm, 0, 0);

  const Mat3 l_sh = pose.torso * pose.l_shoulder;
  const Mat3 l_ua = l_sh * pose.l_upper_arm;
  const Mat3 l_la = l_ua * pose.l_lower_arm;
  p[kLShoulder] = neck + l_sh * Vec3(kShoulderWidth, 0, 0);
  p[kLElbow] = *p[kLShoulder] + l_ua * Vec3(kUpperArm, 0, 0);
  p[kLHand] = *p[kLElbow] + l_la * Vec3(kLowerArm, 0, 0);

  const Mat3 r_ul = pose.pelvis * pose.r_upper_leg;
  const Mat3 r_ll = r_ul * pose.r_lower_leg;
  p[kRKnee] = r_hip + r_ul * Vec3(0, -kThigh, 0);
  p[kRFoot] = *p[kRKnee] + r_ll * Vec3(0, -kShin, 0);

  const Mat3 l_ul = pose.pelvis * pose.l_upper_leg;
  const Mat3 l_ll = l_ul * pose.l_lower_leg;
  p[kLKnee] = l_hip + l_ul * Vec3(0, -kThigh, 0);
  p[kLFoot] = *p[kLKnee] + l_ll * Vec3(0, -kShin, 0);
  return s;
}

BodyPose WalkPose(int t) {
  const double phase = 2.0 * kPi * t / 48.0;
  BodyPose pose;
  pose.root.y() += 15.0 * std::cos(2.0 * phase);
  pose.root.z() = 700.0 * std::sin(2.0 * kPi * t / 200.0);
  pose.pelvis = Ry(Deg(6.0) * std::sin(phase));
  pose.torso = Ry(Deg(-4.0) * std::sin(phase)) * Rx(Deg(4.0));
  pose.head = Rx(Deg(5.0) * std::sin(2.0 * phase));

  // Negative rotation about x swings a hanging limb forward (+z).
  const double swing = Deg(25.0) * std::sin(phase);
  pose.r_upper_leg = Rx(-swing);
  pose.l_upper_leg = Rx(swing);
  pose.r_lower_leg = Rx(Deg(35.0) * std::max(0.0, std::sin(phase + 1.2)));
  pose.l_lower_leg = Rx(Deg(35.0) * std::max(0.0, std::sin(phase + 1.2 + kPi)));

  const double arm = Deg(20.0) * std::sin(phase);
  pose.r_upper_arm = Rx(arm) * Rz(Deg(72.0));
  pose.l_upper_arm = Rx(-arm) * Rz(Deg(-72.0));
  pose.r_lower_arm = Rx(Deg(-20.0));
  pose.l_lower_arm = Rx(Deg(-20.0));
  return pose;
}

BodyPose ArmWavePose(int t) {
  const double phase = 2.0 * kPi * t / 30.0;
  BodyPose pose;
  pose.r_upper_arm = Rz(Deg(-55.0));
  pose.r_lower_arm = Rz(Deg(-35.0) * (1.0 + std::sin(phase)));
  pose.l_upper_arm = Rz(Deg(-75.0)) * Ry(Deg(10.0) * std::sin(phase));
  pose.l_lower_arm = Rx(Deg(-15.0));
  pose.torso = Rz(Deg(3.0) * std::sin(phase));
  pose.head = Ry(Deg(15.0) * std::sin(0.5 * phase));
  return pose;
}

BodyPose SquatPose(int t) {
  const double phase = 2.0 * kPi * t / 60.0;
  const double depth = 0.5 * (1.0 - std::cos(phase));
  const double thigh = Deg(50.0) * depth;
  BodyPose pose;
  pose.root.y() -= (kThigh + kShin) * (1.0 - std::cos(thigh));
  pose.torso = Rx(-0.4 * thigh);
  pose.r_upper_leg = Rx(-thigh);
  pose.l_upper_leg = Rx(-thigh);
  pose.r_lower_leg = Rx(2.0 * thigh);
  pose.l_lower_leg = Rx(2.0 * thigh);
  pose.r_upper_arm = Ry(Deg(80.0) * depth);
  pose.l_upper_arm = Ry(Deg(-80.0) * depth);
  return pose;
}

uint64_t SplitMix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::mt19937_64 StreamRng(uint64_t seed, uint64_t stream) {
  return std::mt19937_64(SplitMix64(SplitMix64(seed) ^ SplitMix64(~stream)));
}

double Uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double StandardNormal(std::mt19937_64& rng) {
  // Box-Muller; u1 in (0, 1].
  const double u1 = (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = Uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

std::vector<std::string> ScenePresets() {
  return {"tpose-static", "walk", "arm-wave", "squat"};
}

Skeleton3D TPoseSkeleton(int frame) { return PoseToSkeleton(BodyPose{}, frame); }

CameraParams LookAtCamera(int id, const Vec3& center, const Vec3& target,
                          double focal_px, int width, int height) {
  const Vec3 forward = (target - center).normalized();
  const Vec3 right = forward.cross(Vec3::UnitY()).normalized();
  const Vec3 down = forward.cross(right);
  CameraParams cam;
  cam.id = id;
  cam.rotation.row(0) = right;
  cam.rotation.row(1) = down;
  cam.rotation.row(2) = forward;
  cam.translation = -cam.rotation * center;
  cam.intrinsic << focal_px, 0, 0.5 * width,  //
      0, focal_px, 0.5 * height,              //
      0, 0, 1;
  cam.width = width;
  cam.height = height;
  return cam;
}

std::vector<CameraParams> MakeCameraRing(const RigOptions& rig, uint64_t seed) {
  std::mt19937_64 rng = StreamRng(seed, 0xCA11B);
  std::vector<CameraParams> cameras;
  for (int i = 0; i < rig.num_cameras; ++i) {
    double angle = 2.0 * kPi * i / rig.num_cameras + kPi / 2.0;
    double radius = rig.ring_radius;
    double height = rig.camera_height;
    Vec3 target(0.0, -150.0, 0.0);
    if (rig.jitter) {
      angle += Deg(3.0) * (2.0 * Uniform01(rng) - 1.0);
      radius += 100.0 * (2.0 * Uniform01(rng) - 1.0);
      height += 50.0 * (2.0 * Uniform01(rng) - 1.0);
      target.y() += 50.0 * (2.0 * Uniform01(rng) - 1.0);
    }
    const Vec3 center(radius * std::cos(angle), height, radius * std::sin(angle));
    cameras.push_back(
        LookAtCamera(i, center, target, rig.focal_px, rig.width, rig.height));
  }
  return cameras;
}

SyntheticScene GenerateScene(std::string_view preset, int frames,
                             double noise_px, double dropout, uint64_t seed,
                             const RigOptions& rig) {
  if (frames < 1) throw Error(ErrorCode::kInvalidArgument, "frames must be >= 1");
  if (noise_px < 0.0 || dropout < 0.0 || dropout > 1.0) {
    throw Error(ErrorCode::kInvalidArgument, "bad noise or dropout");
  }
  BodyPose (*motion)(int) = nullptr;
  if (preset == "tpose-static") {
    motion = [](int) { return BodyPose{}; };
  } else if (preset == "walk") {
    motion = WalkPose;
  } else if (preset == "arm-wave") {
    motion = ArmWavePose;
  } else if (preset == "squat") {
    motion = SquatPose;
  } else {
    throw Error(ErrorCode::kUnknownPreset, std::string(preset));
  }

  SyntheticScene scene;
  scene.preset = std::string(preset);
  // Cameras as a reader of the emitted calibration file sees them.
  scene.cameras = ParseCalibration(FormatCalibration(MakeCameraRing(rig, seed)));
  scene.noise_px = noise_px;
  scene.dropout = dropout;
  scene.rng_seed = seed;
  scene.truth.reserve(frames);
  for (int t = 0; t < frames; ++t) scene.truth.push_back(PoseToSkeleton(motion(t), t));
  return scene;
}

std::vector<JointObservationFrame> RenderObservations(
    const SyntheticScene& scene) {
  std::vector<JointObservationFrame> frames;
  frames.reserve(scene.truth.size());
  for (const Skeleton3D& truth : scene.truth) {
    std::mt19937_64 rng = StreamRng(scene.rng_seed, static_cast<uint64_t>(truth.frame));
    JointObservationFrame frame;
    frame.frame = truth.frame;
    for (const CameraParams& cam : scene.cameras) {
      ViewKeypoints view;
      view.view_id = cam.id;
      for (int j = 0; j < kNumDetectedJoints; ++j) {
        // Draw unconditionally so one joint's fate never shifts another's.
        const double du = StandardNormal(rng);
        const double dv = StandardNormal(rng);
        const double keep = Uniform01(rng);
        if (!truth.Has(j) || keep < scene.dropout) continue;
        const WorldPoint& p = *truth.positions[j];
        if (!(cam.DepthOf(p) > 0.0)) continue;
        const PixelPoint px = Project(p, cam) + scene.noise_px * Vec2(du, dv);
        view.joints.push_back({j, px, 1.0});
      }
      frame.views.push_back(std::move(view));
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

WorldPoint DltTriangulate(std::span<const JointObservation> observations,
                          std::span<const CameraParams> cameras) {
  std::vector<Eigen::RowVector4d> rows;
  for (const auto& obs : observations) {
    const CameraParams* cam = nullptr;
    for (const auto& c : cameras) {
      if (c.id == obs.view_id) cam = &c;
    }
    if (cam == nullptr) continue;
    const Mat34 p = cam->ProjectionMatrix();
    rows.push_back(obs.pixel.x() * p.row(2) - p.row(0));
    rows.push_back(obs.pixel.y() * p.row(2) - p.row(1));
  }
  if (rows.size() < 4) {
    throw Error(ErrorCode::kRankDeficient, "need at least two views");
  }
  // Solve in meters for conditioning.
  constexpr double kScale = 1000.0;
  Eigen::MatrixXd design(rows.size(), 4);
  for (size_t i = 0; i < rows.size(); ++i) {
    Eigen::RowVector4d r = rows[i];
    r.head<3>() *= kScale;
    design.row(i) = r.normalized();
  }

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(design, Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  if (sv(2) <= 1e-10 * sv(0)) {
    throw Error(ErrorCode::kRankDeficient, "rays do not constrain a point");
  }
  const Eigen::Vector4d x = svd.matrixV().col(3);
  if (std::abs(x(3)) < 1e-15) {
    throw Error(ErrorCode::kRankDeficient, "solution at infinity");
  }
  return kScale * x.head<3>() / x(3);
}

}  // namespace mocap
