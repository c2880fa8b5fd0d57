// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

// Synthetic capture rig, parametric motions, and a DLT triangulation oracle.

#ifndef MOCAP_SYNTH_H_
#define MOCAP_SYNTH_H_

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mocap/geometry.h"
#include "mocap/skeleton.h"
#include "mocap/voxel_estimator.h"

namespace mocap {

struct RigOptions {
  int num_cameras = 5;
  double ring_radius = 3300.0;
  // World y of the camera centers. The world origin is the capture center,
  // 1 m above the floor.
  double camera_height = 500.0;
  double focal_px = 1400.0;
  int width = 1920;
  int height = 1080;
  // Seeded perturbation of ring radius, height and angle.
  bool jitter = true;
};

struct SyntheticScene {
  std::string preset;
  std::vector<CameraParams> cameras;
  std::vector<Skeleton3D> truth;
  double noise_px = 0.0;
  double dropout = 0.0;
  uint64_t rng_seed = 0;
};

// World y of the floor.
inline constexpr double kFloorY = -1000.0;

// Known presets: "tpose-static", "walk", "arm-wave", "squat".
std::vector<std::string> ScenePresets();

// Throws Error(kUnknownPreset) or Error(kInvalidArgument) for frames < 1.
SyntheticScene GenerateScene(std::string_view preset, int frames,
                             double noise_px, double dropout, uint64_t seed,
                             const RigOptions& rig = {});

// The T-pose body, 1700 mm tall, feet on the floor, root included.
Skeleton3D TPoseSkeleton(int frame = 0);

std::vector<CameraParams> MakeCameraRing(const RigOptions& rig, uint64_t seed);

// Camera at `center` looking at `target` with world +y up in the image.
CameraParams LookAtCamera(int id, const Vec3& center, const Vec3& target,
                          double focal_px, int width, int height);

// Projects the truth into every view, adds pixel noise and drops joints.
// Each frame draws from its own generator derived from the scene seed.
std::vector<JointObservationFrame> RenderObservations(
    const SyntheticScene& scene);

// Deterministic generator for one stream (frame) of a seeded run.
std::mt19937_64 StreamRng(uint64_t seed, uint64_t stream);

// Standard normal sample built from raw generator output, so results do not
// depend on the standard library's distribution implementation.
double StandardNormal(std::mt19937_64& rng);
double Uniform01(std::mt19937_64& rng);

// Linear least-squares triangulation from all observations. Throws
// Error(kRankDeficient) for fewer than two usable views or degenerate rays.
WorldPoint DltTriangulate(std::span<const JointObservation> observations,
                          std::span<const CameraParams> cameras);

}  // namespace mocap

#endif  // MOCAP_SYNTH_H_
