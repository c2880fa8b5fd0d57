// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef MOCAP_GEOMETRY_H_
#define MOCAP_GEOMETRY_H_

#include <array>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace mocap {

using Vec2 = Eigen::Vector2d;
using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Mat34 = Eigen::Matrix<double, 3, 4>;
using Mat4 = Eigen::Matrix4d;

// Pixel coordinates; may lie outside the image rectangle.
using PixelPoint = Vec2;
// World coordinates in millimeters. Right-handed, +y up.
using WorldPoint = Vec3;

// Pinhole camera without lens distortion. `rotation` and `translation` map
// world coordinates to camera coordinates; the camera looks down +z.
struct CameraParams {
  int id = 0;
  Mat3 intrinsic = Mat3::Identity();
  Mat3 rotation = Mat3::Identity();
  Vec3 translation = Vec3::Zero();
  int width = 0;
  int height = 0;

  // Throws Error(kInvalidArgument) when an invariant does not hold.
  void Validate() const;

  // K [R | t]
  Mat34 ProjectionMatrix() const;

  Vec3 Center() const { return -rotation.transpose() * translation; }

  double DepthOf(const WorldPoint& p) const {
    return rotation.row(2).dot(p) + translation.z();
  }
};

// Axis-aligned box with edges (w, h, l) along (x, y, z).
struct Cube {
  WorldPoint center = WorldPoint::Zero();
  Vec3 edges = Vec3::Zero();

  std::array<WorldPoint, 8> Vertices() const;
  std::array<Cube, 8> Children() const;
  double HalfDiagonal() const { return 0.5 * edges.norm(); }
  bool Contains(const WorldPoint& p) const;
};

// Convex polygon in counter-clockwise order. One or two vertices describe a
// point or a segment.
struct ConvexRegion {
  std::vector<PixelPoint> vertices;

  double Area() const;
};

// Throws Error(kNonPositiveDepth) if the point is not in front of the camera.
PixelPoint Project(const WorldPoint& p, const CameraParams& cam);

// Hull of the eight projected cube vertices. Throws Error(kNonPositiveDepth)
// if any vertex is on or behind the camera plane.
ConvexRegion CubeProjectionRegion(const Cube& cube, const CameraParams& cam);

// Same as CubeProjectionRegion but reports a failed depth test by returning
// false instead of throwing. Reuses `out` storage.
bool TryCubeProjectionRegion(const Cube& cube, const CameraParams& cam,
                             ConvexRegion& out);

// Andrew's monotone chain. Collinear points are dropped; output is CCW.
ConvexRegion ConvexHull(std::span<const PixelPoint> points);

// Boundary-inclusive point-in-convex-polygon test.
bool RegionContains(const ConvexRegion& region, const PixelPoint& p);

// Euclidean distance from `p` to the region; 0 inside or on the boundary.
double RegionDistance(const ConvexRegion& region, const PixelPoint& p);

}  // namespace mocap

#endif  // MOCAP_GEOMETRY_H_
