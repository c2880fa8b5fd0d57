// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/geometry.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mocap/error.h"

namespace mocap {

namespace {

double Cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

bool AllFinite(const Eigen::MatrixXd& m) { return m.allFinite(); }

}  // namespace

void CameraParams::Validate() const {
  auto fail = [this](const std::string& what) {
    throw Error(ErrorCode::kInvalidArgument,
                "camera " + std::to_string(id) + ": " + what);
  };
  if (!AllFinite(intrinsic) || !AllFinite(rotation) || !AllFinite(translation))
    fail("non-finite parameters");
  if (intrinsic(0, 0) <= 0.0 || intrinsic(1, 1) <= 0.0)
    fail("focal lengths must be positive");
  if (intrinsic(2, 0) != 0.0 || intrinsic(2, 1) != 0.0 ||
      intrinsic(2, 2) != 1.0)
    fail("intrinsic bottom row must be [0 0 1]");
  if (!(rotation * rotation.transpose()).isApprox(Mat3::Identity(), 1e-9) ||
      std::abs(rotation.determinant() - 1.0) > 1e-9)
    fail("rotation is not a proper orthonormal matrix");
  if (width <= 0 || height <= 0) fail("resolution must be positive");
}

Mat34 CameraParams::ProjectionMatrix() const {
  Mat34 rt;
  rt.leftCols<3>() = rotation;
  rt.col(3) = translation;
  return intrinsic * rt;
}

std::array<WorldPoint, 8> Cube::Vertices() const {
  const Vec3 half = 0.5 * edges;
  std::array<WorldPoint, 8> out;
  for (int i = 0; i < 8; ++i) {
    const Vec3 sign((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0,
                    (i & 4) ? 1.0 : -1.0);
    out[i] = center + sign.cwiseProduct(half);
  }
  return out;
}

std::array<Cube, 8> Cube::Children() const {
  const Vec3 half = 0.5 * edges;
  const Vec3 quarter = 0.25 * edges;
  std::array<Cube, 8> out;
  for (int i = 0; i < 8; ++i) {
    const Vec3 sign((i & 1) ? 1.0 : -1.0, (i & 2) ? 1.0 : -1.0,
                    (i & 4) ? 1.0 : -1.0);
    out[i] = Cube{center + sign.cwiseProduct(quarter), half};
  }
  return out;
}

bool Cube::Contains(const WorldPoint& p) const {
  return ((p - center).cwiseAbs().array() <= (0.5 * edges).array()).all();
}

double ConvexRegion::Area() const {
  const size_t n = vertices.size();
  if (n < 3) return 0.0;
  double twice = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = vertices[i];
    const Vec2& b = vertices[(i + 1) % n];
    twice += a.x() * b.y() - b.x() * a.y();
  }
  return 0.5 * twice;
}

PixelPoint Project(const WorldPoint& p, const CameraParams& cam) {
  const Vec3 pc = cam.rotation * p + cam.translation;
  if (!(pc.z() > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDepth,
                "point has depth " + std::to_string(pc.z()) + " in camera " +
                    std::to_string(cam.id));
  }
  const Vec3 h = cam.intrinsic * pc;
  return {h.x() / h.z(), h.y() / h.z()};
}

ConvexRegion ConvexHull(std::span<const PixelPoint> points) {
  std::vector<PixelPoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Vec2& a, const Vec2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  ConvexRegion region;
  if (pts.size() < 3) {
    region.vertices = std::move(pts);
    return region;
  }

  std::vector<PixelPoint>& hull = region.vertices;
  hull.resize(2 * pts.size());
  size_t k = 0;
  for (size_t i = 0; i < pts.size(); ++i) {
    while (k >= 2 && Cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (size_t i = pts.size() - 1, lower = k + 1; i > 0; --i) {
    while (k >= lower && Cross(hull[k - 2], hull[k - 1], pts[i - 1]) <= 0.0)
      --k;
    hull[k++] = pts[i - 1];
  }
  // The last point equals the first.
  hull.resize(k - 1);
  return region;
}

bool TryCubeProjectionRegion(const Cube& cube, const CameraParams& cam,
                             ConvexRegion& out) {
  std::array<PixelPoint, 8> projected;
  const auto vertices = cube.Vertices();
  for (int i = 0; i < 8; ++i) {
    const Vec3 pc = cam.rotation * vertices[i] + cam.translation;
    if (!(pc.z() > 0.0)) return false;
    const Vec3 h = cam.intrinsic * pc;
    projected[i] = {h.x() / h.z(), h.y() / h.z()};
  }
  out = ConvexHull(projected);
  return true;
}

ConvexRegion CubeProjectionRegion(const Cube& cube, const CameraParams& cam) {
  ConvexRegion region;
  if (!TryCubeProjectionRegion(cube, cam, region)) {
    throw Error(ErrorCode::kNonPositiveDepth,
                "cube vertex behind camera " + std::to_string(cam.id));
  }
  return region;
}

bool RegionContains(const ConvexRegion& region, const PixelPoint& p) {
  const auto& v = region.vertices;
  const size_t n = v.size();
  if (n == 0) return false;

  // Tolerance for boundary hits, relative to the region's scale.
  double scale = std::max(1.0, p.cwiseAbs().maxCoeff());
  for (const auto& q : v) scale = std::max(scale, q.cwiseAbs().maxCoeff());
  const double eps = 1e-12 * scale;

  if (n == 1) return (p - v[0]).norm() <= eps;
  if (n == 2) {
    const Vec2 d = v[1] - v[0];
    const double len = d.norm();
    if (std::abs(Cross(v[0], v[1], p)) > eps * std::max(1.0, len)) return false;
    const double t = (p - v[0]).dot(d);
    return t >= -eps * len && t <= len * len + eps * len;
  }
  for (size_t i = 0; i < n; ++i) {
    const Vec2& a = v[i];
    const Vec2& b = v[(i + 1) % n];
    if (Cross(a, b, p) < -eps * std::max(1.0, (b - a).norm())) return false;
  }
  return true;
}

double RegionDistance(const ConvexRegion& region, const PixelPoint& p) {
  const auto& v = region.vertices;
  if (v.empty()) return std::numeric_limits<double>::infinity();
  if (RegionContains(region, p)) return 0.0;
  if (v.size() == 1) return (p - v[0]).norm();
  double best = std::numeric_limits<double>::infinity();
  const size_t edges = v.size() == 2 ? 1 : v.size();
  for (size_t i = 0; i < edges; ++i) {
    const Vec2& a = v[i];
    const Vec2 d = v[(i + 1) % v.size()] - a;
    const double len2 = d.squaredNorm();
    const double t = len2 > 0.0 ? std::clamp((p - a).dot(d) / len2, 0.0, 1.0) : 0.0;
    best = std::min(best, (p - (a + t * d)).norm());
  }
  return best;
}

}  // namespace mocap
