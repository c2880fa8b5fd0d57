// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/geometry.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "mocap/error.h"
#include "test_util.h"

namespace mocap {
namespace {

using testing::RandomCamera;
using testing::Uniform;

CameraParams SimpleCamera(double f = 1000.0, double cx = 960.0, double cy = 540.0) {
  CameraParams cam;
  cam.intrinsic << f, 0, cx, 0, f, cy, 0, 0, 1;
  cam.width = 1920;
  cam.height = 1080;
  return cam;
}

double Cross(const Vec2& o, const Vec2& a, const Vec2& b) {
  return (a - o).x() * (b - o).y() - (a - o).y() * (b - o).x();
}

// Extreme points found by elimination: a point is dropped when it lies in a
// triangle of three others. Then sorted by angle and summed (shoelace).
double BruteForceHullArea(const std::vector<Vec2>& pts) {
  auto in_triangle = [](const Vec2& p, const Vec2& a, const Vec2& b, const Vec2& c) {
    const double d1 = Cross(a, b, p), d2 = Cross(b, c, p), d3 = Cross(c, a, p);
    const bool neg = d1 < 0 || d2 < 0 || d3 < 0;
    const bool pos = d1 > 0 || d2 > 0 || d3 > 0;
    return !(neg && pos);
  };
  std::vector<Vec2> extreme;
  const size_t n = pts.size();
  for (size_t i = 0; i < n; ++i) {
    bool inside = false;
    for (size_t a = 0; a < n && !inside; ++a)
      for (size_t b = a + 1; b < n && !inside; ++b)
        for (size_t c = b + 1; c < n && !inside; ++c) {
          if (a == i || b == i || c == i) continue;
          if (std::abs(Cross(pts[a], pts[b], pts[c])) < 1e-12) continue;
          inside = in_triangle(pts[i], pts[a], pts[b], pts[c]);
        }
    if (!inside) extreme.push_back(pts[i]);
  }
  Vec2 centroid = Vec2::Zero();
  for (const auto& p : extreme) centroid += p;
  centroid /= static_cast<double>(extreme.size());
  std::sort(extreme.begin(), extreme.end(), [&](const Vec2& a, const Vec2& b) {
    return std::atan2(a.y() - centroid.y(), a.x() - centroid.x()) <
           std::atan2(b.y() - centroid.y(), b.x() - centroid.x());
  });
  double area = 0.0;
  for (size_t i = 0; i < extreme.size(); ++i) {
    const Vec2& p = extreme[i];
    const Vec2& q = extreme[(i + 1) % extreme.size()];
    area += p.x() * q.y() - q.x() * p.y();
  }
  return 0.5 * std::abs(area);
}

Cube RandomCube(std::mt19937_64& rng) {
  return Cube{Vec3(Uniform(rng, -500, 500), Uniform(rng, -500, 500), Uniform(rng, -500, 500)),
              Vec3(Uniform(rng, 10, 800), Uniform(rng, 10, 800), Uniform(rng, 10, 800))};
}

TEST(ProjectTest, OpticalAxisHitsPrincipalPoint) {
  const CameraParams cam = SimpleCamera(1200.0, 950.0, 530.0);
  const PixelPoint px = Project(WorldPoint(0, 0, 1000), cam);
  EXPECT_DOUBLE_EQ(px.x(), 950.0);
  EXPECT_DOUBLE_EQ(px.y(), 530.0);
}

TEST(ProjectTest, BehindCameraThrows) {
  const CameraParams cam = SimpleCamera();
  try {
    Project(WorldPoint(0, 0, -1), cam);
    FAIL() << "expected NonPositiveDepth";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kNonPositiveDepth);
  }
  EXPECT_THROW(Project(WorldPoint(5, 5, 0), cam), Error);
}

TEST(ProjectTest, MatchesHandRolledProjection) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const CameraParams cam = RandomCamera(rng, 0);
    const WorldPoint p(Uniform(rng, -800, 800), Uniform(rng, -800, 800),
                       Uniform(rng, -800, 800));
    double P[3][4];
    for (int r = 0; r < 3; ++r) {
      for (int c = 0; c < 4; ++c) {
        double acc = 0.0;
        for (int k = 0; k < 3; ++k) {
          const double ext = c < 3 ? cam.rotation(k, c) : cam.translation(k);
          acc += cam.intrinsic(r, k) * ext;
        }
        P[r][c] = acc;
      }
    }
    double h[3];
    for (int r = 0; r < 3; ++r)
      h[r] = P[r][0] * p.x() + P[r][1] * p.y() + P[r][2] * p.z() + P[r][3];
    const PixelPoint px = Project(p, cam);
    EXPECT_NEAR(px.x(), h[0] / h[2], 1e-9);
    EXPECT_NEAR(px.y(), h[1] / h[2], 1e-9);
  }
}

TEST(ProjectTest, BackProjectionAtDepthRecoversPoint) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    const CameraParams cam = RandomCamera(rng, 0);
    const WorldPoint p(Uniform(rng, -800, 800), Uniform(rng, -800, 800),
                       Uniform(rng, -800, 800));
    const double depth = cam.DepthOf(p);
    const PixelPoint px = Project(p, cam);
    const Vec3 ray = cam.intrinsic.inverse() * Vec3(px.x(), px.y(), 1.0);
    const Vec3 cam_pt = ray * depth;
    const WorldPoint back = cam.rotation.transpose() * (cam_pt - cam.translation);
    EXPECT_LT((back - p).norm(), 1e-6);
  }
}

TEST(CameraParamsTest, ValidateRejectsBadInvariants) {
  CameraParams ok = SimpleCamera();
  EXPECT_NO_THROW(ok.Validate());
  CameraParams bad = ok;
  bad.intrinsic(0, 0) = -1.0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = ok;
  bad.intrinsic(2, 2) = 2.0;
  EXPECT_THROW(bad.Validate(), Error);
  bad = ok;
  bad.rotation = -Mat3::Identity();
  EXPECT_THROW(bad.Validate(), Error);
  bad = ok;
  bad.rotation(0, 1) = 1e-6;
  EXPECT_THROW(bad.Validate(), Error);
  bad = ok;
  bad.width = 0;
  EXPECT_THROW(bad.Validate(), Error);
}

TEST(CubeTest, ChildrenHaveHalfEdgesAndTileParent) {
  const Cube cube{Vec3(10, -20, 30), Vec3(400, 300, 200)};
  const auto children = cube.Children();
  Vec3 centroid = Vec3::Zero();
  for (const Cube& c : children) {
    EXPECT_EQ(c.edges, Vec3(200, 150, 100));
    EXPECT_TRUE(cube.Contains(c.center));
    centroid += c.center;
  }
  EXPECT_LT((centroid / 8.0 - cube.center).norm(), 1e-12);
  EXPECT_NEAR(cube.HalfDiagonal(), 0.5 * std::sqrt(400.0 * 400 + 300 * 300 + 200 * 200),
              1e-12);
}

TEST(CubeProjectionRegionTest, FrontoParallelCubeIsSquare) {
  const CameraParams cam = SimpleCamera();
  const Cube cube{Vec3(0, 0, 5000), Vec3(1, 1, 1)};
  // The near face dominates; the far face projects strictly inside it.
  const ConvexRegion region = CubeProjectionRegion(cube, cam);
  ASSERT_EQ(region.vertices.size(), 4u);
  const double side = 1000.0 * 1.0 / 4999.5;
  EXPECT_NEAR(region.Area(), side * side, 1e-9);
}

TEST(CubeProjectionRegionTest, ZeroEdgeCubeIsPoint) {
  const CameraParams cam = SimpleCamera();
  const Cube cube{Vec3(100, -50, 2000), Vec3::Zero()};
  const ConvexRegion region = CubeProjectionRegion(cube, cam);
  ASSERT_EQ(region.vertices.size(), 1u);
  EXPECT_LT((region.vertices[0] - Project(cube.center, cam)).norm(), 1e-12);
  EXPECT_EQ(region.Area(), 0.0);
}

TEST(CubeProjectionRegionTest, StraddlingCameraPlaneThrows) {
  const CameraParams cam = SimpleCamera();
  const Cube cube{Vec3(0, 0, 0), Vec3(100, 100, 100)};
  EXPECT_THROW(CubeProjectionRegion(cube, cam), Error);
  ConvexRegion out;
  EXPECT_FALSE(TryCubeProjectionRegion(cube, cam, out));
}

TEST(CubeProjectionRegionTest, AreaMatchesBruteForceHull) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 300; ++trial) {
    const CameraParams cam = RandomCamera(rng, 0);
    const Cube cube = RandomCube(rng);
    std::vector<Vec2> pts;
    for (const WorldPoint& v : cube.Vertices()) pts.push_back(Project(v, cam));
    const ConvexRegion region = CubeProjectionRegion(cube, cam);
    EXPECT_NEAR(region.Area(), BruteForceHullArea(pts), 1e-6);
  }
}

TEST(CubeProjectionRegionTest, RegionIsConvexAndCounterClockwise) {
  std::mt19937_64 rng(14);
  for (int trial = 0; trial < 300; ++trial) {
    const ConvexRegion region = CubeProjectionRegion(RandomCube(rng), RandomCamera(rng, 0));
    const auto& v = region.vertices;
    ASSERT_GE(v.size(), 3u);
    for (size_t i = 0; i < v.size(); ++i)
      EXPECT_GT(Cross(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]), 0.0);
  }
}

TEST(CubeProjectionRegionTest, ChildRegionsLieInsideParentRegion) {
  std::mt19937_64 rng(15);
  for (int trial = 0; trial < 100; ++trial) {
    const CameraParams cam = RandomCamera(rng, 0);
    const Cube cube = RandomCube(rng);
    const ConvexRegion parent = CubeProjectionRegion(cube, cam);
    for (const Cube& child : cube.Children()) {
      const ConvexRegion region = CubeProjectionRegion(child, cam);
      for (const PixelPoint& v : region.vertices) EXPECT_TRUE(RegionContains(parent, v));
      // Interior samples of the child region.
      for (int s = 0; s < 10; ++s) {
        Vec2 p = Vec2::Zero();
        double wsum = 0.0;
        for (const PixelPoint& v : region.vertices) {
          const double w = Uniform(rng, 0.0, 1.0);
          p += w * v;
          wsum += w;
        }
        EXPECT_TRUE(RegionContains(parent, p / wsum));
      }
    }
  }
}

TEST(ConvexHullTest, DropsCollinearAndInteriorPoints) {
  const std::vector<Vec2> pts = {{0, 0}, {1, 0}, {2, 0}, {2, 2}, {1, 1}, {0, 2}, {0, 1}};
  const ConvexRegion hull = ConvexHull(pts);
  EXPECT_EQ(hull.vertices.size(), 4u);
  EXPECT_DOUBLE_EQ(hull.Area(), 4.0);
}

TEST(ConvexHullTest, DegenerateInputs) {
  const std::vector<Vec2> same = {{3, 4}, {3, 4}, {3, 4}};
  EXPECT_EQ(ConvexHull(same).vertices.size(), 1u);
  const std::vector<Vec2> line = {{0, 0}, {1, 1}, {2, 2}, {3, 3}};
  const ConvexRegion seg = ConvexHull(line);
  ASSERT_EQ(seg.vertices.size(), 2u);
  EXPECT_TRUE(RegionContains(seg, Vec2(1.5, 1.5)));
  EXPECT_FALSE(RegionContains(seg, Vec2(1.5, 1.6)));
  EXPECT_FALSE(RegionContains(seg, Vec2(4, 4)));
}

TEST(RegionContainsTest, CentroidInsideAndFarPointOutside) {
  std::mt19937_64 rng(16);
  for (int trial = 0; trial < 200; ++trial) {
    const ConvexRegion region = CubeProjectionRegion(RandomCube(rng), RandomCamera(rng, 0));
    Vec2 centroid = Vec2::Zero();
    double diameter = 0.0;
    for (const auto& a : region.vertices) {
      centroid += a;
      for (const auto& b : region.vertices) diameter = std::max(diameter, (a - b).norm());
    }
    centroid /= static_cast<double>(region.vertices.size());
    EXPECT_TRUE(RegionContains(region, centroid));
    const double angle = Uniform(rng, 0.0, 6.283);
    const Vec2 far = centroid + 10.0 * diameter * Vec2(std::cos(angle), std::sin(angle));
    EXPECT_FALSE(RegionContains(region, far));
  }
}

TEST(RegionContainsTest, BoundaryIsInside) {
  const std::vector<Vec2> square = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const ConvexRegion region = ConvexHull(square);
  EXPECT_TRUE(RegionContains(region, Vec2(0, 0)));
  EXPECT_TRUE(RegionContains(region, Vec2(5, 0)));
  EXPECT_TRUE(RegionContains(region, Vec2(10, 7)));
  EXPECT_FALSE(RegionContains(region, Vec2(10.001, 7)));
}

TEST(RegionContainsTest, AgreesWithHalfPlaneOracle) {
  std::mt19937_64 rng(17);
  const CameraParams cam = RandomCamera(rng, 0);
  const ConvexRegion region = CubeProjectionRegion(RandomCube(rng), cam);
  double lo_x = 1e18, hi_x = -1e18, lo_y = 1e18, hi_y = -1e18;
  for (const auto& v : region.vertices) {
    lo_x = std::min(lo_x, v.x());
    hi_x = std::max(hi_x, v.x());
    lo_y = std::min(lo_y, v.y());
    hi_y = std::max(hi_y, v.y());
  }
  const double pad = 0.5 * std::max(hi_x - lo_x, hi_y - lo_y);
  const auto& v = region.vertices;
  for (int i = 0; i < 1000; ++i) {
    const Vec2 p(Uniform(rng, lo_x - pad, hi_x + pad), Uniform(rng, lo_y - pad, hi_y + pad));
    bool oracle = true;
    for (size_t k = 0; k < v.size(); ++k) {
      const Vec2& a = v[k];
      const Vec2& b = v[(k + 1) % v.size()];
      const Vec2 n(b.y() - a.y(), a.x() - b.x());  // outward for CCW
      if (n.dot(p - a) > 0.0) oracle = false;
    }
    EXPECT_EQ(RegionContains(region, p), oracle) << "sample " << i;
  }
}

TEST(RegionContainsTest, InvariantUnderVertexRotation) {
  std::mt19937_64 rng(18);
  for (int trial = 0; trial < 50; ++trial) {
    ConvexRegion region = CubeProjectionRegion(RandomCube(rng), RandomCamera(rng, 0));
    std::vector<Vec2> samples;
    for (int i = 0; i < 100; ++i) {
      const auto& a = region.vertices[0];
      samples.push_back(a + Vec2(Uniform(rng, -300, 300), Uniform(rng, -300, 300)));
    }
    std::vector<bool> base;
    for (const auto& s : samples) base.push_back(RegionContains(region, s));
    for (size_t r = 1; r < region.vertices.size(); ++r) {
      ConvexRegion rotated = region;
      std::rotate(rotated.vertices.begin(), rotated.vertices.begin() + r,
                  rotated.vertices.end());
      for (size_t i = 0; i < samples.size(); ++i)
        EXPECT_EQ(RegionContains(rotated, samples[i]), base[i]);
      EXPECT_NEAR(rotated.Area(), region.Area(), 1e-9 * region.Area());
    }
  }
}

TEST(RegionDistanceTest, ZeroInsideAndEuclideanOutside) {
  const std::vector<Vec2> square = {{0, 0}, {10, 0}, {10, 10}, {0, 10}};
  const ConvexRegion region = ConvexHull(square);
  EXPECT_EQ(RegionDistance(region, Vec2(5, 5)), 0.0);
  EXPECT_NEAR(RegionDistance(region, Vec2(13, 5)), 3.0, 1e-12);
  EXPECT_NEAR(RegionDistance(region, Vec2(13, 14)), 5.0, 1e-12);
  const ConvexRegion point = ConvexHull(std::vector<Vec2>{{1, 1}});
  EXPECT_NEAR(RegionDistance(point, Vec2(4, 5)), 5.0, 1e-12);
}

}  // namespace
}  // namespace mocap
