// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/skeleton.h"

#include <random>
#include <set>

#include <gtest/gtest.h>

#include "mocap/error.h"
#include "test_util.h"

namespace mocap {
namespace {

using testing::Uniform;

TEST(SkeletonTopologyTest, DefaultMatchesBodyModel) {
  const SkeletonTopology t = SkeletonTopology::Default();
  EXPECT_NO_THROW(t.Validate());
  ASSERT_EQ(t.NumJoints(), 15);
  EXPECT_EQ(t.JointName(0), "Head");
  EXPECT_EQ(t.JointName(13), "L_Foot");
  EXPECT_EQ(t.JointName(14), "Torso");
  EXPECT_EQ(t.root_joint, kRoot);
  EXPECT_EQ(t.root_sources, (std::vector<int>{kRHip, kLHip}));

  const std::set<std::string> expected = {
      "head",        "r_shoulder",  "l_shoulder",  "r_upper_arm", "l_upper_arm",
      "r_lower_arm", "l_lower_arm", "r_upper_leg", "l_upper_leg", "r_lower_leg",
      "l_lower_leg", "torso"};
  std::set<std::string> names;
  for (const BoneDef& b : t.bones) names.insert(b.name);
  EXPECT_EQ(names, expected);
}

TEST(SkeletonTopologyTest, TreeRootedAtTorsoWithShallowChains) {
  const SkeletonTopology t = SkeletonTopology::Default();
  int roots = 0;
  for (int b = 0; b < t.NumBones(); ++b) {
    if (t.bones[b].parent_bone < 0) {
      ++roots;
      EXPECT_EQ(t.bones[b].name, "torso");
      continue;
    }
    int steps = 0, cur = b;
    while (t.bones[cur].parent_bone >= 0) {
      cur = t.bones[cur].parent_bone;
      ++steps;
    }
    EXPECT_EQ(t.bones[cur].name, "torso");
    EXPECT_LE(steps, 4);
  }
  EXPECT_EQ(roots, 1);
}

TEST(SkeletonTopologyTest, ParentageAndFrameClasses) {
  const SkeletonTopology t = SkeletonTopology::Default();
  auto parent = [&](const char* bone) {
    const int p = t.bones[t.BoneIndex(bone)].parent_bone;
    return p < 0 ? std::string("none") : t.bones[p].name;
  };
  auto cls = [&](const char* bone) { return t.bones[t.BoneIndex(bone)].frame_class; };
  EXPECT_EQ(parent("l_lower_arm"), "l_upper_arm");
  EXPECT_EQ(parent("l_upper_arm"), "l_shoulder");
  EXPECT_EQ(parent("r_shoulder"), "torso");
  EXPECT_EQ(parent("r_lower_leg"), "r_upper_leg");
  EXPECT_EQ(parent("l_upper_leg"), "torso");
  EXPECT_EQ(parent("head"), "torso");
  EXPECT_EQ(parent("torso"), "none");
  EXPECT_EQ(cls("l_shoulder"), FrameClass::kLeft);
  EXPECT_EQ(cls("r_lower_arm"), FrameClass::kRight);
  EXPECT_EQ(cls("head"), FrameClass::kUp);
  EXPECT_EQ(cls("torso"), FrameClass::kUp);
  EXPECT_EQ(cls("l_lower_leg"), FrameClass::kDown);
  EXPECT_EQ(t.BoneIndex("tail"), -1);
}

TEST(SkeletonTopologyTest, ValidateRejectsBrokenGraphs) {
  SkeletonTopology t = SkeletonTopology::Default();
  t.bones[1].parent_bone = 5;  // parent listed after the child
  EXPECT_THROW(t.Validate(), Error);
  t = SkeletonTopology::Default();
  t.bones[3].parent_bone = -1;
  EXPECT_THROW(t.Validate(), Error);
  t = SkeletonTopology::Default();
  t.bones[2].child_joint = 42;
  EXPECT_THROW(t.Validate(), Error);
  t = SkeletonTopology::Default();
  t.bones[4].name = "head";
  EXPECT_THROW(t.Validate(), Error);
}

TEST(TPoseTemplateTest, RestDirections) {
  const SkeletonTopology t = SkeletonTopology::Default();
  const TPoseTemplate tpl = TPoseTemplate::Default(t);
  EXPECT_NO_THROW(tpl.Validate(t));
  auto rest = [&](const char* bone) { return tpl.rest_direction[t.BoneIndex(bone)]; };
  EXPECT_EQ(rest("l_upper_arm"), Vec3(1, 0, 0));
  EXPECT_EQ(rest("r_upper_arm"), Vec3(-1, 0, 0));
  EXPECT_EQ(rest("torso"), Vec3(0, 1, 0));
  EXPECT_EQ(rest("head"), Vec3(0, 1, 0));
  EXPECT_EQ(rest("l_lower_leg"), Vec3(0, -1, 0));
  EXPECT_EQ(tpl.FrameRotation(FrameClass::kUp) * Vec3::UnitX(), Vec3(0, 1, 0));
}

TEST(TPoseTemplateTest, SelfConsistentAndOrthonormal) {
  const SkeletonTopology t = SkeletonTopology::Default();
  const TPoseTemplate tpl = TPoseTemplate::Default(t);
  for (int b = 0; b < t.NumBones(); ++b) {
    const Vec3 axis = tpl.FrameRotation(t.bones[b].frame_class) * Vec3::UnitX();
    EXPECT_LT((axis - tpl.rest_direction[b]).norm(), 1e-12) << t.bones[b].name;
    EXPECT_NEAR(tpl.rest_direction[b].norm(), 1.0, 1e-9);
  }
  for (const Mat3& r : tpl.frame_rotation) {
    EXPECT_LT((r * r.transpose() - Mat3::Identity()).norm(), 1e-12);
    EXPECT_NEAR(r.determinant(), 1.0, 1e-12);
  }
}

TEST(TPoseTemplateTest, ValidateRejectsInconsistentTemplate) {
  const SkeletonTopology t = SkeletonTopology::Default();
  TPoseTemplate tpl = TPoseTemplate::Default(t);
  tpl.rest_direction[4] = Vec3(0, 0, 1);
  EXPECT_THROW(tpl.Validate(t), Error);
  tpl = TPoseTemplate::Default(t);
  tpl.frame_rotation[0] = -Mat3::Identity();
  EXPECT_THROW(tpl.Validate(t), Error);
}

TEST(BoneVectorTest, AxisAligned) {
  const SkeletonTopology t = SkeletonTopology::Default();
  Skeleton3D s;
  s.positions[kRHip] = Vec3(0, 0, 0);
  s.positions[kRKnee] = Vec3(0, -500, 0);
  EXPECT_EQ(BoneVector(s, t.BoneIndex("r_upper_leg"), t), Vec3(0, -1, 0));
}

TEST(BoneVectorTest, ErrorsForMissingAndCoincidentJoints) {
  const SkeletonTopology t = SkeletonTopology::Default();
  Skeleton3D s;
  s.positions[kRHip] = Vec3(1, 2, 3);
  try {
    BoneVector(s, t.BoneIndex("r_upper_leg"), t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMissingJoint);
  }
  s.positions[kRKnee] = Vec3(1, 2, 3 + 1e-7);
  try {
    BoneVector(s, t.BoneIndex("r_upper_leg"), t);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kZeroLengthBone);
  }
}

TEST(BoneVectorTest, UnitAndParallelToDifference) {
  const SkeletonTopology t = SkeletonTopology::Default();
  std::mt19937_64 rng(31);
  for (int i = 0; i < 1000; ++i) {
    Skeleton3D s;
    const Vec3 a(Uniform(rng, -1e3, 1e3), Uniform(rng, -1e3, 1e3), Uniform(rng, -1e3, 1e3));
    const Vec3 b(Uniform(rng, -1e3, 1e3), Uniform(rng, -1e3, 1e3), Uniform(rng, -1e3, 1e3));
    s.positions[kLElbow] = a;
    s.positions[kLHand] = b;
    const Vec3 v = BoneVector(s, t.BoneIndex("l_lower_arm"), t);
    EXPECT_NEAR(v.norm(), 1.0, 1e-12);
    EXPECT_LT(v.cross((b - a).normalized()).norm(), 1e-9);
    EXPECT_GT(v.dot(b - a), 0.0);
  }
}

TEST(SkeletonTest, StatusFollowsPresence) {
  Skeleton3D s(7);
  EXPECT_EQ(s.frame, 7);
  EXPECT_EQ(s.Status(kHead), JointStatus::kNoConsensus);
  s.positions[kHead] = Vec3(0, 1, 0);
  EXPECT_EQ(s.Status(kHead), JointStatus::kOk);
  EXPECT_FALSE(s.Has(-1));
  EXPECT_FALSE(s.Has(99));
}

TEST(SynthesizeRootTest, MidpointOrCleared) {
  const SkeletonTopology t = SkeletonTopology::Default();
  Skeleton3D s;
  s.positions[kRHip] = Vec3(-100, 0, 10);
  s.positions[kLHip] = Vec3(100, 20, 30);
  SynthesizeRoot(s, t);
  ASSERT_TRUE(s.Has(kRoot));
  EXPECT_EQ(*s.positions[kRoot], Vec3(0, 10, 20));
  s.positions[kLHip].reset();
  SynthesizeRoot(s, t);
  EXPECT_FALSE(s.Has(kRoot));
}

TEST(FrameClassTest, StringRoundTrip) {
  for (FrameClass c : {FrameClass::kLeft, FrameClass::kRight, FrameClass::kUp, FrameClass::kDown})
    EXPECT_EQ(FrameClassFromString(ToString(c)), c);
  EXPECT_FALSE(FrameClassFromString("sideways").has_value());
}

}  // namespace
}  // namespace mocap
