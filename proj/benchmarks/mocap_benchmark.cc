// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "mocap/geometry.h"
#include "mocap/retarget.h"
#include "mocap/synth.h"
#include "mocap/voxel_estimator.h"

namespace mocap {
namespace {

const SyntheticScene& Scene() {
  static const SyntheticScene scene = GenerateScene("walk", 20, 0.0, 0.0, 1);
  return scene;
}

void BM_EstimateJoint(benchmark::State& state) {
  const auto frames = RenderObservations(Scene());
  const auto obs = frames[0].ObservationsOf(kLHand);
  EstimatorConfig config;
  const double d = static_cast<double>(state.range(0));
  config.delta = Vec3(d, d, d);
  config.initial_volume.edges = Vec3(3600, 3000, 3600);
  int64_t nodes = 0;
  for (auto _ : state) {
    const JointEstimate est = EstimateJoint(obs, Scene().cameras, config);
    nodes = est.nodes_visited;
    benchmark::DoNotOptimize(est.position);
  }
  state.counters["nodes"] = static_cast<double>(nodes);
}
BENCHMARK(BM_EstimateJoint)->Arg(5)->Arg(10)->Arg(20)->Arg(30)->Unit(benchmark::kMicrosecond);

void BM_EstimateSkeleton(benchmark::State& state) {
  const auto frames = RenderObservations(Scene());
  const SkeletonTopology topo = SkeletonTopology::Default();
  const EstimatorConfig config;
  size_t f = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        EstimateSkeleton(frames[f++ % frames.size()], Scene().cameras, config, topo));
  }
}
BENCHMARK(BM_EstimateSkeleton)->Unit(benchmark::kMillisecond);

void BM_CubeProjectionRegion(benchmark::State& state) {
  const CameraParams& cam = Scene().cameras[0];
  const Cube cube{WorldPoint(100, 200, -50), Vec3(40, 40, 40)};
  for (auto _ : state) benchmark::DoNotOptimize(CubeProjectionRegion(cube, cam));
}
BENCHMARK(BM_CubeProjectionRegion);

void BM_RetargetFrame(benchmark::State& state) {
  const SkeletonTopology topo = SkeletonTopology::Default();
  const TPoseTemplate tpl = TPoseTemplate::Default(topo);
  size_t f = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RetargetFrame(Scene().truth[f++ % Scene().truth.size()], topo, tpl));
  }
}
BENCHMARK(BM_RetargetFrame);

}  // namespace
}  // namespace mocap

BENCHMARK_MAIN();
