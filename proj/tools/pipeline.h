// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

// Subcommands of the mocap tool, callable in-process.

#ifndef MOCAP_TOOLS_PIPELINE_H_
#define MOCAP_TOOLS_PIPELINE_H_

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "mocap/error.h"
#include "mocap/metrics.h"
#include "mocap/skeleton.h"
#include "mocap/voxel_estimator.h"

namespace mocap::cli {

struct RunConfig {
  std::string calib;
  std::string keypoints;
  std::string truth;
  // Skeleton JSONL consumed by retarget, eval and render-overlay.
  std::string skeletons;
  std::string out;
  // Optional rig override files.
  std::string topology;
  std::string rig_template;

  EstimatorConfig estimator;
  bool overlay = false;
  bool timing = false;
  // Reconstruction workers; 0 picks the hardware concurrency.
  int threads = 0;

  std::string preset = "walk";
  int frames = 100;
  double noise_px = 0.0;
  double dropout = 0.0;
  uint64_t seed = 0;
};

std::string RunConfigToJson(const RunConfig& config);
// Keys that are absent keep their defaults. Throws Error(kInputParse).
RunConfig RunConfigFromJson(std::string_view text);

// "WxHxL" with positive parts, e.g. "10x10x10". Throws Error(kInvalidArgument).
Vec3 ParseTriple(std::string_view text);
// "WxHxL" centered at the origin, or "WxHxL@X,Y,Z".
Cube ParseVolume(std::string_view text);
std::string FormatVolume(const Cube& volume);

// 0 success, 2 input or parse error, 3 frame mismatch.
int ExitCodeFor(ErrorCode code);

// Per-frame wall-clock split of reconstruction.
struct PhaseTiming {
  int frame = 0;
  double collection_ms = 0.0;  // reading and parsing the frame's detections
  double detection_ms = 0.0;   // grouping detections per joint
  double estimation_ms = 0.0;  // voxel subdivision
  double animation_ms = 0.0;   // bone rotations and output formatting
  double wall_ms = 0.0;

  double PhaseSum() const {
    return collection_ms + detection_ms + estimation_ms + animation_ms;
  }
};

struct ReconstructSummary {
  int frames = 0;
  int64_t nodes_visited = 0;
  int no_consensus = 0;
  std::vector<PhaseTiming> timing;
};

// Writes <out>/calib.json, <out>/keypoints.jsonl and <out>/truth.jsonl.
void CmdSynth(const RunConfig& config, std::ostream& log);

// Streams skeleton JSONL to `out`. With timing on, per-frame phases go to
// <out>.timing.jsonl and a summary to `log`. With overlay on, SVGs go to
// <out>.overlay/.
ReconstructSummary CmdReconstruct(const RunConfig& config, std::ostream& log);

// Streams animation JSONL to `out`. Returns the frame count.
int CmdRetarget(const RunConfig& config, std::ostream& log);

// Compares `skeletons` against `truth`; when calibration and keypoints are
// given, also reports per-view reprojection error. Writes <stem>.json and
// <stem>.csv where <stem> is `out` without a ".json" suffix. Throws
// Error(kFrameMismatch) when the streams disagree on frame indices.
ErrorReport CmdEval(const RunConfig& config, std::ostream& log);

// One SVG per (frame, view) in directory `out`. Returns the file count.
int CmdRenderOverlay(const RunConfig& config, std::ostream& log);

std::string OverlayFileName(int frame, int view_id);

// Red circles for detections, blue circles for reprojected joints, lines
// for bones in both sets. `detected` may be null.
std::string RenderOverlaySvg(const CameraParams& camera,
                             const ViewKeypoints* detected,
                             const Skeleton3D& skeleton,
                             const SkeletonTopology& topology);

std::string FormatErrorReportJson(const ErrorReport& report);
// "frame,d3" header, one row per frame.
std::string FormatErrorReportCsv(const ErrorReport& report);

}  // namespace mocap::cli

#endif  // MOCAP_TOOLS_PIPELINE_H_
