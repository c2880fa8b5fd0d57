// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "pipeline.h"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <thread>

#include <json.hpp>

#include "mocap/io.h"
#include "mocap/retarget.h"
#include "mocap/synth.h"

namespace mocap::cli {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

[[noreturn]] void ParseFail(const std::string& what) {
  throw Error(ErrorCode::kInputParse, what);
}

double Ms(Clock::time_point a, Clock::time_point b) {
  return std::chrono::duration<double, std::milli>(b - a).count();
}

std::ifstream OpenInput(const std::string& path, const char* what) {
  if (path.empty()) ParseFail(std::string("no ") + what + " file given");
  std::ifstream in(path);
  if (!in) ParseFail("cannot open " + path);
  return in;
}

std::ofstream OpenOutput(const std::string& path) {
  if (path.empty()) ParseFail("no output path given");
  const auto parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path, std::ios::binary);
  if (!out) ParseFail("cannot write " + path);
  return out;
}

struct Rig {
  SkeletonTopology topology;
  TPoseTemplate tpl;
};

Rig LoadRig(const RunConfig& config) {
  Rig rig{SkeletonTopology::Default(), {}};
  if (!config.topology.empty()) rig.topology = ParseTopology(ReadFile(config.topology));
  rig.tpl = config.rig_template.empty()
                ? TPoseTemplate::Default(rig.topology)
                : ParseTemplate(ReadFile(config.rig_template), rig.topology);
  return rig;
}

std::string Shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string Fixed3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3f", v);
  std::string s(buf);
  if (s == "-0.000") s = "0.000";
  return s;
}

double ToDouble(std::string_view s, std::string_view whole) {
  double v = 0.0;
  auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    throw Error(ErrorCode::kInvalidArgument,
                "bad number '" + std::string(s) + "' in '" + std::string(whole) + "'");
  return v;
}

std::vector<std::string_view> Split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  size_t start = 0;
  while (true) {
    size_t pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

// Wraps errors thrown while parsing one line of `source`.
template <typename Fn>
auto WithLine(const std::string& source, int line, Fn&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const std::exception& e) {
    ParseFail(source + ":" + std::to_string(line) + ": " + e.what());
  }
}

// Reads one parsed item per non-blank line.
template <typename T>
class LineStream {
 public:
  template <typename Fn>
  LineStream(const std::string& path, const char* what, Fn parse)
      : in_(OpenInput(path, what)), reader_(in_, path), parse_(std::move(parse)) {}

  std::optional<T> Next() {
    std::string line;
    if (!reader_.Next(line)) return std::nullopt;
    return reader_.Parse(line, parse_);
  }

 private:
  std::ifstream in_;
  JsonLinesReader reader_;
  std::function<T(const std::string&)> parse_;
};

[[noreturn]] void Mismatch(const std::string& what, int a, int b) {
  throw Error(ErrorCode::kFrameMismatch, what + ": frame " + std::to_string(a) +
                                             " vs " + std::to_string(b));
}

std::string ErrorStem(const std::string& out) {
  const std::string suffix = ".json";
  if (out.size() > suffix.size() &&
      out.compare(out.size() - suffix.size(), suffix.size(), suffix) == 0)
    return out.substr(0, out.size() - suffix.size());
  return out;
}

int CountNoConsensus(const Skeleton3D& s) {
  int n = 0;
  for (const auto& p : s.positions) n += p ? 0 : 1;
  return n;
}

void WriteOverlays(const std::filesystem::path& dir,
                   const std::vector<CameraParams>& cameras,
                   const JointObservationFrame& frame, const Skeleton3D& skeleton,
                   const SkeletonTopology& topology, int& written) {
  std::filesystem::create_directories(dir);
  for (const CameraParams& cam : cameras) {
    const ViewKeypoints* detected = nullptr;
    for (const ViewKeypoints& v : frame.views) {
      if (v.view_id == cam.id) detected = &v;
    }
    std::ofstream out(dir / OverlayFileName(frame.frame, cam.id), std::ios::binary);
    if (!out) ParseFail("cannot write overlay in " + dir.string());
    out << RenderOverlaySvg(cam, detected, skeleton, topology);
    ++written;
  }
}

}  // namespace

std::string RunConfigToJson(const RunConfig& c) {
  const EstimatorConfig& e = c.estimator;
  json j = {
      {"calib", c.calib},
      {"keypoints", c.keypoints},
      {"truth", c.truth},
      {"skeletons", c.skeletons},
      {"out", c.out},
      {"topology", c.topology},
      {"template", c.rig_template},
      {"sigma", e.sigma},
      {"delta", {e.delta.x(), e.delta.y(), e.delta.z()}},
      {"volume",
       {{"center", {e.initial_volume.center.x(), e.initial_volume.center.y(),
                    e.initial_volume.center.z()}},
        {"edges", {e.initial_volume.edges.x(), e.initial_volume.edges.y(),
                   e.initial_volume.edges.z()}}}},
      {"min_confidence", e.min_confidence},
      {"max_candidates", e.max_candidates},
      {"pixel_tolerance", e.pixel_tolerance},
      {"overlay", c.overlay},
      {"timing", c.timing},
      {"threads", c.threads},
      {"preset", c.preset},
      {"frames", c.frames},
      {"noise_px", c.noise_px},
      {"dropout", c.dropout},
      {"seed", c.seed},
  };
  return j.dump(2) + "\n";
}

RunConfig RunConfigFromJson(std::string_view text) {
  RunConfig c;
  try {
    const json j = json::parse(text.begin(), text.end());
    if (!j.is_object()) ParseFail("run config must be a JSON object");
    auto get = [&](const char* key, auto& field) {
      if (auto it = j.find(key); it != j.end()) it->get_to(field);
    };
    auto get3 = [&](const json& arr, Vec3& v) {
      if (!arr.is_array() || arr.size() != 3) ParseFail("expected 3 numbers");
      v = Vec3(arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>());
    };
    get("calib", c.calib);
    get("keypoints", c.keypoints);
    get("truth", c.truth);
    get("skeletons", c.skeletons);
    get("out", c.out);
    get("topology", c.topology);
    get("template", c.rig_template);
    get("sigma", c.estimator.sigma);
    if (auto it = j.find("delta"); it != j.end()) get3(*it, c.estimator.delta);
    if (auto it = j.find("volume"); it != j.end()) {
      get3(it->at("center"), c.estimator.initial_volume.center);
      get3(it->at("edges"), c.estimator.initial_volume.edges);
    }
    get("min_confidence", c.estimator.min_confidence);
    get("max_candidates", c.estimator.max_candidates);
    get("pixel_tolerance", c.estimator.pixel_tolerance);
    get("overlay", c.overlay);
    get("timing", c.timing);
    get("threads", c.threads);
    get("preset", c.preset);
    get("frames", c.frames);
    get("noise_px", c.noise_px);
    get("dropout", c.dropout);
    get("seed", c.seed);
  } catch (const json::exception& e) {
    ParseFail(std::string("run config: ") + e.what());
  }
  return c;
}

Vec3 ParseTriple(std::string_view text) {
  const auto parts = Split(text, 'x');
  if (parts.size() != 3)
    throw Error(ErrorCode::kInvalidArgument,
                "expected WxHxL, got '" + std::string(text) + "'");
  const Vec3 v(ToDouble(parts[0], text), ToDouble(parts[1], text),
               ToDouble(parts[2], text));
  if (!(v.array() > 0.0).all())
    throw Error(ErrorCode::kInvalidArgument,
                "sizes must be positive in '" + std::string(text) + "'");
  return v;
}

Cube ParseVolume(std::string_view text) {
  Cube cube;
  const size_t at = text.find('@');
  cube.edges = ParseTriple(text.substr(0, at));
  if (at != std::string_view::npos) {
    const std::string_view center = text.substr(at + 1);
    const auto parts = Split(center, ',');
    if (parts.size() != 3)
      throw Error(ErrorCode::kInvalidArgument,
                  "expected X,Y,Z after '@' in '" + std::string(text) + "'");
    cube.center = Vec3(ToDouble(parts[0], text), ToDouble(parts[1], text),
                       ToDouble(parts[2], text));
  }
  return cube;
}

std::string FormatVolume(const Cube& v) {
  return Shortest(v.edges.x()) + "x" + Shortest(v.edges.y()) + "x" +
         Shortest(v.edges.z()) + "@" + Shortest(v.center.x()) + "," +
         Shortest(v.center.y()) + "," + Shortest(v.center.z());
}

int ExitCodeFor(ErrorCode code) {
  return code == ErrorCode::kFrameMismatch ? 3 : 2;
}

void CmdSynth(const RunConfig& config, std::ostream& log) {
  if (config.out.empty()) ParseFail("synth needs --out DIR");
  const Rig rig = LoadRig(config);
  const SyntheticScene scene = GenerateScene(config.preset, config.frames,
                                             config.noise_px, config.dropout,
                                             config.seed);
  const std::filesystem::path dir(config.out);
  std::filesystem::create_directories(dir);

  OpenOutput((dir / "calib.json").string()) << FormatCalibration(scene.cameras);
  {
    std::ofstream out = OpenOutput((dir / "keypoints.jsonl").string());
    for (const JointObservationFrame& f : RenderObservations(scene))
      out << FormatKeypointLine(f) << "\n";
  }
  {
    std::ofstream out = OpenOutput((dir / "truth.jsonl").string());
    for (const Skeleton3D& s : scene.truth)
      out << FormatSkeletonLine(s, rig.topology) << "\n";
  }
  log << "synth: " << scene.truth.size() << " frames, " << scene.cameras.size()
      << " cameras -> " << dir.string() << "\n";
}

ReconstructSummary CmdReconstruct(const RunConfig& config, std::ostream& log) {
  const auto cameras = LoadCalibration(config.calib);
  config.estimator.Validate();
  const Rig rig = LoadRig(config);
  if (config.estimator.sigma > static_cast<int>(cameras.size())) {
    log << "warning: sigma " << config.estimator.sigma << " exceeds the "
        << cameras.size() << " calibrated cameras; no joint can reach consensus\n";
  }

  std::ifstream in = OpenInput(config.keypoints, "keypoints");
  JsonLinesReader reader(in, config.keypoints);
  std::ofstream out = OpenOutput(config.out);
  std::optional<std::ofstream> timing_out;
  if (config.timing) timing_out = OpenOutput(config.out + ".timing.jsonl");
  const std::filesystem::path overlay_dir = config.out + ".overlay";

  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  const size_t batch_size = static_cast<size_t>(threads) * 4;

  struct Job {
    std::string line;
    int line_number = 0;
    JointObservationFrame frame;
    Skeleton3D skeleton;
    std::string output;
    PhaseTiming timing;
    int64_t nodes = 0;
    std::exception_ptr error;
  };

  auto process = [&](Job& job) {
    try {
      const auto t0 = Clock::now();
      job.frame = WithLine(config.keypoints, job.line_number,
                           [&] { return ParseKeypointLine(job.line); });
      const auto t1 = Clock::now();
      const auto grouped = GroupObservations(job.frame, rig.topology);
      const auto t2 = Clock::now();
      SkeletonEstimate est = EstimateGroupedSkeleton(
          job.frame.frame, grouped, cameras, config.estimator, rig.topology);
      const auto t3 = Clock::now();
      if (config.timing) RetargetFrame(est.skeleton, rig.topology, rig.tpl);
      job.output = FormatSkeletonLine(est.skeleton, rig.topology);
      const auto t4 = Clock::now();
      job.skeleton = std::move(est.skeleton);
      job.nodes = est.NodesVisited();
      job.timing = {job.frame.frame, Ms(t0, t1), Ms(t1, t2), Ms(t2, t3),
                    Ms(t3, t4),      Ms(t0, t4)};
    } catch (...) {
      job.error = std::current_exception();
    }
  };

  ReconstructSummary summary;
  int overlays = 0;
  std::vector<Job> batch;
  bool done = false;
  while (!done) {
    batch.clear();
    std::string line;
    while (batch.size() < batch_size) {
      if (!reader.Next(line)) {
        done = true;
        break;
      }
      batch.push_back(Job{line, reader.line_number(), {}, Skeleton3D(), {}, {}, 0, nullptr});
    }
    if (batch.empty()) break;

    const int workers = std::min<int>(threads, static_cast<int>(batch.size()));
    if (workers <= 1) {
      for (Job& job : batch) process(job);
    } else {
      std::atomic<size_t> next{0};
      std::vector<std::thread> pool;
      for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
          for (size_t i; (i = next.fetch_add(1)) < batch.size();) process(batch[i]);
        });
      }
      for (std::thread& t : pool) t.join();
    }

    // Single writer, input order.
    for (Job& job : batch) {
      if (job.error) std::rethrow_exception(job.error);
      out << job.output << "\n";
      ++summary.frames;
      summary.nodes_visited += job.nodes;
      summary.no_consensus += CountNoConsensus(job.skeleton);
      if (config.timing) {
        const PhaseTiming& t = job.timing;
        *timing_out << "{\"frame\":" << t.frame
                    << ",\"collection_ms\":" << FormatFixed(t.collection_ms)
                    << ",\"detection_ms\":" << FormatFixed(t.detection_ms)
                    << ",\"estimation_ms\":" << FormatFixed(t.estimation_ms)
                    << ",\"animation_ms\":" << FormatFixed(t.animation_ms)
                    << ",\"wall_ms\":" << FormatFixed(t.wall_ms) << "}\n";
        summary.timing.push_back(t);
      }
      if (config.overlay)
        WriteOverlays(overlay_dir, cameras, job.frame, job.skeleton, rig.topology,
                      overlays);
    }
  }
  if (!out) ParseFail("failed writing " + config.out);

  if (config.timing && summary.frames > 0) {
    PhaseTiming total;
    for (const PhaseTiming& t : summary.timing) {
      total.collection_ms += t.collection_ms;
      total.detection_ms += t.detection_ms;
      total.estimation_ms += t.estimation_ms;
      total.animation_ms += t.animation_ms;
      total.wall_ms += t.wall_ms;
    }
    const double n = summary.frames;
    log << "timing (mean ms per frame over " << summary.frames << " frames)\n"
        << "  collection  " << FormatFixed(total.collection_ms / n) << "\n"
        << "  detection   " << FormatFixed(total.detection_ms / n) << "\n"
        << "  estimation  " << FormatFixed(total.estimation_ms / n) << "\n"
        << "  animation   " << FormatFixed(total.animation_ms / n) << "\n"
        << "  wall        " << FormatFixed(total.wall_ms / n) << "\n";
  }
  log << "reconstruct: " << summary.frames << " frames, " << summary.nodes_visited
      << " cubes visited, " << summary.no_consensus << " joints without consensus\n";
  if (config.overlay) log << "overlay: " << overlays << " files in " << overlay_dir.string() << "\n";
  return summary;
}

int CmdRetarget(const RunConfig& config, std::ostream& log) {
  const Rig rig = LoadRig(config);
  LineStream<Skeleton3D> skeletons(
      config.skeletons, "skeletons",
      [&](const std::string& l) { return ParseSkeletonLine(l, rig.topology); });
  std::ofstream out = OpenOutput(config.out);
  SequenceRetargeter retargeter(rig.topology, rig.tpl);
  int frames = 0, fell_back = 0;
  while (auto s = skeletons.Next()) {
    const BoneTransformSet t = retargeter.Next(*s);
    for (BoneStatus b : t.statuses) fell_back += b == BoneStatus::kFellBack;
    out << FormatAnimationLine(t, rig.topology) << "\n";
    ++frames;
  }
  if (!out) ParseFail("failed writing " + config.out);
  log << "retarget: " << frames << " frames, " << fell_back
      << " bone rotations held or defaulted\n";
  return frames;
}

ErrorReport CmdEval(const RunConfig& config, std::ostream& log) {
  const Rig rig = LoadRig(config);
  auto parse_skeleton = [&](const std::string& l) {
    return ParseSkeletonLine(l, rig.topology);
  };
  LineStream<Skeleton3D> estimates(config.skeletons, "skeletons", parse_skeleton);
  LineStream<Skeleton3D> truths(config.truth, "truth", parse_skeleton);

  const bool with_2d = !config.calib.empty() && !config.keypoints.empty();
  std::vector<CameraParams> cameras;
  std::optional<LineStream<JointObservationFrame>> keypoints;
  if (with_2d) {
    cameras = LoadCalibration(config.calib);
    keypoints.emplace(config.keypoints, "keypoints",
                      [](const std::string& l) { return ParseKeypointLine(l); });
  }
  std::map<int, std::pair<double, int>> view_sums;

  ErrorReport report;
  int skipped = 0;
  while (true) {
    auto est = estimates.Next();
    auto truth = truths.Next();
    if (!est && !truth) break;
    if (!est || !truth)
      throw Error(ErrorCode::kFrameMismatch,
                  std::string(est ? "truth" : "skeletons") + " stream ended early");
    if (est->frame != truth->frame) Mismatch("skeletons vs truth", est->frame, truth->frame);

    if (ComparableJointCount(*est, *truth) == 0) {
      ++skipped;
    } else {
      report.frames.push_back(est->frame);
      report.per_frame_3d.push_back(MeanAbs3dErr(*est, *truth));
      report.joint_count.push_back(ComparableJointCount(*est, *truth));
    }

    if (with_2d) {
      auto kp = keypoints->Next();
      if (!kp) throw Error(ErrorCode::kFrameMismatch, "keypoints stream ended early");
      if (kp->frame != est->frame) Mismatch("keypoints vs skeletons", kp->frame, est->frame);
      for (const CameraParams& cam : cameras) {
        ViewPixels detected;
        for (const ViewKeypoints& v : kp->views) {
          if (v.view_id != cam.id) continue;
          for (const Keypoint& k : v.joints) {
            if (k.idx < kNumDetectedJoints &&
                k.confidence >= config.estimator.min_confidence)
              detected.emplace(k.idx, k.pixel);
          }
        }
        const ViewPixels reprojected = Reproject(*est, cam, kNumDetectedJoints);
        int shared = 0;
        for (const auto& [idx, px] : detected) shared += reprojected.count(idx);
        if (shared == 0) continue;
        auto& [sum, n] = view_sums[cam.id];
        sum += Avg2dErr(detected, reprojected);
        ++n;
      }
    }
  }
  if (with_2d && keypoints->Next())
    throw Error(ErrorCode::kFrameMismatch, "keypoints stream has extra frames");

  report.sequence_mean_3d = SequenceMean(report.per_frame_3d);
  for (const auto& [id, acc] : view_sums) report.per_view_2d[id] = acc.first / acc.second;

  const std::string stem = ErrorStem(config.out);
  OpenOutput(stem + ".json") << FormatErrorReportJson(report);
  OpenOutput(stem + ".csv") << FormatErrorReportCsv(report);
  if (skipped) log << "warning: " << skipped << " frames share no joint with the truth\n";
  log << "eval: " << report.frames.size() << " frames, mean 3D error "
      << FormatFixed(report.sequence_mean_3d) << " mm\n";
  for (const auto& [id, err] : report.per_view_2d)
    log << "  view " << id << " avg 2D error " << FormatFixed(err) << " px\n";
  return report;
}

int CmdRenderOverlay(const RunConfig& config, std::ostream& log) {
  const Rig rig = LoadRig(config);
  const auto cameras = LoadCalibration(config.calib);
  LineStream<JointObservationFrame> keypoints(
      config.keypoints, "keypoints",
      [](const std::string& l) { return ParseKeypointLine(l); });
  LineStream<Skeleton3D> skeletons(
      config.skeletons, "skeletons",
      [&](const std::string& l) { return ParseSkeletonLine(l, rig.topology); });
  if (config.out.empty()) ParseFail("render-overlay needs --out DIR");

  int written = 0;
  while (true) {
    auto kp = keypoints.Next();
    auto skel = skeletons.Next();
    if (!kp && !skel) break;
    if (!kp || !skel)
      throw Error(ErrorCode::kFrameMismatch,
                  std::string(kp ? "skeletons" : "keypoints") + " stream ended early");
    if (kp->frame != skel->frame) Mismatch("keypoints vs skeletons", kp->frame, skel->frame);
    WriteOverlays(config.out, cameras, *kp, *skel, rig.topology, written);
  }
  log << "render-overlay: " << written << " files in " << config.out << "\n";
  return written;
}

std::string OverlayFileName(int frame, int view_id) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "frame%06d_view%d.svg", frame, view_id);
  return buf;
}

std::string RenderOverlaySvg(const CameraParams& camera,
                             const ViewKeypoints* detected,
                             const Skeleton3D& skeleton,
                             const SkeletonTopology& topology) {
  ViewPixels red;
  if (detected) {
    for (const Keypoint& k : detected->joints) red.emplace(k.idx, k.pixel);
  }
  const ViewPixels blue = Reproject(skeleton, camera, topology.NumJoints());
  const std::string w = std::to_string(camera.width);
  const std::string h = std::to_string(camera.height);

  std::string svg = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + w +
                    "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
  svg += "<rect width=\"" + w + "\" height=\"" + h + "\" fill=\"white\"/>\n";

  auto bones = [&](const ViewPixels& px, const char* cls, const char* color) {
    svg += std::string("<g class=\"") + cls + "\" stroke=\"" + color +
           "\" stroke-width=\"2\">\n";
    for (const BoneDef& b : topology.bones) {
      auto p = px.find(b.parent_joint);
      auto c = px.find(b.child_joint);
      if (p == px.end() || c == px.end()) continue;
      svg += "<line data-bone=\"" + b.name + "\" x1=\"" + Fixed3(p->second.x()) +
             "\" y1=\"" + Fixed3(p->second.y()) + "\" x2=\"" + Fixed3(c->second.x()) +
             "\" y2=\"" + Fixed3(c->second.y()) + "\"/>\n";
    }
    svg += "</g>\n";
  };
  auto joints = [&](const ViewPixels& px, const char* cls, const char* attrs,
                    const char* radius) {
    svg += std::string("<g class=\"") + cls + "\" " + attrs + ">\n";
    for (const auto& [idx, p] : px) {
      svg += "<circle data-joint=\"" + std::to_string(idx) + "\" cx=\"" +
             Fixed3(p.x()) + "\" cy=\"" + Fixed3(p.y()) + "\" r=\"" + radius + "\"/>\n";
    }
    svg += "</g>\n";
  };
  bones(red, "detected-bones", "red");
  bones(blue, "reprojected-bones", "blue");
  joints(red, "detected", "fill=\"red\"", "5");
  joints(blue, "reprojected", "fill=\"none\" stroke=\"blue\" stroke-width=\"2\"", "8");
  svg += "</svg>\n";
  return svg;
}

std::string FormatErrorReportJson(const ErrorReport& r) {
  auto list = [](const auto& values, auto fmt) {
    std::string s = "[";
    for (size_t i = 0; i < values.size(); ++i) {
      if (i) s += ",";
      s += fmt(values[i]);
    }
    return s + "]";
  };
  auto int_fmt = [](int v) { return std::to_string(v); };
  std::string views = "{";
  for (auto it = r.per_view_2d.begin(); it != r.per_view_2d.end(); ++it) {
    if (it != r.per_view_2d.begin()) views += ",";
    views += "\"" + std::to_string(it->first) + "\":" + FormatFixed(it->second);
  }
  views += "}";
  return "{\"frames\":" + list(r.frames, int_fmt) +
         ",\"per_frame_3d\":" + list(r.per_frame_3d, FormatFixed) +
         ",\"sequence_mean_3d\":" + FormatFixed(r.sequence_mean_3d) +
         ",\"per_view_2d\":" + views +
         ",\"joint_count\":" + list(r.joint_count, int_fmt) + "}\n";
}

std::string FormatErrorReportCsv(const ErrorReport& r) {
  std::string s = "frame,d3\n";
  for (size_t i = 0; i < r.frames.size(); ++i)
    s += std::to_string(r.frames[i]) + "," + FormatFixed(r.per_frame_3d[i]) + "\n";
  return s;
}

}  // namespace mocap::cli
