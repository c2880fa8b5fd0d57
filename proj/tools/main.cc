// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

// mocap: synthetic capture, voxel reconstruction, retargeting, evaluation and
// overlay rendering from the command line.

#include <functional>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mocap/io.h"
#include "pipeline.h"

namespace {

using mocap::cli::RunConfig;

// Flags are applied on top of the --config file, so only flags that were
// actually given override it.
class Overrides {
 public:
  template <typename T>
  CLI::Option* Add(CLI::App* app, const std::string& name, const std::string& help,
                   std::function<void(RunConfig&, const T&)> set) {
    auto value = std::make_shared<T>();
    CLI::Option* opt = app->add_option(name, *value, help);
    appliers_.push_back([opt, value, set](RunConfig& c) {
      if (opt->count() > 0) set(c, *value);
    });
    return opt;
  }

  CLI::Option* Flag(CLI::App* app, const std::string& name, const std::string& help,
                    bool RunConfig::*field) {
    CLI::Option* opt = app->add_flag(name, help);
    appliers_.push_back([opt, field](RunConfig& c) {
      if (opt->count() > 0) c.*field = true;
    });
    return opt;
  }

  void Apply(RunConfig& c) const {
    for (const auto& f : appliers_) f(c);
  }

 private:
  std::vector<std::function<void(RunConfig&)>> appliers_;
};

template <typename T>
std::function<void(RunConfig&, const T&)> Field(T RunConfig::*field) {
  return [field](RunConfig& c, const T& v) { c.*field = v; };
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Markerless motion capture from multi-view 2D joint detections"};
  app.require_subcommand(1);

  std::string config_path;
  bool dump_config = false;
  Overrides ov;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "Run configuration JSON");
    sub->add_flag("--dump-config", dump_config,
                  "Print the effective run configuration and exit");
    ov.Add<std::string>(sub, "--topology", "Rig topology override JSON",
                        Field(&RunConfig::topology));
    ov.Add<std::string>(sub, "--template", "T-pose template override JSON",
                        Field(&RunConfig::rig_template));
  };
  auto estimator = [&](CLI::App* sub) {
    ov.Add<int>(sub, "--sigma", "Views required for consensus",
                [](RunConfig& c, const int& v) { c.estimator.sigma = v; });
    ov.Add<std::string>(sub, "--delta", "Terminal cube size WxHxL in mm",
                        [](RunConfig& c, const std::string& v) {
                          c.estimator.delta = mocap::cli::ParseTriple(v);
                        });
    ov.Add<std::string>(sub, "--volume", "Initial volume WxHxL[@X,Y,Z] in mm",
                        [](RunConfig& c, const std::string& v) {
                          c.estimator.initial_volume = mocap::cli::ParseVolume(v);
                        });
    ov.Add<double>(sub, "--min-conf", "Minimum detection confidence",
                   [](RunConfig& c, const double& v) { c.estimator.min_confidence = v; });
    ov.Add<double>(sub, "--pixel-tol", "Footprint widening in pixels",
                   [](RunConfig& c, const double& v) { c.estimator.pixel_tolerance = v; });
    ov.Add<int>(sub, "--max-candidates", "Terminal cube limit per joint",
                [](RunConfig& c, const int& v) { c.estimator.max_candidates = v; });
  };
  auto path = [&](CLI::App* sub, const std::string& name, const std::string& help,
                  std::string RunConfig::*field) {
    ov.Add<std::string>(sub, name, help, Field(field));
  };

  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic capture");
  common(synth);
  path(synth, "--out", "Output directory", &RunConfig::out);
  ov.Add<std::string>(synth, "--preset", "tpose-static, walk, arm-wave or squat",
                      Field(&RunConfig::preset));
  ov.Add<int>(synth, "--frames", "Frame count", Field(&RunConfig::frames));
  ov.Add<double>(synth, "--noise", "Detection noise std in pixels",
                 Field(&RunConfig::noise_px));
  ov.Add<double>(synth, "--dropout", "Per joint and view miss probability",
                 Field(&RunConfig::dropout));
  ov.Add<uint64_t>(synth, "--seed", "Random seed", Field(&RunConfig::seed));

  CLI::App* reconstruct =
      app.add_subcommand("reconstruct", "Estimate 3D joints from 2D detections");
  common(reconstruct);
  estimator(reconstruct);
  path(reconstruct, "--calib", "Calibration JSON", &RunConfig::calib);
  path(reconstruct, "--keypoints", "Keypoint JSONL", &RunConfig::keypoints);
  path(reconstruct, "--out", "Skeleton JSONL output", &RunConfig::out);
  ov.Flag(reconstruct, "--timing", "Report per-phase timing", &RunConfig::timing);
  ov.Flag(reconstruct, "--overlay", "Also render SVG overlays", &RunConfig::overlay);
  ov.Add<int>(reconstruct, "--threads", "Worker threads (0 = all cores)",
              Field(&RunConfig::threads));

  CLI::App* retarget =
      app.add_subcommand("retarget", "Convert skeletons to bone transforms");
  common(retarget);
  path(retarget, "--skeletons", "Skeleton JSONL", &RunConfig::skeletons);
  path(retarget, "--out", "Animation JSONL output", &RunConfig::out);

  CLI::App* eval = app.add_subcommand("eval", "Compare skeletons against truth");
  common(eval);
  path(eval, "--skeletons", "Estimated skeleton JSONL", &RunConfig::skeletons);
  path(eval, "--truth", "Truth skeleton JSONL", &RunConfig::truth);
  path(eval, "--calib", "Calibration JSON for 2D error", &RunConfig::calib);
  path(eval, "--keypoints", "Keypoint JSONL for 2D error", &RunConfig::keypoints);
  path(eval, "--out", "Report path (.json; a .csv is written alongside)",
       &RunConfig::out);
  ov.Add<double>(eval, "--min-conf", "Minimum detection confidence",
                 [](RunConfig& c, const double& v) { c.estimator.min_confidence = v; });

  CLI::App* overlay =
      app.add_subcommand("render-overlay", "Draw detections and reprojections as SVG");
  common(overlay);
  path(overlay, "--calib", "Calibration JSON", &RunConfig::calib);
  path(overlay, "--keypoints", "Keypoint JSONL", &RunConfig::keypoints);
  path(overlay, "--skeletons", "Skeleton JSONL", &RunConfig::skeletons);
  path(overlay, "--out", "Output directory", &RunConfig::out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    RunConfig config;
    if (!config_path.empty())
      config = mocap::cli::RunConfigFromJson(mocap::ReadFile(config_path));
    ov.Apply(config);
    if (dump_config) {
      std::cout << mocap::cli::RunConfigToJson(config);
      return 0;
    }

    if (synth->parsed()) {
      mocap::cli::CmdSynth(config, std::cerr);
    } else if (reconstruct->parsed()) {
      mocap::cli::CmdReconstruct(config, std::cerr);
    } else if (retarget->parsed()) {
      mocap::cli::CmdRetarget(config, std::cerr);
    } else if (eval->parsed()) {
      mocap::cli::CmdEval(config, std::cerr);
    } else if (overlay->parsed()) {
      mocap::cli::CmdRenderOverlay(config, std::cerr);
    }
  } catch (const mocap::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return mocap::cli::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
