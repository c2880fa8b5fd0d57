// Copyright 2026 The mocap Authors
// SPDX-License-Identifier: Apache-2.0

#include "mocap/io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "mocap/error.h"

namespace mocap {

namespace {

using nlohmann::json;

[[noreturn]] void Fail(const std::string& what) {
  throw Error(ErrorCode::kInputParse, what);
}

json ParseJson(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::exception& e) {
    Fail(e.what());
  }
}

const json& Field(const json& obj, const char* key) {
  if (!obj.is_object()) Fail(std::string("expected object holding '") + key + "'");
  auto it = obj.find(key);
  if (it == obj.end()) Fail(std::string("missing field '") + key + "'");
  return *it;
}

double Number(const json& j, const char* what) {
  if (!j.is_number()) Fail(std::string(what) + " must be a number");
  return j.get<double>();
}

int Integer(const json& j, const char* what) {
  if (!j.is_number_integer()) Fail(std::string(what) + " must be an integer");
  return j.get<int>();
}

template <int Rows, int Cols>
Eigen::Matrix<double, Rows, Cols> Matrix(const json& j, const char* what) {
  if (!j.is_array() || j.size() != Rows)
    Fail(std::string(what) + " has the wrong number of rows");
  Eigen::Matrix<double, Rows, Cols> m;
  for (int r = 0; r < Rows; ++r) {
    const json& row = j[r];
    if (!row.is_array() || row.size() != Cols)
      Fail(std::string(what) + " has the wrong number of columns");
    for (int c = 0; c < Cols; ++c) m(r, c) = Number(row[c], what);
  }
  return m;
}

Vec3 Vector3(const json& j, const char* what) {
  if (!j.is_array() || j.size() != 3) Fail(std::string(what) + " must have 3 entries");
  return {Number(j[0], what), Number(j[1], what), Number(j[2], what)};
}

std::string Quote(std::string_view s) { return json(std::string(s)).dump(); }

template <typename Derived>
std::string FormatMatrix(const Eigen::MatrixBase<Derived>& m) {
  std::string out = "[";
  for (int r = 0; r < m.rows(); ++r) {
    out += r ? ",[" : "[";
    for (int c = 0; c < m.cols(); ++c) {
      if (c) out += ",";
      out += FormatFixed(m(r, c));
    }
    out += "]";
  }
  return out + "]";
}

std::string FormatVector(const Vec3& v) {
  return "[" + FormatFixed(v.x()) + "," + FormatFixed(v.y()) + "," +
         FormatFixed(v.z()) + "]";
}

// Six-decimal files hold rotations that are orthonormal to ~1e-6 only. Such
// near-rotations are replaced by the closest proper rotation.
Mat3 SnapRotation(const Mat3& r) {
  if ((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() > 1e-5 ||
      r.determinant() <= 0.0)
    return r;
  Eigen::JacobiSVD<Mat3> svd(r, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().transpose();
}

}  // namespace

std::string FormatFixed(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", value);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) Fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<CameraParams> ParseCalibration(std::string_view text,
                                           std::string_view source) {
  try {
    const json doc = ParseJson(text);
    if (!doc.is_array()) Fail("calibration must be a JSON array");
    std::vector<CameraParams> cameras;
    for (const json& entry : doc) {
      CameraParams cam;
      cam.id = Integer(Field(entry, "id"), "id");
      cam.intrinsic = Matrix<3, 3>(Field(entry, "K"), "K");
      cam.rotation = Matrix<3, 3>(Field(entry, "R"), "R");
      cam.translation = Vector3(Field(entry, "t"), "t");
      cam.width = Integer(Field(entry, "width"), "width");
      cam.height = Integer(Field(entry, "height"), "height");
      cam.rotation = SnapRotation(cam.rotation);
      try {
        cam.Validate();
      } catch (const Error& e) {
        Fail(e.what());
      }
      for (const auto& other : cameras) {
        if (other.id == cam.id) Fail("duplicate camera id " + std::to_string(cam.id));
      }
      cameras.push_back(cam);
    }
    return cameras;
  } catch (const Error& e) {
    Fail(std::string(source) + ": " + e.what());
  }
}

std::vector<CameraParams> LoadCalibration(const std::string& path) {
  return ParseCalibration(ReadFile(path), path);
}

std::string FormatCalibration(const std::vector<CameraParams>& cameras) {
  std::string out = "[\n";
  for (size_t i = 0; i < cameras.size(); ++i) {
    const CameraParams& c = cameras[i];
    out += "  {\"id\":" + std::to_string(c.id) +
           ",\"K\":" + FormatMatrix(c.intrinsic) +
           ",\"R\":" + FormatMatrix(c.rotation) +
           ",\"t\":" + FormatVector(c.translation) +
           ",\"width\":" + std::to_string(c.width) +
           ",\"height\":" + std::to_string(c.height) + "}";
    out += i + 1 < cameras.size() ? ",\n" : "\n";
  }
  return out + "]\n";
}

JointObservationFrame ParseKeypointLine(std::string_view line) {
  const json doc = ParseJson(line);
  JointObservationFrame frame;
  frame.frame = Integer(Field(doc, "frame"), "frame");
  const json& views = Field(doc, "views");
  if (!views.is_array()) Fail("views must be an array");
  for (const json& v : views) {
    ViewKeypoints view;
    view.view_id = Integer(Field(v, "view_id"), "view_id");
    const json& joints = Field(v, "joints");
    if (!joints.is_array()) Fail("joints must be an array");
    for (const json& j : joints) {
      Keypoint kp;
      kp.idx = Integer(Field(j, "idx"), "idx");
      kp.pixel = {Number(Field(j, "u"), "u"), Number(Field(j, "v"), "v")};
      kp.confidence = Number(Field(j, "c"), "c");
      if (!kp.pixel.allFinite()) Fail("non-finite pixel");
      if (kp.confidence < 0.0 || kp.confidence > 1.0)
        Fail("confidence outside [0, 1]");
      view.joints.push_back(kp);
    }
    frame.views.push_back(std::move(view));
  }
  return frame;
}

std::string FormatKeypointLine(const JointObservationFrame& frame) {
  std::string out = "{\"frame\":" + std::to_string(frame.frame) + ",\"views\":[";
  for (size_t v = 0; v < frame.views.size(); ++v) {
    const ViewKeypoints& view = frame.views[v];
    if (v) out += ",";
    out += "{\"view_id\":" + std::to_string(view.view_id) + ",\"joints\":[";
    for (size_t j = 0; j < view.joints.size(); ++j) {
      const Keypoint& kp = view.joints[j];
      if (j) out += ",";
      out += "{\"idx\":" + std::to_string(kp.idx) +
             ",\"u\":" + FormatFixed(kp.pixel.x()) +
             ",\"v\":" + FormatFixed(kp.pixel.y()) +
             ",\"c\":" + FormatFixed(kp.confidence) + "}";
    }
    out += "]}";
  }
  return out + "]}";
}

Skeleton3D ParseSkeletonLine(std::string_view line,
                             const SkeletonTopology& topology) {
  const json doc = ParseJson(line);
  Skeleton3D skeleton(Integer(Field(doc, "frame"), "frame"), topology.NumJoints());
  const json& joints = Field(doc, "joints");
  if (!joints.is_array()) Fail("joints must be an array");
  for (const json& j : joints) {
    const int idx = Integer(Field(j, "idx"), "idx");
    if (idx < 0 || idx >= topology.NumJoints())
      Fail("joint index " + std::to_string(idx) + " out of range");
    const json& status = Field(j, "status");
    if (!status.is_string()) Fail("status must be a string");
    if (status == "Ok") {
      skeleton.positions[idx] = WorldPoint(Number(Field(j, "x"), "x"),
                                           Number(Field(j, "y"), "y"),
                                           Number(Field(j, "z"), "z"));
    } else if (status != "NoConsensus") {
      Fail("unknown joint status " + status.get<std::string>());
    }
  }
  return skeleton;
}

std::string FormatSkeletonLine(const Skeleton3D& skeleton,
                               const SkeletonTopology& topology) {
  std::string out =
      "{\"frame\":" + std::to_string(skeleton.frame) + ",\"joints\":[";
  for (int j = 0; j < static_cast<int>(skeleton.positions.size()); ++j) {
    if (j) out += ",";
    out += "{\"idx\":" + std::to_string(j) +
           ",\"name\":" + Quote(topology.JointName(j)) + ",\"status\":\"" +
           std::string(ToString(skeleton.Status(j))) + "\"";
    if (skeleton.Has(j)) {
      const WorldPoint& p = *skeleton.positions[j];
      out += ",\"x\":" + FormatFixed(p.x()) + ",\"y\":" + FormatFixed(p.y()) +
             ",\"z\":" + FormatFixed(p.z());
    }
    out += "}";
  }
  return out + "]}";
}

BoneTransformSet ParseAnimationLine(std::string_view line,
                                    const SkeletonTopology& topology) {
  const json doc = ParseJson(line);
  BoneTransformSet set;
  set.frame = Integer(Field(doc, "frame"), "frame");
  set.transforms.assign(topology.NumBones(), Mat4::Identity());
  set.statuses.assign(topology.NumBones(), BoneStatus::kFellBack);
  const json& bones = Field(doc, "bones");
  if (!bones.is_array()) Fail("bones must be an array");
  for (const json& b : bones) {
    const json& name = Field(b, "name");
    if (!name.is_string()) Fail("bone name must be a string");
    const int idx = topology.BoneIndex(name.get<std::string>());
    if (idx < 0) Fail("unknown bone " + name.get<std::string>());
    const json& status = Field(b, "status");
    if (status == "Ok") {
      set.statuses[idx] = BoneStatus::kOk;
    } else if (status != "FellBack") {
      Fail("unknown bone status");
    }
    set.transforms[idx] = Matrix<4, 4>(Field(b, "T"), "T");
  }
  return set;
}

std::string FormatAnimationLine(const BoneTransformSet& transforms,
                                const SkeletonTopology& topology) {
  std::string out =
      "{\"frame\":" + std::to_string(transforms.frame) + ",\"bones\":[";
  for (int b = 0; b < static_cast<int>(transforms.transforms.size()); ++b) {
    if (b) out += ",";
    out += "{\"name\":" + Quote(topology.bones[b].name) + ",\"status\":\"" +
           std::string(ToString(transforms.statuses[b])) +
           "\",\"T\":" + FormatMatrix(transforms.transforms[b]) + "}";
  }
  return out + "]}";
}

SkeletonTopology ParseTopology(std::string_view text) try {
  const json doc = ParseJson(text);
  SkeletonTopology t;
  for (const json& j : Field(doc, "joints")) {
    const json& name = Field(j, "name");
    if (!name.is_string()) Fail("joint name must be a string");
    t.joints.push_back({Integer(Field(j, "index"), "index"), name.get<std::string>()});
  }
  for (const json& b : Field(doc, "bones")) {
    BoneDef bone;
    bone.name = Field(b, "name").get<std::string>();
    bone.parent_joint = Integer(Field(b, "parent_joint"), "parent_joint");
    bone.child_joint = Integer(Field(b, "child_joint"), "child_joint");
    const json& parent = Field(b, "parent_bone");
    if (parent.is_null()) {
      bone.parent_bone = -1;
    } else {
      bone.parent_bone = t.BoneIndex(parent.get<std::string>());
      if (bone.parent_bone < 0)
        Fail("bone " + bone.name + " lists its parent after itself or an unknown parent");
    }
    const auto cls = FrameClassFromString(Field(b, "frame_class").get<std::string>());
    if (!cls) Fail("unknown frame class for bone " + bone.name);
    bone.frame_class = *cls;
    t.bones.push_back(bone);
  }
  t.root_joint = Integer(Field(doc, "root_joint"), "root_joint");
  for (const json& s : Field(doc, "root_sources"))
    t.root_sources.push_back(Integer(s, "root_sources"));
  try {
    t.Validate();
  } catch (const Error& e) {
    Fail(e.what());
  }
  return t;
} catch (const json::exception& e) {
  Fail(std::string("topology: ") + e.what());
}

std::string FormatTopology(const SkeletonTopology& topology) {
  json doc;
  doc["joints"] = json::array();
  for (const auto& j : topology.joints)
    doc["joints"].push_back({{"index", j.index}, {"name", j.name}});
  doc["bones"] = json::array();
  for (const auto& b : topology.bones) {
    json parent = b.parent_bone < 0 ? json(nullptr)
                                    : json(topology.bones[b.parent_bone].name);
    doc["bones"].push_back({{"name", b.name},
                            {"parent_joint", b.parent_joint},
                            {"child_joint", b.child_joint},
                            {"parent_bone", parent},
                            {"frame_class", std::string(ToString(b.frame_class))}});
  }
  doc["root_joint"] = topology.root_joint;
  doc["root_sources"] = topology.root_sources;
  return doc.dump(2) + "\n";
}

TPoseTemplate ParseTemplate(std::string_view text,
                            const SkeletonTopology& topology) {
  const json doc = ParseJson(text);
  TPoseTemplate tpl = TPoseTemplate::Default(topology);
  const json& rotations = Field(doc, "frame_rotation");
  for (FrameClass c : {FrameClass::kLeft, FrameClass::kRight, FrameClass::kUp,
                       FrameClass::kDown}) {
    const std::string key(ToString(c));
    tpl.frame_rotation[static_cast<int>(c)] =
        Matrix<3, 3>(Field(rotations, key.c_str()), "frame_rotation");
  }
  const json& rest = Field(doc, "rest_direction");
  for (int b = 0; b < topology.NumBones(); ++b) {
    tpl.rest_direction[b] =
        Vector3(Field(rest, topology.bones[b].name.c_str()), "rest_direction");
  }
  try {
    tpl.Validate(topology);
  } catch (const Error& e) {
    Fail(e.what());
  }
  return tpl;
}

std::string FormatTemplate(const TPoseTemplate& tpl,
                           const SkeletonTopology& topology) {
  json doc;
  for (FrameClass c : {FrameClass::kLeft, FrameClass::kRight, FrameClass::kUp,
                       FrameClass::kDown}) {
    const Mat3& m = tpl.FrameRotation(c);
    json rows = json::array();
    for (int r = 0; r < 3; ++r) rows.push_back({m(r, 0), m(r, 1), m(r, 2)});
    doc["frame_rotation"][std::string(ToString(c))] = rows;
  }
  for (int b = 0; b < topology.NumBones(); ++b) {
    const Vec3& d = tpl.rest_direction[b];
    doc["rest_direction"][topology.bones[b].name] = {d.x(), d.y(), d.z()};
  }
  return doc.dump(2) + "\n";
}

bool JsonLinesReader::Next(std::string& line) {
  while (std::getline(in_, line)) {
    ++line_number_;
    if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
  }
  return false;
}

void JsonLinesReader::Rethrow(const std::exception& e) const {
  throw Error(ErrorCode::kInputParse,
              source_ + ":" + std::to_string(line_number_) + ": " + e.what());
}

}  // namespace mocap
