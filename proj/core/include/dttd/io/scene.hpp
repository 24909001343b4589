#pragma once

#include <filesystem>
#include <vector>

#include "dttd/geo/pose.hpp"

namespace dttd::io {

/// In-memory form of a scene directory: camera, object models with metadata,
/// and the per-frame captures.
struct SceneData {
  geo::CameraIntrinsics intrinsics;
  std::vector<geo::ObjectModel> objects;
  std::vector<geo::RgbdFrame> frames;

  const geo::ObjectModel& object_by_id(int id) const;
};

// Canonical directory layout:
//   meta.json                    intrinsics, object metadata, per-frame poses
//   models/<name>.xyzrgb         "x y z r g b" per line, meters and 0-255
//   frames/NNNNNN.color.ppm      P6, 8-bit
//   frames/NNNNNN.depth.pgm      P5, maxval 65535, big-endian, millimeters
//   frames/NNNNNN.mask.pgm       P5, 8-bit, pixel value = object id
// Depth is quantized to integer millimeters on write (error <= 0.5 mm).
// The root must be empty or absent apart from harness run metadata
// (run.json); writing holds an exclusive lockfile. The sampled_m loss/eval
// point set is not persisted: it is re-derived deterministically on load.
void write_scene(const SceneData& scene, const std::filesystem::path& root);
SceneData load_scene(const std::filesystem::path& root);

// Loading re-derives each model's sampled_m with this many points (capped at
// the surface count) through a fixed per-object seed.
inline constexpr int kSampledPointCount = 256;

}  // namespace dttd::io
