#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dttd/geo/pose.hpp"

namespace dttd::geo {

PointCloud transform_points(const Pose& p, const PointCloud& pts);

// Back-projects masked pixels with depth > 0 into camera coordinates, in
// row-major scan order. The depth map must already be at mask resolution.
// Throws "empty segment" when no masked pixel carries valid depth.
PointCloud backproject(std::span<const double> depth, const CameraIntrinsics& intr,
                       std::span<const uint8_t> mask);

// Nearest-neighbor resize; never invents depth values.
std::vector<double> resize_depth_nearest(std::span<const double> src, int src_w, int src_h, int dst_w,
                                         int dst_h);

// Uniform sample of m surface points without replacement, deterministic per
// seed, no duplicate indices.
PointCloud sample_model_points(const ObjectModel& model, int m, uint64_t seed);

// Projects the posed dense model through a point z-buffer, then zeroes every
// pixel outside the object's mask.
std::vector<double> render_reference_depth(const ObjectModel& model, const Pose& gt_pose,
                                           const CameraIntrinsics& intr, std::span<const uint8_t> mask);

// Pinhole projection to the nearest pixel; nullopt when behind the camera or
// outside the image. Shared by the renderer and the scene generator so both
// quantize identically.
struct PixelHit {
  int u;
  int v;
  double z;
};
std::optional<PixelHit> project_to_pixel(const Vec3& p, const CameraIntrinsics& intr);

}  // namespace dttd::geo
