#include "dttd/geo/ops.hpp"

#include <cmath>
#include <string>

#include "dttd/common/error.hpp"
#include "dttd/common/random.hpp"

namespace dttd::geo {

PointCloud transform_points(const Pose& p, const PointCloud& pts) {
  PointCloud out;
  out.reserve(pts.size());
  for (const Vec3& v : pts) out.push_back(p.apply(v));
  return out;
}

PointCloud backproject(std::span<const double> depth, const CameraIntrinsics& intr,
                       std::span<const uint8_t> mask) {
  intr.validate();
  const size_t n = static_cast<size_t>(intr.width) * intr.height;
  if (depth.size() != n || mask.size() != n) {
    throw ValidationError("backproject: depth/mask size does not match intrinsics resolution");
  }
  PointCloud out;
  for (int v = 0; v < intr.height; ++v) {
    for (int u = 0; u < intr.width; ++u) {
      const size_t i = static_cast<size_t>(v) * intr.width + u;
      if (!mask[i]) continue;
      const double z = depth[i];
      if (z <= 0.0) continue;
      out.push_back({(u - intr.cx) * z / intr.fx, (v - intr.cy) * z / intr.fy, z});
    }
  }
  if (out.empty()) throw ValidationError("empty segment");
  return out;
}

std::vector<double> resize_depth_nearest(std::span<const double> src, int src_w, int src_h, int dst_w,
                                         int dst_h) {
  if (src_w <= 0 || src_h <= 0 || dst_w <= 0 || dst_h <= 0) {
    throw ValidationError("resize_depth_nearest: extents must be positive");
  }
  if (src.size() != static_cast<size_t>(src_w) * src_h) {
    throw ValidationError("resize_depth_nearest: source size mismatch");
  }
  std::vector<double> out(static_cast<size_t>(dst_w) * dst_h);
  for (int v = 0; v < dst_h; ++v) {
    const int sv = static_cast<int>(static_cast<int64_t>(v) * src_h / dst_h);
    for (int u = 0; u < dst_w; ++u) {
      const int su = static_cast<int>(static_cast<int64_t>(u) * src_w / dst_w);
      out[static_cast<size_t>(v) * dst_w + u] = src[static_cast<size_t>(sv) * src_w + su];
    }
  }
  return out;
}

PointCloud sample_model_points(const ObjectModel& model, int m, uint64_t seed) {
  const int n = static_cast<int>(model.surface_points.size());
  if (m > n) {
    throw ValidationError("sample_model_points: requested " + std::to_string(m) + " of " +
                          std::to_string(n) + " surface points");
  }
  rng::Stream stream = rng::Stream::derive(seed, 0x6d6f64656cull);
  std::vector<int> idx = stream.sample_without_replacement(n, m);
  PointCloud out;
  out.reserve(m);
  for (int i : idx) out.push_back(model.surface_points[i]);
  return out;
}

std::optional<PixelHit> project_to_pixel(const Vec3& p, const CameraIntrinsics& intr) {
  if (p.z <= 0.0) return std::nullopt;
  const double uf = intr.fx * p.x / p.z + intr.cx;
  const double vf = intr.fy * p.y / p.z + intr.cy;
  const int u = static_cast<int>(std::floor(uf + 0.5));
  const int v = static_cast<int>(std::floor(vf + 0.5));
  if (u < 0 || u >= intr.width || v < 0 || v >= intr.height) return std::nullopt;
  return PixelHit{u, v, p.z};
}

std::vector<double> render_reference_depth(const ObjectModel& model, const Pose& gt_pose,
                                           const CameraIntrinsics& intr, std::span<const uint8_t> mask) {
  intr.validate();
  const size_t n = static_cast<size_t>(intr.width) * intr.height;
  if (mask.size() != n) throw ValidationError("render_reference_depth: mask size mismatch");
  std::vector<double> depth(n, 0.0);
  for (const Vec3& x : model.surface_points) {
    const auto hit = project_to_pixel(gt_pose.apply(x), intr);
    if (!hit) continue;
    double& d = depth[static_cast<size_t>(hit->v) * intr.width + hit->u];
    if (d == 0.0 || hit->z < d) d = hit->z;
  }
  for (size_t i = 0; i < n; ++i) {
    if (!mask[i]) depth[i] = 0.0;
  }
  return depth;
}

}  // namespace dttd::geo
