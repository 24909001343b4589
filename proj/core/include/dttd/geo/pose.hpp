#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace dttd::geo {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;

  Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  double norm() const;
  double squared_norm() const { return dot(*this); }
};

/// Row-major 3x3 matrix.
struct Mat3 {
  std::array<double, 9> m{1, 0, 0, 0, 1, 0, 0, 0, 1};

  static Mat3 identity() { return {}; }
  Vec3 apply(const Vec3& v) const {
    return {m[0] * v.x + m[1] * v.y + m[2] * v.z, m[3] * v.x + m[4] * v.y + m[5] * v.z,
            m[6] * v.x + m[7] * v.y + m[8] * v.z};
  }
  Mat3 transposed() const;
  Mat3 operator*(const Mat3& o) const;
  double det() const;
};

/// Rigid transform p = [R|t] in meters.
struct Pose {
  Mat3 rotation;
  Vec3 translation;

  Vec3 apply(const Vec3& v) const { return rotation.apply(v) + translation; }
  // compose(a, b) applies b first, then a.
  static Pose compose(const Pose& a, const Pose& b);
  // Checks R^T R == I and det(R) == +1 to the given tolerance.
  bool is_rigid(double tol = 1e-9) const;
};

struct Quaternion {
  double w = 1.0, x = 0.0, y = 0.0, z = 0.0;

  double norm() const;
  Quaternion normalized() const;  // error below 1e-8 norm
};

// Proper rotation matrix from a quaternion of any nonzero norm (normalized
// internally). q and -q map to the same matrix.
Mat3 quat_to_rotmat(const Quaternion& q);

struct CameraIntrinsics {
  double fx = 0.0, fy = 0.0;
  double cx = 0.0, cy = 0.0;
  int width = 0, height = 0;

  void validate() const;
};

using PointCloud = std::vector<Vec3>;

/// A known object: dense colored surface points plus the m-point set used by
/// losses and metrics. Diameter is the max pairwise surface distance.
struct ObjectModel {
  int id = 0;
  std::string name;
  PointCloud surface_points;
  std::vector<std::array<uint8_t, 3>> surface_colors;  // parallel to surface_points
  PointCloud sampled_m;
  double diameter = 0.0;
  bool symmetric = false;
};

/// One capture: color, depth in meters (0 = invalid), an object-id mask and
/// ground-truth poses. Depth may be stored at its own resolution.
struct RgbdFrame {
  int id = 0;
  int width = 0, height = 0;
  std::vector<uint8_t> color;  // H*W*3
  int depth_width = 0, depth_height = 0;
  std::vector<double> depth;  // meters
  std::vector<uint8_t> mask;  // H*W, value = object id, 0 = background
  std::map<int, Pose> gt_poses;

  std::vector<uint8_t> object_mask(int object_id) const;
};

}  // namespace dttd::geo
