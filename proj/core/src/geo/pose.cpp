#include "dttd/geo/pose.hpp"

#include <cmath>

#include "dttd/common/error.hpp"

namespace dttd::geo {

double Vec3::norm() const {
  return std::sqrt(dot(*this));
}

Mat3 Mat3::transposed() const {
  Mat3 t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) t.m[j * 3 + i] = m[i * 3 + j];
  return t;
}

Mat3 Mat3::operator*(const Mat3& o) const {
  Mat3 r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += m[i * 3 + k] * o.m[k * 3 + j];
      r.m[i * 3 + j] = s;
    }
  return r;
}

double Mat3::det() const {
  return m[0] * (m[4] * m[8] - m[5] * m[7]) - m[1] * (m[3] * m[8] - m[5] * m[6]) +
         m[2] * (m[3] * m[7] - m[4] * m[6]);
}

Pose Pose::compose(const Pose& a, const Pose& b) {
  Pose out;
  out.rotation = a.rotation * b.rotation;
  out.translation = a.rotation.apply(b.translation) + a.translation;
  return out;
}

bool Pose::is_rigid(double tol) const {
  const Mat3 rtr = rotation.transposed() * rotation;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const double expect = i == j ? 1.0 : 0.0;
      if (std::abs(rtr.m[i * 3 + j] - expect) > tol) return false;
    }
  return std::abs(rotation.det() - 1.0) <= tol;
}

double Quaternion::norm() const {
  return std::sqrt(w * w + x * x + y * y + z * z);
}

Quaternion Quaternion::normalized() const {
  const double n = norm();
  if (n <= 1e-8) throw ValidationError("degenerate quaternion");
  return {w / n, x / n, y / n, z / n};
}

Mat3 quat_to_rotmat(const Quaternion& raw) {
  const Quaternion q = raw.normalized();
  Mat3 r;
  r.m = {1 - 2 * (q.y * q.y + q.z * q.z), 2 * (q.x * q.y - q.w * q.z),     2 * (q.x * q.z + q.w * q.y),
         2 * (q.x * q.y + q.w * q.z),     1 - 2 * (q.x * q.x + q.z * q.z), 2 * (q.y * q.z - q.w * q.x),
         2 * (q.x * q.z - q.w * q.y),     2 * (q.y * q.z + q.w * q.x),     1 - 2 * (q.x * q.x + q.y * q.y)};
  return r;
}

void CameraIntrinsics::validate() const {
  if (fx <= 0.0 || fy <= 0.0) throw ValidationError("intrinsics: focal lengths must be positive");
  if (width <= 0 || height <= 0) throw ValidationError("intrinsics: image extents must be positive");
  if (cx < 0.0 || cx >= width || cy < 0.0 || cy >= height) {
    throw ValidationError("intrinsics: principal point outside the image");
  }
}

std::vector<uint8_t> RgbdFrame::object_mask(int object_id) const {
  std::vector<uint8_t> out(mask.size(), 0);
  for (size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] == object_id ? 1 : 0;
  return out;
}

}  // namespace dttd::geo
