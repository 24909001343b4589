#include "dttd/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dttd/common/error.hpp"
#include "dttd/geo/ops.hpp"

namespace dttd::metrics {

namespace {

using geo::Vec3;

double sq_dist(const Vec3& a, const Vec3& b) {
  const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
  return dx * dx + dy * dy + dz * dz;
}

// Static 3-d tree over a point set. Nearest-neighbor queries compute
// candidate distances with the same expression as the brute-force scan, so
// the minimum they return is the identical double.
class KdTree3 {
 public:
  explicit KdTree3(const geo::PointCloud& pts) : pts_(pts), idx_(pts.size()) {
    std::iota(idx_.begin(), idx_.end(), 0);
    build(0, static_cast<int>(pts.size()), 0);
  }

  double nearest_sq(const Vec3& q) const {
    double best = std::numeric_limits<double>::infinity();
    search(q, 0, static_cast<int>(pts_.size()), 0, best);
    return best;
  }

 private:
  static double coord(const Vec3& p, int axis) { return axis == 0 ? p.x : axis == 1 ? p.y : p.z; }

  void build(int lo, int hi, int depth) {
    if (hi - lo <= 1) return;
    const int axis = depth % 3;
    const int mid = (lo + hi) / 2;
    std::nth_element(idx_.begin() + lo, idx_.begin() + mid, idx_.begin() + hi, [&](int a, int b) {
      return coord(pts_[a], axis) < coord(pts_[b], axis);
    });
    build(lo, mid, depth + 1);
    build(mid + 1, hi, depth + 1);
  }

  void search(const Vec3& q, int lo, int hi, int depth, double& best) const {
    if (lo >= hi) return;
    const int axis = depth % 3;
    const int mid = (lo + hi) / 2;
    const Vec3& p = pts_[idx_[mid]];
    const double d = sq_dist(q, p);
    if (d < best) best = d;
    const double delta = coord(q, axis) - coord(p, axis);
    const int near_lo = delta < 0.0 ? lo : mid + 1;
    const int near_hi = delta < 0.0 ? mid : hi;
    const int far_lo = delta < 0.0 ? mid + 1 : lo;
    const int far_hi = delta < 0.0 ? hi : mid;
    search(q, near_lo, near_hi, depth + 1, best);
    if (delta * delta <= best) search(q, far_lo, far_hi, depth + 1, best);
  }

  const geo::PointCloud& pts_;
  std::vector<int> idx_;
};

}  // namespace

double add_error(const geo::PointCloud& m, const geo::Pose& gt, const geo::Pose& pred) {
  if (m.empty()) throw ValidationError("add_error: empty model point set");
  double acc = 0.0;
  for (const Vec3& x : m) acc += (gt.apply(x) - pred.apply(x)).norm();
  return acc / static_cast<double>(m.size());
}

double adds_error(const geo::PointCloud& m, const geo::Pose& gt, const geo::Pose& pred) {
  if (m.empty()) throw ValidationError("adds_error: empty model point set");
  const geo::PointCloud pred_pts = geo::transform_points(pred, m);
  KdTree3 tree(pred_pts);
  double acc = 0.0;
  for (const Vec3& x : m) acc += std::sqrt(tree.nearest_sq(gt.apply(x)));
  return acc / static_cast<double>(m.size());
}

double auc(const ErrorTrace& trace, const AucConfig& cfg) {
  if (trace.errors.empty()) throw ValidationError("auc: empty error trace");
  if (cfg.max_threshold <= 0.0 || cfg.num_steps <= 0) {
    throw ValidationError("auc: max_threshold and num_steps must be positive");
  }
  std::vector<double> sorted = trace.errors;
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double acc = 0.0;
  for (int k = 1; k <= cfg.num_steps; ++k) {
    const double tau = cfg.max_threshold * k / cfg.num_steps;
    const auto below = std::lower_bound(sorted.begin(), sorted.end(), tau) - sorted.begin();
    acc += static_cast<double>(below) / n;
  }
  return 100.0 * acc / cfg.num_steps;
}

double accuracy_at(const ErrorTrace& trace, double tau) {
  if (trace.errors.empty()) throw ValidationError("accuracy_at: empty error trace");
  if (tau <= 0.0) throw ValidationError("accuracy_at: threshold must be positive");
  size_t below = 0;
  for (double e : trace.errors) {
    if (e < tau) ++below;
  }
  return 100.0 * static_cast<double>(below) / static_cast<double>(trace.errors.size());
}

std::optional<double> depth_add_frame(std::span<const double> lidar, std::span<const double> reference,
                                      std::span<const uint8_t> mask) {
  if (lidar.size() != reference.size() || lidar.size() != mask.size()) {
    throw ValidationError("depth_add_frame: maps must share resolution");
  }
  double acc = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < lidar.size(); ++i) {
    if (!mask[i]) continue;
    if (lidar[i] <= 0.0 || reference[i] <= 0.0) continue;
    acc += std::abs(lidar[i] - reference[i]);
    ++count;
  }
  if (count == 0) return std::nullopt;
  return acc / static_cast<double>(count);
}

double depth_add_object(const std::vector<std::optional<double>>& per_frame) {
  double acc = 0.0;
  size_t count = 0;
  for (const auto& v : per_frame) {
    if (!v) continue;
    acc += *v;
    ++count;
  }
  if (count == 0) throw ValidationError("depth_add_object: no frame with valid overlap");
  return acc / static_cast<double>(count);
}

}  // namespace dttd::metrics
