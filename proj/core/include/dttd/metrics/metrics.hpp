#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "dttd/geo/pose.hpp"

namespace dttd::metrics {

/// Per-frame errors (meters) for one object.
struct ErrorTrace {
  std::vector<double> errors;
  int object_id = 0;
  std::vector<int> frame_ids;
};

/// Success-threshold integration grid. The threshold axis [0, max_threshold]
/// is what "normalized between 0 and 1" rescales; the value stays a config
/// field rather than a constant at call sites.
struct AucConfig {
  double max_threshold = 0.10;  // meters
  int num_steps = 1000;
};

// Mean distance between corresponding model points under the two poses.
double add_error(const geo::PointCloud& m, const geo::Pose& gt, const geo::Pose& pred);

// Nearest-point variant for ambiguous matchings. Uses a k-d tree; the result
// is bit-identical to the O(m^2) scan.
double adds_error(const geo::PointCloud& m, const geo::Pose& gt, const geo::Pose& pred);

// Riemann sum of the success fraction over a uniform grid spanning
// (0, max_threshold]; errors >= max_threshold contribute nothing. The
// discretization error is bounded by 100 / num_steps. Returns [0, 100].
double auc(const ErrorTrace& trace, const AucConfig& cfg);

// Percentage of errors strictly below tau.
double accuracy_at(const ErrorTrace& trace, double tau);

// Mean |lidar - reference| over masked pixels where both depths are > 0.
// nullopt flags a frame with no overlapping valid pixels.
std::optional<double> depth_add_frame(std::span<const double> lidar, std::span<const double> reference,
                                      std::span<const uint8_t> mask);

// Mean across frames, skipping no-overlap entries; error when none remain.
double depth_add_object(const std::vector<std::optional<double>>& per_frame);

}  // namespace dttd::metrics
