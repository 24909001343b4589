#pragma once

#include <map>
#include <string>
#include <vector>

#include "dttd/num/tensor.hpp"

namespace dttd::num {

/// Bias-corrected adaptive-moment optimizer state. Moment arrays are keyed
/// by parameter name and always match the parameter shapes.
struct AdamState {
  std::map<std::string, std::vector<double>> first_moment;
  std::map<std::string, std::vector<double>> second_moment;
  long step_count = 0;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

// One optimizer step over all named parameters. Parameters without a
// gradient entry are treated as having a zero gradient (frozen), not as an
// error. Moment arrays are created lazily on first use.
void adam_step(std::map<std::string, Tensor>& params, const std::map<std::string, Tensor>& grads,
               AdamState& state, double lr);

}  // namespace dttd::num
