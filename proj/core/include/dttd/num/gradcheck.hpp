#pragma once

#include <functional>

#include "dttd/num/graph.hpp"
#include "dttd/num/tensor.hpp"

namespace dttd::num {

// Builds a scalar loss from a registered leaf input.
using ScalarBuilder = std::function<Tensor(Graph&, const Tensor& input)>;

// Compares the analytic gradient of `builder` at `x0` against central finite
// differences with step h. Returns the max over coordinates of
// |analytic - numeric| / max(1, |analytic|).
double grad_check(const ScalarBuilder& builder, const Tensor& x0, double h);

}  // namespace dttd::num
