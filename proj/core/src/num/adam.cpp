#include "dttd/num/adam.hpp"

#include <cmath>

#include "dttd/common/error.hpp"

namespace dttd::num {

void adam_step(std::map<std::string, Tensor>& params, const std::map<std::string, Tensor>& grads,
               AdamState& state, double lr) {
  if (lr < 0.0) throw ValidationError("adam_step: negative learning rate");
  state.step_count += 1;
  const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step_count));
  const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step_count));

  for (auto& [name, p] : params) {
    auto& m = state.first_moment[name];
    auto& v = state.second_moment[name];
    if (m.empty()) m.assign(p.size(), 0.0);
    if (v.empty()) v.assign(p.size(), 0.0);
    if (m.size() != p.size() || v.size() != p.size()) {
      throw ValidationError("adam_step: state shape mismatch for parameter '" + name + "'");
    }

    auto it = grads.find(name);
    const bool has_grad = it != grads.end() && it->second.defined();
    if (has_grad && it->second.size() != p.size()) {
      throw ValidationError("adam_step: gradient shape mismatch for parameter '" + name + "'");
    }

    std::vector<double> out(p.values().begin(), p.values().end());
    for (size_t i = 0; i < out.size(); ++i) {
      const double g = has_grad ? it->second[i] : 0.0;
      m[i] = state.beta1 * m[i] + (1.0 - state.beta1) * g;
      v[i] = state.beta2 * v[i] + (1.0 - state.beta2) * g * g;
      const double mhat = m[i] / bc1;
      const double vhat = v[i] / bc2;
      out[i] -= lr * mhat / (std::sqrt(vhat) + state.epsilon);
    }
    p = Tensor::from(p.shape(), std::move(out));
  }
}

}  // namespace dttd::num
