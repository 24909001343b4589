#include "dttd/num/gradcheck.hpp"

#include <cmath>

#include "dttd/common/error.hpp"

namespace dttd::num {

double grad_check(const ScalarBuilder& builder, const Tensor& x0, double h) {
  if (h <= 0.0) throw ValidationError("grad_check: h must be positive");

  Graph g;
  Tensor x = g.leaf(x0);
  Tensor loss = builder(g, x);
  if (loss.size() != 1) throw ValidationError("grad_check: builder must produce a scalar loss");
  Tensor analytic = g.backward(loss).of(x);

  auto eval_at = [&](const std::vector<double>& values) {
    Graph fresh;
    Tensor xi = fresh.leaf(Tensor::from(x0.shape(), std::vector<double>(values)));
    return builder(fresh, xi).value();
  };

  std::vector<double> base(x0.values().begin(), x0.values().end());
  double worst = 0.0;
  for (size_t i = 0; i < base.size(); ++i) {
    std::vector<double> plus = base, minus = base;
    plus[i] += h;
    minus[i] -= h;
    const double numeric = (eval_at(plus) - eval_at(minus)) / (2.0 * h);
    const double a = analytic[i];
    const double err = std::abs(a - numeric) / std::max(1.0, std::abs(a));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace dttd::num
