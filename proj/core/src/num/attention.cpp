#include "dttd/num/attention.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dttd/common/error.hpp"
#include "dttd/num/ops.hpp"

namespace dttd::num {

AttentionConfig::AttentionConfig(int heads, int model) : num_heads(heads), d_model(model) {
  if (heads <= 0 || model <= 0) throw ValidationError("attention: head count and width must be positive");
  if (model % heads != 0) {
    throw ValidationError("attention: d_model " + std::to_string(model) + " not divisible by num_heads " +
                          std::to_string(heads));
  }
  d_head = model / heads;
}

namespace {

// Content-keyed canonical ordering of the token axis: sort by (k row, v row)
// lexicographically. Any permutation of identical (k, v) multisets maps to
// the same ordering, so token-axis sums become permutation-invariant.
std::vector<int> canonical_order(const Tensor& k, const Tensor& v) {
  const int n = k.rows();
  const int km = k.cols(), vm = v.cols();
  auto kv = k.values();
  auto vv = v.values();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    const double* ka = kv.data() + static_cast<size_t>(a) * km;
    const double* kb = kv.data() + static_cast<size_t>(b) * km;
    for (int j = 0; j < km; ++j) {
      if (ka[j] != kb[j]) return ka[j] < kb[j];
    }
    const double* va = vv.data() + static_cast<size_t>(a) * vm;
    const double* vb = vv.data() + static_cast<size_t>(b) * vm;
    for (int j = 0; j < vm; ++j) {
      if (va[j] != vb[j]) return va[j] < vb[j];
    }
    return false;
  });
  return order;
}

}  // namespace

Tensor scaled_dot_product_attention(const Tensor& q, const Tensor& k, const Tensor& v,
                                    const AttentionConfig& cfg, AttentionTrace* trace) {
  if (q.shape().size() != 2 || k.shape().size() != 2 || v.shape().size() != 2) {
    throw ValidationError("attention: Q, K, V must be rank-2");
  }
  if (q.cols() != cfg.d_model || k.cols() != cfg.d_model || v.cols() != cfg.d_model) {
    throw ValidationError("attention: token width " + std::to_string(q.cols()) +
                          " does not match d_model " + std::to_string(cfg.d_model));
  }
  const int kl = k.rows();
  if (v.rows() != kl) throw ValidationError("attention: K and V row counts disagree");

  std::vector<int> order = canonical_order(k, v);
  Tensor kc = gather_rows(k, order);
  Tensor vc = gather_rows(v, order);

  const double inv_scale = 1.0 / std::sqrt(static_cast<double>(cfg.d_head));
  std::vector<Tensor> head_outputs;
  head_outputs.reserve(cfg.num_heads);
  for (int h = 0; h < cfg.num_heads; ++h) {
    Tensor qh = slice(q, 1, h * cfg.d_head, cfg.d_head);
    Tensor kh = slice(kc, 1, h * cfg.d_head, cfg.d_head);
    Tensor vh = slice(vc, 1, h * cfg.d_head, cfg.d_head);
    Tensor scores = scale(matmul(qh, transpose(kh)), inv_scale);
    Tensor probs = softmax(scores);
    if (trace) {
      // Undo the canonical key ordering for visualization.
      const int ql = probs.rows();
      std::vector<double> undone(static_cast<size_t>(ql) * kl);
      auto pv = probs.values();
      for (int i = 0; i < ql; ++i)
        for (int j = 0; j < kl; ++j)
          undone[static_cast<size_t>(i) * kl + order[j]] = pv[static_cast<size_t>(i) * kl + j];
      trace->head_probs.push_back(Tensor::from({ql, kl}, std::move(undone)));
    }
    head_outputs.push_back(matmul(probs, vh));
  }
  return cfg.num_heads == 1 ? head_outputs[0] : concat(head_outputs, 1);
}

}  // namespace dttd::num
