#pragma once

#include <vector>

#include "dttd/num/tensor.hpp"

namespace dttd::num {

/// Multi-head geometry for scaled dot-product attention.
struct AttentionConfig {
  int num_heads;
  int d_head;
  int d_model;

  AttentionConfig(int heads, int model);
};

/// Per-head attention probabilities from the forward pass, rows = queries,
/// columns = keys in the caller's original token order.
struct AttentionTrace {
  std::vector<Tensor> head_probs;
};

// Full bidirectional (unmasked) attention over L tokens of width d_model.
// Keys and values are internally brought into a content-sorted canonical
// order before any reduction over the token axis, which makes the op
// bitwise equivariant under identical row permutations of Q, K, V.
Tensor scaled_dot_product_attention(const Tensor& q, const Tensor& k, const Tensor& v,
                                    const AttentionConfig& cfg, AttentionTrace* trace = nullptr);

}  // namespace dttd::num
