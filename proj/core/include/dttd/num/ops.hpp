#pragma once

#include <span>
#include <vector>

#include "dttd/num/graph.hpp"
#include "dttd/num/tensor.hpp"

namespace dttd::num {

// Differentiable primitives. Every function computes eagerly and records a
// graph node whenever any input carries one. Tensors are rank 1 or 2 unless
// noted; a rank-1 tensor behaves as a single row.
//
// Broadcasting for add/sub/mul/div, in this order of precedence:
//   * identical shapes                        -> elementwise
//   * either side has a single element        -> scalar against the other
//   * rhs is a row vector {m} or {1,m}        -> applied per row of lhs (n,m)
//   * rhs is a column {n,1}                   -> applied per column of lhs (n,m)
// Anything else is a shape error naming the operation and both shapes.

Tensor matmul(const Tensor& a, const Tensor& b);
Tensor add(const Tensor& a, const Tensor& b);
Tensor sub(const Tensor& a, const Tensor& b);
Tensor mul(const Tensor& a, const Tensor& b);
Tensor div(const Tensor& a, const Tensor& b);  // any zero divisor is an error

Tensor relu(const Tensor& x);
Tensor softmax(const Tensor& x);     // over the last axis; rows sum to 1
Tensor layer_norm(const Tensor& x);  // over the last axis, epsilon 1e-5
Tensor log(const Tensor& x);         // error on non-positive input, never NaN
Tensor sigmoid(const Tensor& x);
Tensor sqrt(const Tensor& x);        // error on negative input

Tensor concat(const std::vector<Tensor>& xs, int axis);  // axis 0 or 1
Tensor reshape(const Tensor& x, std::vector<int> shape);
Tensor max_reduce(const Tensor& x, int axis);  // (n,m) -> {1,m} or {n,1}; ties pick first
Tensor mean(const Tensor& x);                  // full reduction -> {1}
Tensor sum(const Tensor& x);                   // full reduction -> {1}

Tensor transpose(const Tensor& x);
Tensor slice(const Tensor& x, int axis, int start, int len);
// Row gather; index -1 produces a zero row (used for implicit zero padding).
Tensor gather_rows(const Tensor& x, std::span<const int> indices);
// {1,m} or {m} -> {n,m}
Tensor repeat_rows(const Tensor& x, int n);
Tensor scale(const Tensor& x, double k);

enum class OpTag {
  kMatmul,
  kAdd,
  kMul,
  kRelu,
  kSoftmax,
  kLayerNorm,
  kConcat,
  kReshape,
  kMaxReduce,
  kLog,
  kSigmoid,
  kMean,
};

// Uniform dispatcher over the primitive set. `args` carries the axis for
// concat/max-reduce and the target shape for reshape.
Tensor forward_primitive(OpTag tag, std::span<const Tensor> inputs, std::span<const int> args = {});

namespace kernels {
// C (n x m) = A (n x k) * B (k x m); C is overwritten.
void matmul_nn(const double* a, const double* b, double* c, int n, int k, int m);
// C (n x k) = A (n x m) * B^T, B is (k x m).
void matmul_nt(const double* a, const double* b, double* c, int n, int m, int k);
// C (k x m) = A^T * G, A is (n x k), G is (n x m).
void matmul_tn(const double* a, const double* g, double* c, int n, int k, int m);
}  // namespace kernels

}  // namespace dttd::num
