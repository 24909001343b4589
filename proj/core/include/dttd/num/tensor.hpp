#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

namespace dttd::num {

class Graph;

/// Dense n-dimensional array of 64-bit reals. Storage is immutable and
/// shared, so copies are cheap; creating a new value always allocates a
/// fresh buffer. A tensor optionally carries a handle into the compute
/// graph that produced it, which is how reverse-mode differentiation finds
/// its way back to the leaves.
class Tensor {
 public:
  Tensor() = default;

  static Tensor zeros(std::vector<int> shape);
  static Tensor full(std::vector<int> shape, double v);
  static Tensor from(std::vector<int> shape, std::vector<double> values);
  static Tensor scalar(double v);

  const std::vector<int>& shape() const { return shape_; }
  size_t size() const;
  bool defined() const { return data_ != nullptr; }

  // 2-D accessors; rank-1 tensors count as a single row.
  int rows() const;
  int cols() const;
  double at(int i, int j) const { return (*data_)[static_cast<size_t>(i) * cols() + j]; }

  std::span<const double> values() const { return {data_->data(), data_->size()}; }
  double value() const;  // scalar accessor; throws unless size() == 1
  double operator[](size_t i) const { return (*data_)[i]; }

  bool requires_grad() const { return requires_grad_; }
  int node() const { return node_; }
  Graph* graph() const { return graph_; }

  bool same_shape(const Tensor& o) const { return shape_ == o.shape_; }
  std::string shape_str() const;

 private:
  std::vector<int> shape_;
  std::shared_ptr<const std::vector<double>> data_;
  Graph* graph_ = nullptr;
  int node_ = -1;
  bool requires_grad_ = false;

  friend class Graph;
};

size_t shape_numel(const std::vector<int>& shape);
std::string shape_to_string(const std::vector<int>& shape);

}  // namespace dttd::num
