#include "dttd/num/tensor.hpp"

#include <sstream>

#include "dttd/common/error.hpp"

namespace dttd::num {

size_t shape_numel(const std::vector<int>& shape) {
  size_t n = 1;
  for (int e : shape) {
    if (e <= 0) throw ValidationError("tensor shape has non-positive extent " + shape_to_string(shape));
    n *= static_cast<size_t>(e);
  }
  return n;
}

std::string shape_to_string(const std::vector<int>& shape) {
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < shape.size(); ++i) os << (i ? "x" : "") << shape[i];
  os << ")";
  return os.str();
}

Tensor Tensor::zeros(std::vector<int> shape) {
  return full(std::move(shape), 0.0);
}

Tensor Tensor::full(std::vector<int> shape, double v) {
  size_t n = shape_numel(shape);
  Tensor t;
  t.shape_ = std::move(shape);
  t.data_ = std::make_shared<const std::vector<double>>(n, v);
  return t;
}

Tensor Tensor::from(std::vector<int> shape, std::vector<double> values) {
  if (shape_numel(shape) != values.size()) {
    throw ValidationError("tensor shape " + shape_to_string(shape) + " does not match " +
                          std::to_string(values.size()) + " values");
  }
  Tensor t;
  t.shape_ = std::move(shape);
  t.data_ = std::make_shared<const std::vector<double>>(std::move(values));
  return t;
}

Tensor Tensor::scalar(double v) {
  return from({1}, {v});
}

size_t Tensor::size() const {
  return data_ ? data_->size() : 0;
}

int Tensor::rows() const {
  if (shape_.size() <= 1) return 1;
  return shape_[0];
}

int Tensor::cols() const {
  if (shape_.empty()) return 0;
  return shape_.size() == 1 ? shape_[0] : shape_[1];
}

double Tensor::value() const {
  if (size() != 1) throw ValidationError("scalar access on tensor of shape " + shape_str());
  return (*data_)[0];
}

std::string Tensor::shape_str() const {
  return shape_to_string(shape_);
}

}  // namespace dttd::num
