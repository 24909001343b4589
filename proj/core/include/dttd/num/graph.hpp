#pragma once

#include <functional>
#include <vector>

#include "dttd/num/tensor.hpp"

namespace dttd::num {

/// Gradients keyed by node id. Nodes the loss never touched read back as
/// exact zeros of the node's shape.
class GradientMap {
 public:
  Tensor at(int node_id) const;
  Tensor of(const Tensor& t) const;
  bool has_flow(int node_id) const;

 private:
  std::vector<Tensor> grads_;
  std::vector<std::vector<int>> shapes_;
  friend class Graph;
};

/// Append-only reverse-mode tape. Node ids increase in execution order, so
/// a single reverse sweep visits every node after all of its consumers.
/// One graph is owned by one logical thread for the duration of a
/// forward/backward pass.
class Graph {
 public:
  // Vector-Jacobian product: maps the upstream gradient to one gradient per
  // recorded input (entries for constant inputs stay default-constructed).
  using Vjp = std::function<std::vector<Tensor>(const Tensor& upstream)>;

  // Registers a value as a differentiable leaf.
  Tensor leaf(const Tensor& value);

  // Records one operation node. `input_nodes` uses -1 for inputs that are
  // plain constants; their vjp slots are ignored.
  Tensor record(const char* tag, std::vector<int> input_nodes, Tensor out, Vjp vjp);

  // Reverse sweep from a scalar loss node.
  GradientMap backward(const Tensor& loss) const;

  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  const char* tag_of(int node_id) const { return nodes_[node_id].tag; }

 private:
  struct Node {
    const char* tag;
    std::vector<int> inputs;
    std::vector<int> shape;
    Vjp vjp;
  };
  std::vector<Node> nodes_;
};

}  // namespace dttd::num
