#include "dttd/num/graph.hpp"

#include <string>

#include "dttd/common/error.hpp"

namespace dttd::num {

Tensor GradientMap::at(int node_id) const {
  if (node_id < 0 || node_id >= static_cast<int>(grads_.size())) {
    throw ValidationError("gradient requested for unknown node " + std::to_string(node_id));
  }
  if (!grads_[node_id].defined()) return Tensor::zeros(shapes_[node_id]);
  return grads_[node_id];
}

Tensor GradientMap::of(const Tensor& t) const {
  if (t.node() < 0) throw ValidationError("gradient requested for a tensor outside the graph");
  return at(t.node());
}

bool GradientMap::has_flow(int node_id) const {
  return node_id >= 0 && node_id < static_cast<int>(grads_.size()) && grads_[node_id].defined();
}

Tensor Graph::leaf(const Tensor& value) {
  if (!value.defined()) throw ValidationError("cannot register an empty tensor as a leaf");
  Tensor t = value;
  t.graph_ = this;
  t.node_ = static_cast<int>(nodes_.size());
  t.requires_grad_ = true;
  nodes_.push_back(Node{"leaf", {}, t.shape(), nullptr});
  return t;
}

Tensor Graph::record(const char* tag, std::vector<int> input_nodes, Tensor out, Vjp vjp) {
  out.graph_ = this;
  out.node_ = static_cast<int>(nodes_.size());
  out.requires_grad_ = true;
  nodes_.push_back(Node{tag, std::move(input_nodes), out.shape(), std::move(vjp)});
  return out;
}

GradientMap Graph::backward(const Tensor& loss) const {
  if (loss.size() != 1) {
    throw ValidationError("backward requires a scalar loss, got shape " + loss.shape_str());
  }
  if (loss.graph() != this || loss.node() < 0) {
    throw ValidationError("backward: loss tensor does not belong to this graph");
  }

  GradientMap map;
  map.grads_.resize(nodes_.size());
  map.shapes_.reserve(nodes_.size());
  for (const Node& n : nodes_) map.shapes_.push_back(n.shape);

  map.grads_[loss.node()] = Tensor::full({1}, 1.0);

  for (int id = loss.node(); id >= 0; --id) {
    if (!map.grads_[id].defined()) continue;
    const Node& node = nodes_[id];
    if (!node.vjp) continue;  // leaf
    std::vector<Tensor> contrib = node.vjp(map.grads_[id]);
    for (size_t k = 0; k < node.inputs.size(); ++k) {
      int in = node.inputs[k];
      if (in < 0) continue;
      if (!contrib[k].defined()) continue;
      Tensor& slot = map.grads_[in];
      if (!slot.defined()) {
        slot = contrib[k];
      } else {
        std::vector<double> acc(slot.values().begin(), slot.values().end());
        auto add = contrib[k].values();
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += add[i];
        slot = Tensor::from(slot.shape(), std::move(acc));
      }
    }
  }
  return map;
}

}  // namespace dttd::num
