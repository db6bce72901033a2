#include "structsum/autodiff/graph.hpp"

#include <stdexcept>

namespace structsum::ad {

const Tensor& Var::value() const { return graph_->value(id_); }
const Tensor& Var::grad() const { return graph_->grad(id_); }
Shape Var::shape() const { return shape_of(value()); }

double Var::scalar() const {
  const Tensor& v = value();
  if (v.size() != 1) throw ShapeError("scalar", shape_of(v), "is not 1 x 1");
  return v(0, 0);
}

Var Graph::constant(Tensor value) {
  Node n;
  n.value = std::move(value);
  nodes_.push_back(std::move(n));
  return {this, static_cast<int>(nodes_.size() - 1)};
}

Var Graph::scalar(double value) { return constant(Tensor::Constant(1, 1, value)); }

Var Graph::param(Parameter& p) {
  if (auto it = param_nodes_.find(&p); it != param_nodes_.end()) return {this, it->second};
  Node n;
  n.external = &p.value;
  n.param = &p;
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  int id = static_cast<int>(nodes_.size() - 1);
  param_nodes_[&p] = id;
  return {this, id};
}

Var Graph::variable(Tensor value) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = true;
  nodes_.push_back(std::move(n));
  return {this, static_cast<int>(nodes_.size() - 1)};
}

Var Graph::emit(Tensor value, std::vector<int> inputs, BackwardFn backward, bool force_grad) {
  Node n;
  n.value = std::move(value);
  n.requires_grad = force_grad;
  for (int in : inputs) n.requires_grad = n.requires_grad || requires_grad(in);
  n.inputs = std::move(inputs);
  if (n.requires_grad) n.backward = std::move(backward);
  nodes_.push_back(std::move(n));
  return {this, static_cast<int>(nodes_.size() - 1)};
}

const Tensor& Graph::value(int id) const {
  const Node& n = nodes_[static_cast<std::size_t>(id)];
  return n.external != nullptr ? *n.external : n.value;
}

Tensor& Graph::grad_storage(int id) {
  Node& n = node(id);
  if (n.grad.size() == 0) {
    const Tensor& v = value(id);
    n.grad = Tensor::Zero(v.rows(), v.cols());
  }
  return n.grad;
}

void Graph::accumulate_block(int id, Index row, Index col, const Tensor& delta) {
  if (!requires_grad(id)) return;
  grad_storage(id).block(row, col, delta.rows(), delta.cols()) += delta;
}

void Graph::backward(Var loss, double scale) {
  if (loss.valid() && &loss.graph() != this) throw std::invalid_argument("backward: loss belongs to another graph");
  if (backward_done_) throw std::logic_error("backward: already called on this graph");
  const Tensor& lv = value(loss.id());
  if (lv.size() != 1) throw ShapeError("backward", shape_of(lv), "is not a scalar loss");
  backward_done_ = true;

  node(loss.id()).grad = Tensor::Constant(1, 1, scale);
  for (int id = loss.id(); id >= 0; --id) {
    Node& n = node(id);
    if (!n.requires_grad || n.grad.size() == 0) continue;
    if (n.backward) n.backward(*this, id);
    if (n.param != nullptr) n.param->grad += n.grad;
  }
}

}  // namespace structsum::ad
