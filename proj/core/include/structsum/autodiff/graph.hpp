#pragma once

#include <functional>
#include <span>
#include <unordered_map>
#include <type_traits>
#include <vector>

#include "structsum/autodiff/parameter.hpp"
#include "structsum/autodiff/tensor.hpp"

namespace structsum::ad {

class Graph;

// Handle to a node of a Graph. Cheap to copy; valid as long as the graph.
class Var {
 public:
  Var() = default;
  Var(Graph* graph, int id) : graph_(graph), id_(id) {}

  bool valid() const { return graph_ != nullptr; }
  Graph& graph() const { return *graph_; }
  int id() const { return id_; }

  const Tensor& value() const;
  // Empty until backward() reaches this node.
  const Tensor& grad() const;
  Shape shape() const;
  Index rows() const { return shape().rows; }
  Index cols() const { return shape().cols; }
  // Value of a 1 x 1 node.
  double scalar() const;

 private:
  Graph* graph_ = nullptr;
  int id_ = -1;
};

// A define-by-run computation graph. Nodes are appended in creation order,
// which is already a topological order, so backward() walks ids downward
// and visits each node once.
//
// A graph supports a single backward() call; a second call throws. Parameter
// gradients are *accumulated* into Parameter::grad, so several graphs (one
// per training instance) can contribute to one mini-batch gradient.
class Graph {
 public:
  using BackwardFn = std::function<void(Graph&, int)>;

  Graph() = default;
  Graph(const Graph&) = delete;
  Graph& operator=(const Graph&) = delete;

  Var constant(Tensor value);
  Var scalar(double value);
  // One node per parameter per graph; repeated calls return the same node.
  Var param(Parameter& p);
  // Differentiable leaf not tied to a Parameter (used by grad_check).
  Var variable(Tensor value);

  // Appends an op node. `backward` reads the node's gradient and
  // accumulates into its inputs. Set `force_grad` for ops that write
  // parameter gradients directly without graph inputs.
  Var emit(Tensor value, std::vector<int> inputs, BackwardFn backward, bool force_grad = false);

  const Tensor& value(int id) const;
  const Tensor& grad(int id) const { return nodes_[static_cast<std::size_t>(id)].grad; }
  bool requires_grad(int id) const { return nodes_[static_cast<std::size_t>(id)].requires_grad; }
  const std::vector<int>& inputs(int id) const { return nodes_[static_cast<std::size_t>(id)].inputs; }
  std::size_t size() const { return nodes_.size(); }

  // Adds `delta` to the gradient of node `id` (no-op for constants).
  template <typename Expr>
  void accumulate(int id, const Expr& delta) {
    Node& n = nodes_[static_cast<std::size_t>(id)];
    if (!n.requires_grad) return;
    if (n.grad.size() == 0) {
      n.grad = delta;
    } else if constexpr (std::is_base_of_v<Eigen::ArrayBase<Expr>, Expr>) {
      n.grad.array() += delta;
    } else {
      n.grad += delta;
    }
  }
  // Adds `delta` into a sub-block of node `id`'s gradient.
  void accumulate_block(int id, Index row, Index col, const Tensor& delta);

  // Seeds d(loss)/d(loss) = scale and propagates. Loss must be 1 x 1.
  void backward(Var loss, double scale = 1.0);
  bool backward_done() const { return backward_done_; }

 private:
  struct Node {
    Tensor value;
    const Tensor* external = nullptr;  // parameter value, not copied
    Tensor grad;
    std::vector<int> inputs;
    BackwardFn backward;
    Parameter* param = nullptr;
    bool requires_grad = false;
  };

  Node& node(int id) { return nodes_[static_cast<std::size_t>(id)]; }
  Tensor& grad_storage(int id);

  std::vector<Node> nodes_;
  std::unordered_map<const Parameter*, int> param_nodes_;
  bool backward_done_ = false;
};

}  // namespace structsum::ad
