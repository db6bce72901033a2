#include "structsum/model/lstm.hpp"

#include <stdexcept>
#include <vector>

namespace structsum::model {

using namespace structsum::ad;

LstmCell::LstmCell(Var W, Var b, int input_dim, int hidden_dim)
    : W_(W), b_(b), input_(input_dim), hidden_(hidden_dim) {
  if (W.rows() != input_dim + hidden_dim || W.cols() != 4 * hidden_dim) {
    throw ShapeError("lstm", W.shape(), Shape{input_dim + hidden_dim, 4 * hidden_dim});
  }
  W_input_ = slice_rows(W_, 0, input_);
  W_hidden_ = slice_rows(W_, input_, hidden_);
}

LstmState LstmCell::zero_state(Graph& g) const {
  return {g.constant(Tensor::Zero(1, hidden_)), g.constant(Tensor::Zero(1, hidden_))};
}

LstmState LstmCell::gates(Var z, Var c_prev) const {
  Var i = sigmoid(slice_cols(z, 0, hidden_));
  Var f = sigmoid(slice_cols(z, hidden_, hidden_));
  Var g = tanh(slice_cols(z, 2 * hidden_, hidden_));
  Var o = sigmoid(slice_cols(z, 3 * hidden_, hidden_));
  Var c = add(mul(f, c_prev), mul(i, g));
  Var h = mul(o, tanh(c));
  return {h, c};
}

LstmState LstmCell::step(Var x, const LstmState& prev) const {
  Var z = add(add(matmul(x, W_input_), matmul(prev.h, W_hidden_)), b_);
  return gates(z, prev.c);
}

Var LstmCell::run(Var inputs, bool reverse) const {
  const Index n = inputs.rows();
  // Input projections for every position in one product.
  Var projected = add(matmul(inputs, W_input_), b_);
  LstmState state = zero_state(inputs.graph());
  std::vector<Var> outputs(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    Index t = reverse ? n - 1 - k : k;
    Var z = add(slice_rows(projected, t, 1), matmul(state.h, W_hidden_));
    state = gates(z, state.c);
    outputs[static_cast<std::size_t>(t)] = state.h;
  }
  return concat_rows(std::span<const Var>(outputs));
}

}  // namespace structsum::model
