#pragma once

#include "structsum/autodiff/ops.hpp"

namespace structsum::model {

struct LstmState {
  ad::Var h;  // 1 x hidden
  ad::Var c;  // 1 x hidden
};

// A standard LSTM cell without peepholes. W is (input + hidden) x 4*hidden
// with gate blocks [input, forget, cell, output]; b is 1 x 4*hidden.
class LstmCell {
 public:
  LstmCell(ad::Var W, ad::Var b, int input_dim, int hidden_dim);

  LstmState step(ad::Var x, const LstmState& prev) const;
  // Runs over the rows of `inputs` (S x input) from a zero state, in reverse
  // when asked. Returns S x hidden states aligned with the input rows.
  ad::Var run(ad::Var inputs, bool reverse) const;

  int hidden_dim() const { return hidden_; }
  LstmState zero_state(ad::Graph& g) const;

 private:
  LstmState gates(ad::Var z, ad::Var c_prev) const;

  ad::Var W_;
  ad::Var b_;
  ad::Var W_input_;
  ad::Var W_hidden_;
  int input_;
  int hidden_;
};

}  // namespace structsum::model
