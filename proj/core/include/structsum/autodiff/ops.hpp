#pragma once

#include <span>
#include <vector>

#include "structsum/autodiff/graph.hpp"

// Differentiable primitives. Each op validates shapes, computes its value
// eagerly and registers a backward rule on the operands' graph.
namespace structsum::ad {

Var matmul(Var a, Var b);
// a + b, where b has a's shape or is a 1 x cols row broadcast over a's rows.
Var add(Var a, Var b);
Var sub(Var a, Var b);
// scale * a + shift, with constant scale and shift.
Var affine(Var a, double scale, double shift);
// a * s for a 1 x 1 node s.
Var scale_by(Var a, Var s);
Var mul(Var a, Var b);
Var min_elementwise(Var a, Var b);

Var tanh(Var a);
Var sigmoid(Var a);
Var softplus(Var a);
Var log(Var a);
Var reciprocal(Var a);

// Row-wise softmax with max subtraction.
Var softmax(Var a);
// Row-wise softmax over entries whose mask is nonzero; masked entries are 0.
// `mask` has a.cols() entries.
Var masked_softmax(Var a, std::span<const double> mask);

Var sum(Var a);
Var mean(Var a);
// Column-wise reductions over rows: S x n -> 1 x n.
Var sum_rows(Var a);
Var mean_rows(Var a);

Var concat_cols(std::span<const Var> parts);
Var concat_rows(std::span<const Var> parts);
Var concat_cols(std::initializer_list<Var> parts);
Var concat_rows(std::initializer_list<Var> parts);
Var slice_rows(Var a, Index begin, Index count);
Var slice_cols(Var a, Index begin, Index count);
Var pick(Var a, Index row, Index col);
Var transpose(Var a);

// Rows of `table` selected by ids; gradient scatters back into the table.
Var embedding_lookup(Graph& g, Parameter& table, std::span<const int> ids);

// out(0, index[i]) += w(0, i); out is 1 x width.
Var scatter_cols(Var w, std::span<const int> index, Index width);
// Zero-extends a 1 x n row to 1 x width.
Var pad_cols(Var a, Index width);

}  // namespace structsum::ad
