#include "structsum/autodiff/ops.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace structsum::ad {
namespace {

Graph& same_graph(const char* op, Var a, Var b) {
  if (!a.valid() || !b.valid()) throw std::invalid_argument(std::string(op) + ": invalid operand");
  if (&a.graph() != &b.graph()) throw std::invalid_argument(std::string(op) + ": operands from different graphs");
  return a.graph();
}

Graph& graph_of(const char* op, Var a) {
  if (!a.valid()) throw std::invalid_argument(std::string(op) + ": invalid operand");
  return a.graph();
}

void require_same_shape(const char* op, Var a, Var b) {
  if (a.shape() != b.shape()) throw ShapeError(op, a.shape(), b.shape());
}

void require_scalar(const char* op, Var s) {
  if (s.shape() != Shape{1, 1}) throw ShapeError(op, s.shape(), "is not 1 x 1");
}

}  // namespace

Var matmul(Var a, Var b) {
  Graph& g = same_graph("matmul", a, b);
  if (a.cols() != b.rows()) throw ShapeError("matmul", a.shape(), b.shape());
  int ia = a.id(), ib = b.id();
  return g.emit(a.value() * b.value(), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    if (g.requires_grad(ia)) g.accumulate(ia, dy * g.value(ib).transpose());
    if (g.requires_grad(ib)) g.accumulate(ib, g.value(ia).transpose() * dy);
  });
}

Var add(Var a, Var b) {
  Graph& g = same_graph("add", a, b);
  int ia = a.id(), ib = b.id();
  if (a.shape() == b.shape()) {
    return g.emit(a.value() + b.value(), {ia, ib}, [ia, ib](Graph& g, int self) {
      g.accumulate(ia, g.grad(self));
      g.accumulate(ib, g.grad(self));
    });
  }
  if (b.rows() == 1 && b.cols() == a.cols()) {
    Tensor out = a.value().rowwise() + b.value().row(0);
    return g.emit(std::move(out), {ia, ib}, [ia, ib](Graph& g, int self) {
      g.accumulate(ia, g.grad(self));
      if (g.requires_grad(ib)) g.accumulate(ib, g.grad(self).colwise().sum());
    });
  }
  throw ShapeError("add", a.shape(), b.shape());
}

Var sub(Var a, Var b) {
  Graph& g = same_graph("sub", a, b);
  require_same_shape("sub", a, b);
  int ia = a.id(), ib = b.id();
  return g.emit(a.value() - b.value(), {ia, ib}, [ia, ib](Graph& g, int self) {
    g.accumulate(ia, g.grad(self));
    if (g.requires_grad(ib)) g.accumulate(ib, -g.grad(self));
  });
}

Var affine(Var a, double scale, double shift) {
  Graph& g = graph_of("affine", a);
  int ia = a.id();
  Tensor out = (a.value() * scale).array() + shift;
  return g.emit(std::move(out), {ia}, [ia, scale](Graph& g, int self) {
    g.accumulate(ia, g.grad(self) * scale);
  });
}

Var scale_by(Var a, Var s) {
  Graph& g = same_graph("scale_by", a, s);
  require_scalar("scale_by", s);
  int ia = a.id(), is = s.id();
  return g.emit(a.value() * s.scalar(), {ia, is}, [ia, is](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    if (g.requires_grad(ia)) g.accumulate(ia, dy * g.value(is)(0, 0));
    if (g.requires_grad(is)) {
      g.accumulate(is, Tensor::Constant(1, 1, dy.cwiseProduct(g.value(ia)).sum()));
    }
  });
}

Var mul(Var a, Var b) {
  Graph& g = same_graph("elementwise_mul", a, b);
  require_same_shape("elementwise_mul", a, b);
  int ia = a.id(), ib = b.id();
  return g.emit(a.value().cwiseProduct(b.value()), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    if (g.requires_grad(ia)) g.accumulate(ia, dy.cwiseProduct(g.value(ib)));
    if (g.requires_grad(ib)) g.accumulate(ib, dy.cwiseProduct(g.value(ia)));
  });
}

// Subgradient: the smaller argument receives the gradient; exact ties go to
// the first argument.
Var min_elementwise(Var a, Var b) {
  Graph& g = same_graph("min_elementwise", a, b);
  require_same_shape("min_elementwise", a, b);
  int ia = a.id(), ib = b.id();
  return g.emit(a.value().cwiseMin(b.value()), {ia, ib}, [ia, ib](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    const Tensor& va = g.value(ia);
    const Tensor& vb = g.value(ib);
    Tensor da = Tensor::Zero(va.rows(), va.cols());
    Tensor db = Tensor::Zero(va.rows(), va.cols());
    for (Index i = 0; i < va.size(); ++i) {
      if (va(i) <= vb(i)) {
        da(i) = dy(i);
      } else {
        db(i) = dy(i);
      }
    }
    g.accumulate(ia, da);
    g.accumulate(ib, db);
  });
}

Var tanh(Var a) {
  Graph& g = graph_of("tanh", a);
  int ia = a.id();
  Tensor out = a.value().array().tanh();
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) {
    const Tensor& y = g.value(self);
    g.accumulate(ia, g.grad(self).array() * (1.0 - y.array().square()));
  });
}

Var sigmoid(Var a) {
  Graph& g = graph_of("sigmoid", a);
  int ia = a.id();
  Tensor out = a.value().unaryExpr([](double x) {
    if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
    double e = std::exp(x);
    return e / (1.0 + e);
  });
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) {
    const Tensor& y = g.value(self);
    g.accumulate(ia, g.grad(self).array() * y.array() * (1.0 - y.array()));
  });
}

Var softplus(Var a) {
  Graph& g = graph_of("softplus", a);
  int ia = a.id();
  Tensor out = a.value().unaryExpr([](double x) {
    return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
  });
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) {
    Tensor s = g.value(ia).unaryExpr([](double x) {
      return x >= 0 ? 1.0 / (1.0 + std::exp(-x)) : std::exp(x) / (1.0 + std::exp(x));
    });
    g.accumulate(ia, g.grad(self).cwiseProduct(s));
  });
}

Var log(Var a) {
  Graph& g = graph_of("log", a);
  if ((a.value().array() <= 0.0).any()) {
    throw std::domain_error("log: argument has non-positive entries");
  }
  int ia = a.id();
  Tensor out = a.value().array().log();
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) {
    g.accumulate(ia, g.grad(self).cwiseQuotient(g.value(ia)));
  });
}

Var reciprocal(Var a) {
  Graph& g = graph_of("reciprocal", a);
  if ((a.value().array() == 0.0).any()) throw std::domain_error("reciprocal: division by zero");
  int ia = a.id();
  Tensor out = a.value().cwiseInverse();
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) {
    const Tensor& y = g.value(self);
    g.accumulate(ia, -g.grad(self).cwiseProduct(y.cwiseProduct(y)));
  });
}

namespace {

void softmax_backward(Graph& g, int self, int input) {
  const Tensor& y = g.value(self);
  const Tensor& dy = g.grad(self);
  // dx = y * (dy - <dy, y>) per row
  Eigen::VectorXd dots = dy.cwiseProduct(y).rowwise().sum();
  Tensor dx = y.cwiseProduct(dy.colwise() - dots);
  g.accumulate(input, dx);
}

}  // namespace

Var softmax(Var a) {
  Graph& g = graph_of("softmax", a);
  const Tensor& x = a.value();
  Tensor out(x.rows(), x.cols());
  for (Index r = 0; r < x.rows(); ++r) {
    double mx = x.row(r).maxCoeff();
    out.row(r) = (x.row(r).array() - mx).exp();
    out.row(r) /= out.row(r).sum();
  }
  int ia = a.id();
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) { softmax_backward(g, self, ia); });
}

Var masked_softmax(Var a, std::span<const double> mask) {
  Graph& g = graph_of("masked_softmax", a);
  const Tensor& x = a.value();
  if (static_cast<Index>(mask.size()) != x.cols()) {
    throw ShapeError("masked_softmax", a.shape(), "does not match mask of length " + std::to_string(mask.size()));
  }
  Tensor out = Tensor::Zero(x.rows(), x.cols());
  for (Index r = 0; r < x.rows(); ++r) {
    double mx = -std::numeric_limits<double>::infinity();
    for (Index c = 0; c < x.cols(); ++c) {
      if (mask[static_cast<std::size_t>(c)] != 0.0) mx = std::max(mx, x(r, c));
    }
    if (!std::isfinite(mx)) throw std::invalid_argument("masked_softmax: row has no unmasked entries");
    double z = 0.0;
    for (Index c = 0; c < x.cols(); ++c) {
      if (mask[static_cast<std::size_t>(c)] != 0.0) {
        out(r, c) = std::exp(x(r, c) - mx);
        z += out(r, c);
      }
    }
    out.row(r) /= z;
  }
  int ia = a.id();
  // Masked outputs are exactly 0, so the ordinary softmax Jacobian already
  // sends them zero gradient.
  return g.emit(std::move(out), {ia}, [ia](Graph& g, int self) { softmax_backward(g, self, ia); });
}

Var sum(Var a) {
  Graph& g = graph_of("sum", a);
  int ia = a.id();
  Index r = a.rows(), c = a.cols();
  return g.emit(Tensor::Constant(1, 1, a.value().sum()), {ia}, [ia, r, c](Graph& g, int self) {
    g.accumulate(ia, Tensor::Constant(r, c, g.grad(self)(0, 0)));
  });
}

Var mean(Var a) {
  Graph& g = graph_of("mean", a);
  int ia = a.id();
  Index r = a.rows(), c = a.cols();
  double n = static_cast<double>(a.value().size());
  return g.emit(Tensor::Constant(1, 1, a.value().mean()), {ia}, [ia, r, c, n](Graph& g, int self) {
    g.accumulate(ia, Tensor::Constant(r, c, g.grad(self)(0, 0) / n));
  });
}

Var sum_rows(Var a) {
  Graph& g = graph_of("sum_rows", a);
  int ia = a.id();
  Index r = a.rows();
  Tensor out = a.value().colwise().sum();
  return g.emit(std::move(out), {ia}, [ia, r](Graph& g, int self) {
    g.accumulate(ia, g.grad(self).replicate(r, 1));
  });
}

Var mean_rows(Var a) {
  Graph& g = graph_of("mean_rows", a);
  int ia = a.id();
  Index r = a.rows();
  Tensor out = a.value().colwise().mean();
  return g.emit(std::move(out), {ia}, [ia, r](Graph& g, int self) {
    g.accumulate(ia, g.grad(self).replicate(r, 1) / static_cast<double>(r));
  });
}

Var concat_cols(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat: no operands");
  Graph& g = graph_of("concat", parts[0]);
  Index rows = parts[0].rows(), cols = 0;
  std::vector<int> ids;
  for (const Var& p : parts) {
    same_graph("concat", parts[0], p);
    if (p.rows() != rows) throw ShapeError("concat", parts[0].shape(), p.shape());
    cols += p.cols();
    ids.push_back(p.id());
  }
  Tensor out(rows, cols);
  std::vector<Index> offsets;
  Index off = 0;
  for (const Var& p : parts) {
    out.middleCols(off, p.cols()) = p.value();
    offsets.push_back(off);
    off += p.cols();
  }
  return g.emit(std::move(out), ids, [ids, offsets](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!g.requires_grad(ids[k])) continue;
      g.accumulate(ids[k], dy.middleCols(offsets[k], g.value(ids[k]).cols()));
    }
  });
}

Var concat_rows(std::span<const Var> parts) {
  if (parts.empty()) throw std::invalid_argument("concat_rows: no operands");
  Graph& g = graph_of("concat_rows", parts[0]);
  Index cols = parts[0].cols(), rows = 0;
  std::vector<int> ids;
  for (const Var& p : parts) {
    same_graph("concat_rows", parts[0], p);
    if (p.cols() != cols) throw ShapeError("concat_rows", parts[0].shape(), p.shape());
    rows += p.rows();
    ids.push_back(p.id());
  }
  Tensor out(rows, cols);
  std::vector<Index> offsets;
  Index off = 0;
  for (const Var& p : parts) {
    out.middleRows(off, p.rows()) = p.value();
    offsets.push_back(off);
    off += p.rows();
  }
  return g.emit(std::move(out), ids, [ids, offsets](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    for (std::size_t k = 0; k < ids.size(); ++k) {
      if (!g.requires_grad(ids[k])) continue;
      g.accumulate(ids[k], dy.middleRows(offsets[k], g.value(ids[k]).rows()));
    }
  });
}

Var concat_cols(std::initializer_list<Var> parts) {
  return concat_cols(std::span<const Var>(parts.begin(), parts.size()));
}

Var concat_rows(std::initializer_list<Var> parts) {
  return concat_rows(std::span<const Var>(parts.begin(), parts.size()));
}

Var slice_rows(Var a, Index begin, Index count) {
  Graph& g = graph_of("slice", a);
  if (begin < 0 || count <= 0 || begin + count > a.rows()) {
    throw ShapeError("slice", a.shape(), "cannot supply rows [" + std::to_string(begin) + ", " +
                                             std::to_string(begin + count) + ")");
  }
  int ia = a.id();
  return g.emit(a.value().middleRows(begin, count), {ia}, [ia, begin](Graph& g, int self) {
    g.accumulate_block(ia, begin, 0, g.grad(self));
  });
}

Var slice_cols(Var a, Index begin, Index count) {
  Graph& g = graph_of("slice", a);
  if (begin < 0 || count <= 0 || begin + count > a.cols()) {
    throw ShapeError("slice", a.shape(), "cannot supply cols [" + std::to_string(begin) + ", " +
                                             std::to_string(begin + count) + ")");
  }
  int ia = a.id();
  return g.emit(a.value().middleCols(begin, count), {ia}, [ia, begin](Graph& g, int self) {
    g.accumulate_block(ia, 0, begin, g.grad(self));
  });
}

Var pick(Var a, Index row, Index col) {
  Graph& g = graph_of("slice", a);
  if (row < 0 || col < 0 || row >= a.rows() || col >= a.cols()) {
    throw ShapeError("slice", a.shape(), "has no element (" + std::to_string(row) + ", " +
                                             std::to_string(col) + ")");
  }
  int ia = a.id();
  return g.emit(Tensor::Constant(1, 1, a.value()(row, col)), {ia}, [ia, row, col](Graph& g, int self) {
    g.accumulate_block(ia, row, col, g.grad(self));
  });
}

Var transpose(Var a) {
  Graph& g = graph_of("transpose", a);
  int ia = a.id();
  return g.emit(a.value().transpose(), {ia}, [ia](Graph& g, int self) {
    g.accumulate(ia, g.grad(self).transpose());
  });
}

Var embedding_lookup(Graph& g, Parameter& table, std::span<const int> ids) {
  if (ids.empty()) throw std::invalid_argument("embedding_lookup: empty id list");
  const Tensor& t = table.value;
  Tensor out(static_cast<Index>(ids.size()), t.cols());
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] < 0 || ids[k] >= t.rows()) {
      throw ShapeError("embedding_lookup(" + table.name + ")", table.shape(),
                       "has no row " + std::to_string(ids[k]));
    }
    out.row(static_cast<Index>(k)) = t.row(ids[k]);
  }
  Parameter* p = &table;
  std::vector<int> rows(ids.begin(), ids.end());
  // Scatters straight into the table's gradient so the table is never
  // copied into the graph.
  return g.emit(
      std::move(out), {},
      [p, rows](Graph& g, int self) {
        const Tensor& dy = g.grad(self);
        for (std::size_t k = 0; k < rows.size(); ++k) p->grad.row(rows[k]) += dy.row(static_cast<Index>(k));
      },
      true);
}

Var scatter_cols(Var w, std::span<const int> index, Index width) {
  Graph& g = graph_of("scatter_cols", w);
  if (w.rows() != 1 || w.cols() != static_cast<Index>(index.size())) {
    throw ShapeError("scatter_cols", w.shape(), "does not match index of length " + std::to_string(index.size()));
  }
  Tensor out = Tensor::Zero(1, width);
  for (std::size_t i = 0; i < index.size(); ++i) {
    if (index[i] < 0 || index[i] >= width) {
      throw ShapeError("scatter_cols", w.shape(), "index " + std::to_string(index[i]) + " outside width " + std::to_string(width));
    }
    out(0, index[i]) += w.value()(0, static_cast<Index>(i));
  }
  int iw = w.id();
  std::vector<int> idx(index.begin(), index.end());
  return g.emit(std::move(out), {iw}, [iw, idx](Graph& g, int self) {
    const Tensor& dy = g.grad(self);
    Tensor dw(1, static_cast<Index>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i) dw(0, static_cast<Index>(i)) = dy(0, idx[i]);
    g.accumulate(iw, dw);
  });
}

Var pad_cols(Var a, Index width) {
  Graph& g = graph_of("pad_cols", a);
  if (a.rows() != 1 || width < a.cols()) throw ShapeError("pad_cols", a.shape(), "cannot pad to width " + std::to_string(width));
  Tensor out = Tensor::Zero(1, width);
  out.leftCols(a.cols()) = a.value();
  int ia = a.id();
  Index n = a.cols();
  return g.emit(std::move(out), {ia}, [ia, n](Graph& g, int self) {
    g.accumulate(ia, g.grad(self).leftCols(n));
  });
}

}  // namespace structsum::ad
