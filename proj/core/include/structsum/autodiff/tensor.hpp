#pragma once

#include <Eigen/Dense>

#include <array>
#include <stdexcept>
#include <string>

namespace structsum::ad {

// Every value in the engine is a dense 2-D array. Vectors are 1 x n rows;
// per-position stacks (encoder states, attention projections) are S x n.
using Tensor = Eigen::MatrixXd;
using Index = Eigen::Index;

struct Shape {
  Index rows = 0;
  Index cols = 0;

  friend bool operator==(const Shape&, const Shape&) = default;
};

inline Shape shape_of(const Tensor& t) { return {t.rows(), t.cols()}; }

std::string to_string(const Shape& s);

// Raised when operand shapes do not satisfy an operation's algebraic rule.
class ShapeError : public std::invalid_argument {
 public:
  ShapeError(const std::string& op, const Shape& a, const Shape& b);
  ShapeError(const std::string& op, const Shape& a, const std::string& detail);
};

bool all_finite(const Tensor& t);

}  // namespace structsum::ad
