#include "structsum/autodiff/tensor.hpp"

namespace structsum::ad {

std::string to_string(const Shape& s) {
  return "[" + std::to_string(s.rows) + " x " + std::to_string(s.cols) + "]";
}

ShapeError::ShapeError(const std::string& op, const Shape& a, const Shape& b)
    : std::invalid_argument(op + ": incompatible shapes " + to_string(a) + " and " +
                            to_string(b)) {}

ShapeError::ShapeError(const std::string& op, const Shape& a, const std::string& detail)
    : std::invalid_argument(op + ": shape " + to_string(a) + " " + detail) {}

bool all_finite(const Tensor& t) { return t.allFinite(); }

}  // namespace structsum::ad
