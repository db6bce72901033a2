#pragma once

#include <deque>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "structsum/autodiff/tensor.hpp"

namespace structsum::ad {

// A trainable leaf. Gradients from every graph that reads the parameter
// accumulate into `grad` until zero_grad() is called.
struct Parameter {
  std::string name;
  Tensor value;
  Tensor grad;

  Parameter(std::string n, Index rows, Index cols)
      : name(std::move(n)),
        value(Tensor::Zero(rows, cols)),
        grad(Tensor::Zero(rows, cols)) {}

  Shape shape() const { return shape_of(value); }
  void zero_grad() { grad.setZero(); }
};

// Named parameters with stable addresses, iterated in insertion order.
class ParameterSet {
 public:
  ParameterSet() = default;
  ParameterSet(const ParameterSet& other);
  ParameterSet& operator=(const ParameterSet& other);
  ParameterSet(ParameterSet&&) noexcept = default;
  ParameterSet& operator=(ParameterSet&&) noexcept = default;

  Parameter& add(const std::string& name, Index rows, Index cols);

  Parameter& at(const std::string& name);
  const Parameter& at(const std::string& name) const;
  Parameter* find(const std::string& name);
  const Parameter* find(const std::string& name) const;
  bool contains(const std::string& name) const { return index_.count(name) != 0; }

  std::size_t size() const { return params_.size(); }
  std::size_t num_scalars() const;

  void zero_grad();

  auto begin() { return params_.begin(); }
  auto end() { return params_.end(); }
  auto begin() const { return params_.begin(); }
  auto end() const { return params_.end(); }

  // Copies only values; names and shapes must already agree.
  void copy_values_from(const ParameterSet& other);

 private:
  std::deque<Parameter> params_;
  std::map<std::string, std::size_t> index_;
};

}  // namespace structsum::ad
