#include "structsum/autodiff/parameter.hpp"

#include <stdexcept>

namespace structsum::ad {

ParameterSet::ParameterSet(const ParameterSet& other)
    : params_(other.params_), index_(other.index_) {}

ParameterSet& ParameterSet::operator=(const ParameterSet& other) {
  if (this != &other) {
    params_ = other.params_;
    index_ = other.index_;
  }
  return *this;
}

Parameter& ParameterSet::add(const std::string& name, Index rows, Index cols) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("parameter '" + name + "' must have positive extents");
  }
  if (contains(name)) throw std::invalid_argument("duplicate parameter '" + name + "'");
  index_[name] = params_.size();
  return params_.emplace_back(name, rows, cols);
}

Parameter& ParameterSet::at(const std::string& name) {
  auto* p = find(name);
  if (p == nullptr) throw std::out_of_range("no parameter named '" + name + "'");
  return *p;
}

const Parameter& ParameterSet::at(const std::string& name) const {
  const auto* p = find(name);
  if (p == nullptr) throw std::out_of_range("no parameter named '" + name + "'");
  return *p;
}

Parameter* ParameterSet::find(const std::string& name) {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &params_[it->second];
}

const Parameter* ParameterSet::find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? nullptr : &params_[it->second];
}

std::size_t ParameterSet::num_scalars() const {
  std::size_t n = 0;
  for (const auto& p : params_) n += static_cast<std::size_t>(p.value.size());
  return n;
}

void ParameterSet::zero_grad() {
  for (auto& p : params_) p.zero_grad();
}

void ParameterSet::copy_values_from(const ParameterSet& other) {
  for (auto& p : params_) {
    const Parameter& src = other.at(p.name);
    if (src.shape() != p.shape()) throw ShapeError("copy_values_from(" + p.name + ")", src.shape(), p.shape());
    p.value = src.value;
  }
}

}  // namespace structsum::ad
