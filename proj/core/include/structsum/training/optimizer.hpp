#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "structsum/autodiff/parameter.hpp"
#include "structsum/training/train_config.hpp"

namespace structsum::training {

class NonFiniteGradient : public std::runtime_error {
 public:
  explicit NonFiniteGradient(const std::string& param)
      : std::runtime_error("non-finite gradient in parameter '" + param + "'"), param_(param) {}
  const std::string& param() const { return param_; }

 private:
  std::string param_;
};

struct AdamState {
  struct Moments {
    ad::Tensor m;
    ad::Tensor v;
  };
  std::map<std::string, Moments> moments;
  long step = 0;
};

// Elementwise clip of every gradient to [-clip, clip].
void clip_gradients(ad::ParameterSet& params, double clip);

// Checks all gradients first and throws NonFiniteGradient before touching
// any value; then clips and applies one Adam step.
void adam_update(ad::ParameterSet& params, const TrainConfig& config, AdamState& state);

}  // namespace structsum::training
