#include "structsum/training/optimizer.hpp"

#include <cmath>

namespace structsum::training {

void clip_gradients(ad::ParameterSet& params, double clip) {
  for (auto& p : params) p.grad = p.grad.cwiseMax(-clip).cwiseMin(clip);
}

void adam_update(ad::ParameterSet& params, const TrainConfig& config, AdamState& state) {
  for (const auto& p : params) {
    if (!ad::all_finite(p.grad)) throw NonFiniteGradient(p.name);
  }
  clip_gradients(params, config.clip);
  ++state.step;
  const double b1 = config.adam_beta1, b2 = config.adam_beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(state.step));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(state.step));
  for (auto& p : params) {
    auto& mo = state.moments[p.name];
    if (mo.m.size() == 0) {
      mo.m = ad::Tensor::Zero(p.value.rows(), p.value.cols());
      mo.v = ad::Tensor::Zero(p.value.rows(), p.value.cols());
    }
    mo.m = b1 * mo.m + (1.0 - b1) * p.grad;
    mo.v = b2 * mo.v + (1.0 - b2) * p.grad.cwiseProduct(p.grad);
    p.value.array() -= config.learning_rate * (mo.m.array() / c1) / ((mo.v.array() / c2).sqrt() + config.adam_eps);
  }
}

}  // namespace structsum::training
