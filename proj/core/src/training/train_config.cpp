#include "structsum/training/train_config.hpp"

#include <stdexcept>
#include <string>

namespace structsum::training {

void TrainConfig::validate() const {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument("train config: " + what);
  };
  require(learning_rate > 0, "learning_rate must be positive");
  require(coverage_lambda >= 0, "coverage_lambda must be non-negative");
  require(clip > 0, "clip must be positive");
  require(batch_size > 0, "batch_size must be positive");
  require(max_epochs > 0, "max_epochs must be positive");
  require(coverage_epochs >= 0, "coverage_epochs must be non-negative");
  require(patience > 0, "patience must be positive");
  require(adam_beta1 >= 0 && adam_beta1 < 1, "adam_beta1 must lie in [0, 1)");
  require(adam_beta2 >= 0 && adam_beta2 < 1, "adam_beta2 must lie in [0, 1)");
  require(adam_eps > 0, "adam_eps must be positive");
  require(target_train_loss >= 0, "target_train_loss must be non-negative");
}

}  // namespace structsum::training
