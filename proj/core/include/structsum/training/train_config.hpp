#pragma once

#include <cstdint>

namespace structsum::training {

struct TrainConfig {
  double learning_rate = 1e-4;
  double coverage_lambda = 1.0;
  double clip = 5.0;  // gradients are clipped elementwise to [-clip, clip]
  int batch_size = 64;
  int max_epochs = 20;
  // Extra epochs trained with the coverage term; 0 skips the second stage.
  int coverage_epochs = 0;
  int patience = 2;  // validations without improvement before stopping
  double adam_beta1 = 0.9;
  double adam_beta2 = 0.999;
  double adam_eps = 1e-8;
  std::uint64_t seed = 1;
  // Stop the first stage once the epoch's mean training loss drops below
  // this value (0 disables).
  double target_train_loss = 0.0;

  // Throws std::invalid_argument on a non-positive rate, clip, batch size,
  // epoch count, or moment coefficient outside [0, 1).
  void validate() const;
};

}  // namespace structsum::training
