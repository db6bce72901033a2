#pragma once

#include <functional>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "structsum/autodiff/parameter.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/model/summarizer.hpp"
#include "structsum/training/train_config.hpp"

namespace structsum::training {

class TrainingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EpochRecord {
  int stage = 1;  // 1 plain, 2 with coverage
  int epoch = 0;  // 1-based, counted across both stages
  double train_loss = 0.0;   // token-weighted mean over the epoch
  double train_omega = 0.0;  // mean per batch
  double valid_loss = 0.0;
  double valid_omega = 0.0;
  std::string checkpoint;  // empty unless a checkpoint directory was given
};

struct EvalSummary {
  double loss = 0.0;   // token-weighted mean cross-entropy
  double omega = 0.0;  // mean per batch of lambda * sum_m coverage_m
  int tokens = 0;
};

struct TrainResult {
  std::vector<EpochRecord> history;
  int best_stage1 = -1;  // index into history
  int best = -1;         // selected checkpoint
  ad::ParameterSet stage1_params;  // best of the first stage
  bool early_stopped = false;
};

struct TrainHooks {
  std::ostream* log = nullptr;  // epoch, step, L, Omega, seconds per step
  std::string checkpoint_dir;   // write one checkpoint per epoch when set
  std::function<void(const EpochRecord&)> on_epoch;
  // Extra metadata stored in every checkpoint.
  std::vector<std::pair<std::string, std::string>> metadata;
};

EvalSummary evaluate_loss(model::Summarizer& model, const corpus::Vocabulary& vocab,
                          std::span<const corpus::EncodedPair> data, const TrainConfig& config);

// Stage 1 trains without the coverage term, validating once per epoch and
// stopping after `patience` epochs without a lower validation loss. Stage 2
// (coverage_epochs > 0) restarts from the best stage-1 parameters with the
// coverage term and keeps the epoch with the lowest validation L + Omega.
// On return the model holds the selected parameters. With an empty
// validation set the last epoch of each stage is taken.
TrainResult train(model::Summarizer& model, const corpus::Vocabulary& vocab,
                  std::span<const corpus::EncodedPair> train_set, std::span<const corpus::EncodedPair> valid_set,
                  const TrainConfig& config, const TrainHooks& hooks = {});

}  // namespace structsum::training
