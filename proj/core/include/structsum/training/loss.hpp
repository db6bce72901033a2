#pragma once

#include <span>
#include <vector>

#include "structsum/autodiff/graph.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/model/summarizer.hpp"
#include "structsum/training/batching.hpp"

namespace structsum::training {

struct InstanceLoss {
  ad::Var nll;       // sum over steps of -log P(gold)
  ad::Var coverage;  // (1 / (T S)) sum_t sum_i min(history_{t,i}, a_{t,i})
  int tokens = 0;
  ad::Tensor attention;  // T x S rows actually applied (alpha or delta)
};

// Teacher-forced pass over one instance.
InstanceLoss instance_loss(ad::Graph& g, model::Summarizer& model, const corpus::EncodedPair& pair,
                           const model::CopyMap& copy, const std::vector<int>& gold);

struct LossResult {
  ad::Var loss;       // L, mean token cross-entropy
  ad::Var omega;      // lambda * sum_m coverage_m
  ad::Var objective;  // L, plus omega when coverage is active
  int tokens = 0;
  std::vector<ad::Tensor> attention;  // per member, in batch order
};

LossResult step_loss(ad::Graph& g, model::Summarizer& model, const corpus::Vocabulary& vocab,
                     std::span<const corpus::EncodedPair> corpus, const Batch& batch, double coverage_lambda,
                     bool coverage_active);

// sum_t sum_i min(history_{t,i}, a_{t,i}) for explicit attention rows (T x S).
double coverage_sum(const ad::Tensor& attention);
// coverage_sum / (T S), the per-instance term of Omega.
double coverage_penalty(const ad::Tensor& attention);

}  // namespace structsum::training
