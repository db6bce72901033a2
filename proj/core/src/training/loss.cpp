#include "structsum/training/loss.hpp"

#include <algorithm>
#include <stdexcept>

#include "structsum/autodiff/ops.hpp"

namespace structsum::training {

using namespace structsum::ad;

InstanceLoss instance_loss(Graph& g, model::Summarizer& model, const corpus::EncodedPair& pair,
                           const model::CopyMap& copy, const std::vector<int>& gold) {
  if (gold.size() != pair.target_steps()) throw std::invalid_argument("instance_loss: gold length mismatch");
  const auto S = static_cast<Index>(pair.source_length());
  const auto T = static_cast<Index>(gold.size());
  auto enc = model.encode(g, pair);
  auto state = model.initial_state(g, enc);

  InstanceLoss out;
  out.tokens = static_cast<int>(T);
  out.attention = Tensor::Zero(T, S);
  std::vector<Var> nll_terms, cov_terms;
  int prev = corpus::kBosId;
  for (Index t = 0; t < T; ++t) {
    auto step = model.decode_step(g, state, prev, enc, copy);
    const int y = gold[static_cast<std::size_t>(t)];
    if (y < 0 || y >= step.p_final.cols()) throw std::out_of_range("instance_loss: gold index outside distribution");
    nll_terms.push_back(affine(log(pick(step.p_final, 0, y)), -1.0, 0.0));
    cov_terms.push_back(sum(min_elementwise(step.attention_history, step.attention)));
    out.attention.row(t) = step.attention.value();
    if (static_cast<std::size_t>(t) < pair.tgt_input_ids.size()) prev = pair.tgt_input_ids[static_cast<std::size_t>(t)];
  }
  out.nll = sum(concat_cols(std::span<const Var>(nll_terms)));
  out.coverage = affine(sum(concat_cols(std::span<const Var>(cov_terms))), 1.0 / static_cast<double>(T * S), 0.0);
  return out;
}

LossResult step_loss(Graph& g, model::Summarizer& model, const corpus::Vocabulary& vocab,
                     std::span<const corpus::EncodedPair> corpus, const Batch& batch, double coverage_lambda,
                     bool coverage_active) {
  if (batch.members.empty()) throw std::invalid_argument("step_loss: empty batch");
  std::vector<const corpus::EncodedPair*> members;
  for (auto k : batch.members) members.push_back(&corpus[k]);
  BatchVocabulary bv(vocab, members);
  const bool copy = model.copy_enabled();

  LossResult out;
  std::vector<Var> nll, cov;
  for (const auto* pair : members) {
    model::CopyMap map = copy ? bv.copy_map(*pair) : model::CopyMap{};
    if (!copy) map.width = vocab.output_size();
    auto inst = instance_loss(g, model, *pair, map, bv.gold_ids(*pair, copy));
    nll.push_back(inst.nll);
    cov.push_back(inst.coverage);
    out.tokens += inst.tokens;
    out.attention.push_back(std::move(inst.attention));
  }
  out.loss = affine(sum(concat_cols(std::span<const Var>(nll))), 1.0 / out.tokens, 0.0);
  out.omega = affine(sum(concat_cols(std::span<const Var>(cov))), coverage_lambda, 0.0);
  out.objective = coverage_active ? add(out.loss, out.omega) : out.loss;
  return out;
}

double coverage_sum(const Tensor& attention) {
  Tensor history = Tensor::Zero(1, attention.cols());
  double total = 0.0;
  for (Index t = 0; t < attention.rows(); ++t) {
    total += history.cwiseMin(attention.row(t)).sum();
    history += attention.row(t);
  }
  return total;
}

double coverage_penalty(const Tensor& attention) {
  if (attention.size() == 0) return 0.0;
  return coverage_sum(attention) / static_cast<double>(attention.rows() * attention.cols());
}

}  // namespace structsum::training
