#pragma once

#include <memory>
#include <string>
#include <vector>

#include "structsum/autodiff/graph.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/corpus/vocabulary.hpp"
#include "structsum/model/summarizer.hpp"

namespace structsum::decoding {

// Opaque decoder state owned by a StepModel.
struct Snapshot {
  virtual ~Snapshot() = default;
};
using SnapshotPtr = std::shared_ptr<const Snapshot>;

// What the search procedures need from a model: next-token log
// probabilities over a fixed token space and a way to feed a token back.
class StepModel {
 public:
  virtual ~StepModel() = default;
  virtual SnapshotPtr start() = 0;
  virtual std::vector<double> log_probs(const Snapshot& s) = 0;
  virtual SnapshotPtr advance(const SnapshotPtr& s, int token) = 0;
  virtual std::string surface(int token) const = 0;
  virtual int eos() const = 0;
  // Source tokens for the bigram reward.
  virtual const std::vector<std::string>& source() const = 0;
};

// Adapts a Summarizer to one instance. Tokens are indices in the
// instance's copy map space (output vocabulary, then source-only words).
// <pad> and <s> are never proposed.
class SummarizerStepModel : public StepModel {
 public:
  SummarizerStepModel(model::Summarizer& model, const corpus::Vocabulary& vocab, const corpus::EncodedPair& pair);

  SnapshotPtr start() override;
  std::vector<double> log_probs(const Snapshot& s) override;
  SnapshotPtr advance(const SnapshotPtr& s, int token) override;
  std::string surface(int token) const override;
  int eos() const override { return corpus::kEosId; }
  const std::vector<std::string>& source() const override { return pair_.src_surface; }

 private:
  struct State;
  SnapshotPtr make_state(model::DecoderState dec, int prev_word);

  model::Summarizer& model_;
  const corpus::Vocabulary& vocab_;
  const corpus::EncodedPair& pair_;
  ad::Graph graph_;
  model::EncoderOutput enc_;
  model::CopyMap copy_;
  std::vector<std::string> extra_words_;
};

}  // namespace structsum::decoding
