#include "structsum/decoding/step_model.hpp"

#include <cmath>
#include <limits>

namespace structsum::decoding {

struct SummarizerStepModel::State : Snapshot {
  model::DecoderState after;  // state once this step's input was consumed
  std::vector<double> log_probs;
};

SummarizerStepModel::SummarizerStepModel(model::Summarizer& model, const corpus::Vocabulary& vocab,
                                         const corpus::EncodedPair& pair)
    : model_(model), vocab_(vocab), pair_(pair) {
  enc_ = model_.encode(graph_, pair_);
  if (model_.copy_enabled()) {
    copy_ = model::Summarizer::instance_copy_map(pair_, vocab_, &extra_words_);
  } else {
    copy_.width = vocab_.output_size();
  }
}

SnapshotPtr SummarizerStepModel::make_state(model::DecoderState dec, int prev_word) {
  auto step = model_.decode_step(graph_, dec, prev_word, enc_, copy_);
  auto s = std::make_shared<State>();
  s->after = std::move(dec);
  const auto& p = step.p_final.value();
  s->log_probs.resize(static_cast<std::size_t>(p.cols()));
  for (ad::Index k = 0; k < p.cols(); ++k) s->log_probs[static_cast<std::size_t>(k)] = std::log(p(0, k));
  s->log_probs[corpus::kPadId] = -std::numeric_limits<double>::infinity();
  s->log_probs[corpus::kBosId] = -std::numeric_limits<double>::infinity();
  return s;
}

SnapshotPtr SummarizerStepModel::start() { return make_state(model_.initial_state(graph_, enc_), corpus::kBosId); }

std::vector<double> SummarizerStepModel::log_probs(const Snapshot& s) {
  return static_cast<const State&>(s).log_probs;
}

SnapshotPtr SummarizerStepModel::advance(const SnapshotPtr& s, int token) {
  const auto& st = static_cast<const State&>(*s);
  int input_id = token < vocab_.output_size() ? token : vocab_.words().id(surface(token));
  return make_state(st.after, input_id);
}

std::string SummarizerStepModel::surface(int token) const {
  if (token < vocab_.output_size()) return vocab_.words().token(token);
  return extra_words_.at(static_cast<std::size_t>(token - vocab_.output_size()));
}

}  // namespace structsum::decoding
