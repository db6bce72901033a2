#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structsum/decoding/step_model.hpp"

namespace structsum::decoding {

enum class DecodeMode { Greedy, Beam };

DecodeMode parse_decode_mode(std::string_view name);

struct DecodeConfig {
  DecodeMode mode = DecodeMode::Beam;
  int beam_width = 5;
  double eta = 13.5;
  int max_length = 50;  // emitted tokens, end token excluded

  void validate() const;
};

struct Hypothesis {
  std::vector<int> tokens;  // without the end token
  std::vector<std::string> words;
  double log_prob = 0.0;  // sum of log P only
  int bigrams = 0;        // B(words, source)
  SnapshotPtr snapshot;
  bool finished = false;

  // log_prob + eta * B / S, the sum of the per-step S(w) terms.
  double score(double eta, std::size_t source_length) const;
};

// Number of candidate bigrams found in the source bigram multiset, each
// source bigram credited at most as often as it occurs there.
int bigram_overlap(std::span<const std::string> candidate, std::span<const std::string> source);

// Argmax at every step (lowest index on ties) until the end token or
// max_length tokens.
Hypothesis greedy_decode(StepModel& model, int max_length);

// Each step ranks all one-token extensions of the live hypotheses by
// score, ties going to the lower (hypothesis, token) pair, and keeps the
// best K minus the number already finished. Extensions ending in the end
// token are frozen. Stops when K hypotheses are finished or after
// max_length tokens; live hypotheses then join the final pool. The result
// has the highest score, ties broken by fewer tokens and then
// lexicographic word order.
Hypothesis beam_search(StepModel& model, int beam_width, double eta, int max_length);

Hypothesis decode(StepModel& model, const DecodeConfig& config);

}  // namespace structsum::decoding
