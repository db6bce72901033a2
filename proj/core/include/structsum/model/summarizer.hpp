#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "structsum/autodiff/ops.hpp"
#include "structsum/autodiff/parameter.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/model/config.hpp"
#include "structsum/model/lstm.hpp"

namespace structsum::model {

// Where each source position's probability mass lands in an extended
// (output vocabulary + source words) index space.
struct CopyMap {
  std::vector<int> source_to_extended;
  int width = 0;
};

// Source-side quantities produced once per instance.
struct EncoderOutput {
  ad::Var states;        // H^e, S x encoder_state_dim
  ad::Var initial;       // h_0^d, 1 x hidden
  ad::Var structure;     // s^e, S x 6*struct_dim (structural architectures)
  ad::Var primitive;     // g^e, S x primitive_dim (two-way architectures)
  ad::Var structural_input;  // g^e, or [g^e || g^e_parent] for TwoWayRelation
  ad::Var attention_keys;    // H^e W^e_enc + b^e, S x attention width
  ad::Var structural_keys;   // structural_input W^f_g + b^f
  // Edge incidence for the relation combination, both S x S with j < i:
  // heads(j, i) = 1 when j is the head of i, dependents(j, i) = 1 when i is
  // the head of j.
  ad::Tensor heads;
  ad::Tensor dependents;
  std::vector<double> mask;  // 1 for real positions, 0 for padding
  // Per-graph views of the decoder weights, built once by encode().
  std::optional<LstmCell> decoder;
  ad::Var attention_query;   // W^e rows applied to h_t
  ad::Var structural_query;  // W^f rows applied to h_t
  std::size_t length() const { return mask.size(); }
};

struct DecoderState {
  LstmState lstm;
  ad::Var alpha_history;      // sum of previous alpha rows (1 x S)
  ad::Var attention_history;  // sum of previous applied attention rows
  int step = 0;               // number of completed steps
};

struct StepOutput {
  ad::Var scores;     // e_t, 1 x S
  ad::Var alpha;      // semantic attention
  ad::Var beta;       // structural attention (two-way only)
  ad::Var gamma;      // relation salience (TwoWayRelation only)
  ad::Var delta;      // combined attention (two-way only)
  ad::Var attention;  // the row used for the context: alpha or delta
  ad::Var context;
  ad::Var p_vocab;    // 1 x v_out
  ad::Var p_gen;      // 1 x 1
  ad::Var p_final;    // 1 x CopyMap::width (or v_out when copying is off)
  // History entering this step (alpha~ and coverage); zero rows at t = 1.
  ad::Var alpha_history;
  ad::Var attention_history;
};

// delta = (alpha + eps * beta) / sum(alpha + eps * beta). Both rows are
// distributions, so the denominator is evaluated as 1 + eps.
ad::Var combine_two_way_word(ad::Var alpha, ad::Var beta, ad::Var epsilon);

struct RelationCombination {
  ad::Var gamma;
  ad::Var delta;
};

// gamma_i = sum_{j<i} alpha~_j * (beta_i if j heads i, beta_j if i heads j);
// delta = (alpha + eps * gamma) / (1 + eps * sum(gamma)).
RelationCombination combine_two_way_relation(ad::Var alpha, ad::Var alpha_history, ad::Var beta,
                                             const ad::Tensor& heads, const ad::Tensor& dependents,
                                             ad::Var epsilon);

// P(w) = p_gen * P_vocab(w) + (1 - p_gen) * sum of `attention` over the
// source positions that map to w, over copy.width entries.
ad::Var mix_copy_distribution(ad::Var p_vocab, ad::Var attention, ad::Var p_gen, const CopyMap& copy);

// Incidence matrices for combine_two_way_relation from 0-based parent
// indices (-1 for the root).
void edge_matrices(const std::vector<int>& parent_index, ad::Tensor& heads, ad::Tensor& dependents);

// One of the five architectures over a shared encoder-decoder skeleton.
class Summarizer {
 public:
  // Allocates and initializes parameters.
  Summarizer(ModelConfig config, std::uint64_t seed);
  // Adopts existing parameters; throws if the shape audit fails.
  Summarizer(ModelConfig config, ad::ParameterSet params);

  const ModelConfig& config() const { return config_; }
  ad::ParameterSet& params() { return params_; }
  const ad::ParameterSet& params() const { return params_; }

  // Pins epsilon to a fixed value instead of softplus(raw).
  void set_epsilon_override(std::optional<double> eps) { epsilon_override_ = eps; }
  // Disables the copy pathway: p_gen = 1 and P(w) = P_vocab(w).
  void set_copy_enabled(bool enabled) { copy_enabled_ = enabled; }
  bool copy_enabled() const { return copy_enabled_; }
  double epsilon_value() const;

  EncoderOutput encode(ad::Graph& g, const corpus::EncodedPair& pair);
  DecoderState initial_state(ad::Graph& g, const EncoderOutput& enc);

  // alpha_t = softmax_i v^T tanh(W^e [h_t || h_i] + b^e). Optionally returns
  // the pre-softmax scores.
  ad::Var attention_semantic(ad::Var h_t, const EncoderOutput& enc, ad::Var* scores = nullptr);
  // beta_t = softmax_i u^T tanh(W^f [g_i || h_t] + b^f). Two-way only.
  ad::Var attention_structural(ad::Var h_t, const EncoderOutput& enc);

  // Advances the decoder by one word. `prev_word` is the input-vocabulary
  // id of y_{t-1} (kBosId at the first step).
  StepOutput decode_step(ad::Graph& g, DecoderState& state, int prev_word, const EncoderOutput& enc,
                         const CopyMap& copy);

  // Extended map for a single instance: output vocabulary followed by the
  // instance's out-of-vocabulary source words in first-occurrence order.
  static CopyMap instance_copy_map(const corpus::EncodedPair& pair, const corpus::Vocabulary& vocab,
                                   std::vector<std::string>* extra_words = nullptr);

 private:
  ad::Var epsilon(ad::Graph& g);
  ad::Var word_rows(ad::Graph& g, const std::vector<int>& ids, bool target_side);

  ModelConfig config_;
  ad::ParameterSet params_;
  std::optional<double> epsilon_override_;
  bool copy_enabled_ = true;
};

}  // namespace structsum::model
