#include "structsum/model/summarizer.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_map>

#include "structsum/model/params.hpp"

namespace structsum::model {

using namespace structsum::ad;

Var combine_two_way_word(Var alpha, Var beta, Var epsilon) {
  if (alpha.shape() != beta.shape()) throw ShapeError("combine_two_way_word", alpha.shape(), beta.shape());
  const double eps = epsilon.scalar();
  if (!(1.0 + eps > 0.0)) throw std::domain_error("combine_two_way_word: non-positive normalizer");
  Var numerator = add(alpha, scale_by(beta, epsilon));
  return scale_by(numerator, reciprocal(affine(epsilon, 1.0, 1.0)));
}

RelationCombination combine_two_way_relation(Var alpha, Var alpha_history, Var beta, const Tensor& heads,
                                             const Tensor& dependents, Var epsilon) {
  if (alpha_history.shape() != beta.shape() || alpha.shape() != beta.shape()) {
    throw ShapeError("combine_two_way_relation", alpha_history.shape(), beta.shape());
  }
  const Index n = beta.cols();
  if (heads.rows() != n || heads.cols() != n || dependents.rows() != n || dependents.cols() != n) {
    throw ShapeError("combine_two_way_relation", shape_of(heads), "is not a square edge matrix of size " + std::to_string(n));
  }
  Graph& g = beta.graph();
  Var heads_c = g.constant(heads);
  Var deps_c = g.constant(dependents);
  // edge j -> i: alpha~_j * beta_i ; edge j <- i: alpha~_j * beta_j
  Var incoming = mul(beta, matmul(alpha_history, heads_c));
  Var outgoing = matmul(mul(alpha_history, beta), deps_c);
  Var gamma = add(incoming, outgoing);

  Var mass = affine(scale_by(sum(gamma), epsilon), 1.0, 1.0);
  if (!(mass.scalar() > 0.0)) throw std::domain_error("combine_two_way_relation: non-positive normalizer");
  Var delta = scale_by(add(alpha, scale_by(gamma, epsilon)), reciprocal(mass));
  return {gamma, delta};
}

Var mix_copy_distribution(Var p_vocab, Var attention, Var p_gen, const CopyMap& copy) {
  if (static_cast<Index>(copy.source_to_extended.size()) != attention.cols()) {
    throw std::invalid_argument("copy map covers " + std::to_string(copy.source_to_extended.size()) +
                                " source positions, attention has " + std::to_string(attention.cols()));
  }
  Var generated = scale_by(pad_cols(p_vocab, copy.width), p_gen);
  Var copied = scale_by(scatter_cols(attention, copy.source_to_extended, copy.width), affine(p_gen, -1.0, 1.0));
  return add(generated, copied);
}

void edge_matrices(const std::vector<int>& parent_index, Tensor& heads, Tensor& dependents) {
  const Index n = static_cast<Index>(parent_index.size());
  heads = Tensor::Zero(n, n);
  dependents = Tensor::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    int p = parent_index[static_cast<std::size_t>(i)];
    if (p < 0) continue;
    if (p < i) heads(p, i) = 1.0;       // w_p -> w_i with p before i
    if (p > i) dependents(i, p) = 1.0;  // w_i <- w_p with i before p
  }
}

Summarizer::Summarizer(ModelConfig config, std::uint64_t seed)
    : config_(config), params_(allocate_parameters(config)) {
  initialize_parameters(params_, config_, seed);
}

Summarizer::Summarizer(ModelConfig config, ParameterSet params) : config_(config), params_(std::move(params)) {
  auto problems = shape_audit(config_, params_);
  if (!problems.empty()) throw std::invalid_argument("parameter shape audit failed: " + problems.front());
}

double Summarizer::epsilon_value() const {
  if (epsilon_override_) return *epsilon_override_;
  const Parameter* raw = params_.find("epsilon");
  if (raw == nullptr) return 0.0;
  double x = raw->value(0, 0);
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

Var Summarizer::epsilon(Graph& g) {
  if (epsilon_override_) return g.scalar(*epsilon_override_);
  return softplus(g.param(params_.at("epsilon")));
}

Var Summarizer::word_rows(Graph& g, const std::vector<int>& ids, bool target_side) {
  Parameter& table = (target_side && !config_.share_embeddings) ? params_.at("tgt_embedding") : params_.at("embedding");
  return embedding_lookup(g, table, ids);
}

EncoderOutput Summarizer::encode(Graph& g, const corpus::EncodedPair& pair) {
  const auto arch = config_.architecture;
  const int h = config_.hidden_dim;
  const Index S = static_cast<Index>(pair.src_ids.size());
  if (S == 0) throw std::invalid_argument("encode: empty source");
  for (int id : pair.src_ids) {
    if (id < 0 || id >= config_.v_in) {
      throw std::out_of_range("encode: source id " + std::to_string(id) + " outside embedding table of " +
                              std::to_string(config_.v_in) + " rows");
    }
  }

  EncoderOutput out;
  out.mask.assign(static_cast<std::size_t>(S), 1.0);
  Var words = word_rows(g, pair.src_ids, false);

  if (uses_structure(arch)) {
    std::vector<Var> parts;
    for (auto cat : corpus::kLabelCategories) {
      const auto& ids = pair.src_struct_ids[static_cast<std::size_t>(cat)];
      if (static_cast<Index>(ids.size()) != S) throw std::invalid_argument("encode: structural ids do not match source length");
      parts.push_back(embedding_lookup(g, params_.at("struct." + std::string(corpus::category_name(cat))), ids));
    }
    out.structure = concat_cols(std::span<const Var>(parts));
  }

  Var layer_input = arch == Architecture::StructInput ? concat_cols({words, out.structure}) : words;
  auto bilstm = [&](const std::string& prefix, Var input, int input_dim) {
    LstmCell fwd(g.param(params_.at(prefix + ".fwd.W")), g.param(params_.at(prefix + ".fwd.b")), input_dim, h);
    LstmCell bwd(g.param(params_.at(prefix + ".bwd.W")), g.param(params_.at(prefix + ".bwd.b")), input_dim, h);
    return concat_cols({fwd.run(input, false), bwd.run(input, true)});
  };
  Var layer1 = bilstm("enc.l1", layer_input, config_.encoder_input_dim());
  Var layer2 = bilstm("enc.l2", layer1, 2 * h);
  out.states = arch == Architecture::StructHidden ? concat_cols({layer2, out.structure}) : layer2;

  out.initial = tanh(add(matmul(mean_rows(out.states), g.param(params_.at("bridge.W"))), g.param(params_.at("bridge.b"))));

  Var attn_W = g.param(params_.at("attn.W"));
  out.attention_query = slice_rows(attn_W, 0, h);
  out.attention_keys = add(matmul(out.states, slice_rows(attn_W, h, config_.encoder_state_dim())),
                           g.param(params_.at("attn.b")));

  if (uses_two_way(arch)) {
    out.primitive = concat_cols({out.structure, words});
    if (arch == Architecture::TwoWayRelation) {
      Tensor select = Tensor::Zero(S, S);
      for (Index i = 0; i < S; ++i) {
        int p = pair.parent_index[static_cast<std::size_t>(i)];
        if (p >= 0) select(i, p) = 1.0;  // root keeps a zero parent vector
      }
      out.structural_input = concat_cols({out.primitive, matmul(g.constant(std::move(select)), out.primitive)});
      edge_matrices(pair.parent_index, out.heads, out.dependents);
    } else {
      out.structural_input = out.primitive;
    }
    Var sattn_W = g.param(params_.at("sattn.W"));
    const int in_dim = config_.structural_input_dim();
    out.structural_keys = add(matmul(out.structural_input, slice_rows(sattn_W, 0, in_dim)),
                              g.param(params_.at("sattn.b")));
    out.structural_query = slice_rows(sattn_W, in_dim, h);
  }

  out.decoder.emplace(g.param(params_.at("dec.W")), g.param(params_.at("dec.b")), config_.word_dim, h);
  return out;
}

DecoderState Summarizer::initial_state(Graph& g, const EncoderOutput& enc) {
  DecoderState s;
  s.lstm = {enc.initial, g.constant(Tensor::Zero(1, config_.hidden_dim))};
  const Index S = static_cast<Index>(enc.length());
  s.alpha_history = g.constant(Tensor::Zero(1, S));
  s.attention_history = s.alpha_history;
  return s;
}

Var Summarizer::attention_semantic(Var h_t, const EncoderOutput& enc, Var* scores) {
  Graph& g = h_t.graph();
  Var hidden = tanh(add(enc.attention_keys, matmul(h_t, enc.attention_query)));
  Var e = transpose(matmul(hidden, transpose(g.param(params_.at("attn.v")))));
  if (scores != nullptr) *scores = e;
  return masked_softmax(e, enc.mask);
}

Var Summarizer::attention_structural(Var h_t, const EncoderOutput& enc) {
  if (!uses_two_way(config_.architecture)) {
    throw std::logic_error("attention_structural: not defined for " + std::string(architecture_name(config_.architecture)));
  }
  Graph& g = h_t.graph();
  Var hidden = tanh(add(enc.structural_keys, matmul(h_t, enc.structural_query)));
  Var f = transpose(matmul(hidden, transpose(g.param(params_.at("sattn.u")))));
  return masked_softmax(f, enc.mask);
}

StepOutput Summarizer::decode_step(Graph& g, DecoderState& state, int prev_word, const EncoderOutput& enc,
                                   const CopyMap& copy) {
  const auto arch = config_.architecture;
  StepOutput out;
  Var y_prev = word_rows(g, {prev_word}, true);
  state.lstm = enc.decoder->step(y_prev, state.lstm);
  Var h_t = state.lstm.h;

  out.alpha_history = state.alpha_history;
  out.attention_history = state.attention_history;
  out.alpha = attention_semantic(h_t, enc, &out.scores);
  out.attention = out.alpha;
  if (arch == Architecture::TwoWayWord) {
    out.beta = attention_structural(h_t, enc);
    out.delta = combine_two_way_word(out.alpha, out.beta, epsilon(g));
    out.attention = out.delta;
  } else if (arch == Architecture::TwoWayRelation) {
    out.beta = attention_structural(h_t, enc);
    auto rel = combine_two_way_relation(out.alpha, state.alpha_history, out.beta, enc.heads, enc.dependents, epsilon(g));
    out.gamma = rel.gamma;
    out.delta = rel.delta;
    out.attention = out.delta;
  }

  out.context = matmul(out.attention, enc.states);
  Var hc = concat_cols({h_t, out.context});
  Var h_tilde = tanh(add(matmul(hc, g.param(params_.at("out.Wh"))), g.param(params_.at("out.bh"))));
  out.p_vocab = softmax(add(matmul(h_tilde, g.param(params_.at("out.Wy"))), g.param(params_.at("out.by"))));

  if (copy_enabled_) {
    Var switch_in = concat_cols({h_t, out.context, y_prev});
    out.p_gen = sigmoid(add(matmul(switch_in, g.param(params_.at("switch.W"))), g.param(params_.at("switch.b"))));
    out.p_final = mix_copy_distribution(out.p_vocab, out.attention, out.p_gen, copy);
  } else {
    out.p_gen = g.scalar(1.0);
    out.p_final = out.p_vocab;
  }

  state.alpha_history = add(state.alpha_history, out.alpha);
  state.attention_history = add(state.attention_history, out.attention);
  ++state.step;
  return out;
}

CopyMap Summarizer::instance_copy_map(const corpus::EncodedPair& pair, const corpus::Vocabulary& vocab,
                                      std::vector<std::string>* extra_words) {
  CopyMap map;
  map.width = vocab.output_size();
  std::unordered_map<std::string, int> extra;
  for (const auto& w : pair.src_surface) {
    if (vocab.in_output(w)) {
      map.source_to_extended.push_back(vocab.words().id(w));
      continue;
    }
    auto [it, inserted] = extra.try_emplace(w, map.width);
    if (inserted) {
      ++map.width;
      if (extra_words != nullptr) extra_words->push_back(w);
    }
    map.source_to_extended.push_back(it->second);
  }
  return map;
}

}  // namespace structsum::model
