#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "fixtures.hpp"
#include "structsum/autodiff/grad_check.hpp"
#include "structsum/autodiff/ops.hpp"
#include "structsum/model/checkpoint.hpp"
#include "structsum/model/params.hpp"
#include "structsum/model/summarizer.hpp"

namespace structsum {
namespace {

using ad::Graph;
using ad::Index;
using ad::Tensor;
using ad::Var;
using model::Architecture;
using model::Summarizer;

Tensor row(std::initializer_list<double> values) {
  Tensor t(1, static_cast<Index>(values.size()));
  Index k = 0;
  for (double v : values) t(0, k++) = v;
  return t;
}

struct Fixture {
  testing::TinyTask task = testing::tiny_task(30, 5, 3, 12, 101);
  const corpus::Vocabulary& vocab() const { return task.data.vocab; }
  model::ModelConfig config(Architecture a) const { return testing::config_for(a, vocab(), 4, 3, 8); }
};

// Teacher-forced per-step distributions of one instance.
std::vector<Tensor> step_distributions(Summarizer& m, const corpus::EncodedPair& pair, const corpus::Vocabulary& vocab) {
  Graph g;
  auto copy = Summarizer::instance_copy_map(pair, vocab);
  auto enc = m.encode(g, pair);
  auto state = m.initial_state(g, enc);
  std::vector<Tensor> out;
  int prev = corpus::kBosId;
  for (std::size_t t = 0; t < pair.target_steps(); ++t) {
    out.push_back(m.decode_step(g, state, prev, enc, copy).p_final.value());
    if (t < pair.tgt_input_ids.size()) prev = pair.tgt_input_ids[t];
  }
  return out;
}

TEST(Params, GroupsPerArchitecture) {
  Fixture f;
  for (auto a : testing::kAllArchitectures) {
    auto params = model::allocate_parameters(f.config(a));
    EXPECT_TRUE(model::shape_audit(f.config(a), params).empty());
    const bool structural = model::uses_structure(a);
    const bool two_way = model::uses_two_way(a);
    EXPECT_EQ(params.contains("struct.depth"), structural) << model::architecture_name(a);
    EXPECT_EQ(params.contains("sattn.u"), two_way);
    EXPECT_EQ(params.contains("sattn.W"), two_way);
    EXPECT_EQ(params.contains("epsilon"), two_way);
    EXPECT_TRUE(params.contains("switch.W"));
  }
}

TEST(Params, AuditCatchesWrongShape) {
  Fixture f;
  auto cfg = f.config(Architecture::Baseline);
  auto params = model::allocate_parameters(cfg);
  auto other = cfg;
  other.hidden_dim = 9;
  EXPECT_FALSE(model::shape_audit(other, params).empty());
  EXPECT_THROW(Summarizer(other, params), std::invalid_argument);
}

TEST(Params, InitializationConventions) {
  Fixture f;
  Summarizer m(f.config(Architecture::TwoWayWord), 3);
  const int h = 8;
  const auto& b = m.params().at("dec.b").value;
  for (Index c = 0; c < 4 * h; ++c) EXPECT_EQ(b(0, c), (c >= h && c < 2 * h) ? 1.0 : 0.0);
  EXPECT_NEAR(m.epsilon_value(), 1.0, 1e-12);
  EXPECT_NEAR(model::inverse_softplus(1.0), std::log(std::exp(1.0) - 1.0), 1e-15);
}

TEST(Config, StructHiddenStateWidth) {
  Fixture f;
  auto cfg = f.config(Architecture::StructHidden);
  EXPECT_EQ(cfg.encoder_state_dim(), 2 * cfg.hidden_dim + 6 * cfg.struct_dim);
  Summarizer m(cfg, 1);
  Graph g;
  auto enc = m.encode(g, f.task.data.pairs[0]);
  EXPECT_EQ(enc.states.cols(), 2 * 8 + 6 * 3);
  EXPECT_EQ(enc.states.rows(), static_cast<Index>(f.task.data.pairs[0].source_length()));
}

TEST(Config, ArchitectureNames) {
  for (auto a : testing::kAllArchitectures) EXPECT_EQ(model::parse_architecture(model::architecture_name(a)), a);
  EXPECT_EQ(model::parse_architecture("Struct+2Way+Relation"), Architecture::TwoWayRelation);
  EXPECT_THROW(model::parse_architecture("Transformer"), std::invalid_argument);
}

TEST(Encode, SingletonSourceBridgeUsesItsOnlyState) {
  Fixture f;
  Summarizer m(f.config(Architecture::Baseline), 4);
  auto pair = corpus::encode_pair({"w1"}, {"w1"}, f.vocab(), nullptr);
  Graph g;
  auto enc = m.encode(g, pair);
  Tensor expected = (enc.states.value() * m.params().at("bridge.W").value + m.params().at("bridge.b").value)
                        .array()
                        .tanh()
                        .matrix();
  EXPECT_EQ(enc.initial.value(), expected);
}

TEST(Encode, ZeroParametersGiveZeroInitialState) {
  Fixture f;
  Summarizer m(f.config(Architecture::StructInput), 4);
  for (auto& p : m.params()) p.value.setZero();
  Graph g;
  auto enc = m.encode(g, f.task.data.pairs[1]);
  EXPECT_TRUE(enc.initial.value().isZero(0.0));
}

TEST(Encode, OutOfRangeIdThrows) {
  Fixture f;
  Summarizer m(f.config(Architecture::Baseline), 4);
  auto pair = f.task.data.pairs[0];
  pair.src_ids[0] = f.vocab().input_size() + 3;
  Graph g;
  EXPECT_THROW(m.encode(g, pair), std::out_of_range);
}

TEST(Encode, RootParentSlotIsZero) {
  Fixture f;
  Summarizer m(f.config(Architecture::TwoWayRelation), 5);
  const auto& pair = f.task.data.pairs[2];
  Graph g;
  auto enc = m.encode(g, pair);
  const Index gdim = f.config(Architecture::TwoWayRelation).primitive_dim();
  for (std::size_t i = 0; i < pair.source_length(); ++i) {
    Tensor parent = enc.structural_input.value().block(static_cast<Index>(i), gdim, 1, gdim);
    int p = pair.parent_index[i];
    if (p < 0) {
      EXPECT_TRUE(parent.isZero(0.0));
    } else {
      EXPECT_EQ(parent, enc.primitive.value().row(p));
    }
  }
}

// Straight-line evaluation of the additive attention score for one position.
double additive_score(const Tensor& W, const Tensor& b, const Tensor& v, const Tensor& first, const Tensor& second) {
  Tensor joint(1, first.cols() + second.cols());
  joint << first, second;
  Tensor hidden = joint * W + b;
  double e = 0;
  for (Index k = 0; k < hidden.cols(); ++k) e += v(0, k) * std::tanh(hidden(0, k));
  return e;
}

Tensor softmax_row(const std::vector<double>& e) {
  double z = 0;
  for (double x : e) z += std::exp(x);
  Tensor out(1, static_cast<Index>(e.size()));
  for (std::size_t i = 0; i < e.size(); ++i) out(0, static_cast<Index>(i)) = std::exp(e[i]) / z;
  return out;
}

TEST(Attention, SemanticMatchesStraightLineRecomputation) {
  Fixture f;
  std::mt19937_64 rng(8);
  for (auto a : testing::kAllArchitectures) {
    Summarizer m(f.config(a), 6);
    for (const auto& pair : f.task.data.pairs) {
      Graph g;
      auto enc = m.encode(g, pair);
      Tensor h = testing::random_tensor(1, 8, rng);
      Tensor alpha = m.attention_semantic(g.constant(h), enc).value();
      std::vector<double> e;
      for (Index i = 0; i < enc.states.rows(); ++i) {
        e.push_back(additive_score(m.params().at("attn.W").value, m.params().at("attn.b").value,
                                   m.params().at("attn.v").value, h, enc.states.value().row(i)));
      }
      EXPECT_TRUE(alpha.isApprox(softmax_row(e), 1e-12)) << model::architecture_name(a);
    }
  }
}

TEST(Attention, StructuralMatchesStraightLineRecomputation) {
  Fixture f;
  std::mt19937_64 rng(9);
  for (auto a : {Architecture::TwoWayWord, Architecture::TwoWayRelation}) {
    Summarizer m(f.config(a), 6);
    for (const auto& pair : f.task.data.pairs) {
      Graph g;
      auto enc = m.encode(g, pair);
      Tensor h = testing::random_tensor(1, 8, rng);
      Tensor beta = m.attention_structural(g.constant(h), enc).value();
      std::vector<double> e;
      for (Index i = 0; i < enc.structural_input.rows(); ++i) {
        e.push_back(additive_score(m.params().at("sattn.W").value, m.params().at("sattn.b").value,
                                   m.params().at("sattn.u").value, enc.structural_input.value().row(i), h));
      }
      EXPECT_TRUE(beta.isApprox(softmax_row(e), 1e-12));
    }
  }
}

TEST(Attention, IdenticalStatesGiveUniformWeights) {
  Fixture f;
  Summarizer m(f.config(Architecture::TwoWayWord), 2);
  // Same word everywhere with no parse: every structural row is identical,
  // and zeroed recurrent weights make every encoder state identical.
  for (const char* name : {"enc.l1.fwd.W", "enc.l1.bwd.W", "enc.l2.fwd.W", "enc.l2.bwd.W"}) {
    m.params().at(name).value.setZero();
  }
  auto pair = corpus::encode_pair({"w2", "w2", "w2", "w2"}, {"w2"}, f.vocab(), nullptr);
  Graph g;
  auto enc = m.encode(g, pair);
  Var h = g.constant(row({0.3, -0.1, 0.2, 0.0, 0.5, -0.4, 0.1, 0.9}));
  Tensor uniform = Tensor::Constant(1, 4, 0.25);
  EXPECT_TRUE(m.attention_semantic(h, enc).value().isApprox(uniform, 1e-15));
  EXPECT_TRUE(m.attention_structural(h, enc).value().isApprox(uniform, 1e-15));
}

TEST(Attention, SinglePositionIsCertain) {
  Fixture f;
  Summarizer m(f.config(Architecture::Baseline), 2);
  auto pair = corpus::encode_pair({"w3"}, {"w3"}, f.vocab(), nullptr);
  Graph g;
  auto enc = m.encode(g, pair);
  EXPECT_EQ(m.attention_semantic(g.constant(Tensor::Ones(1, 8)), enc).value()(0, 0), 1.0);
}

TEST(Attention, StructuralRequiresTwoWay) {
  Fixture f;
  for (auto a : {Architecture::Baseline, Architecture::StructInput, Architecture::StructHidden}) {
    Summarizer m(f.config(a), 2);
    Graph g;
    auto enc = m.encode(g, f.task.data.pairs[0]);
    EXPECT_THROW(m.attention_structural(g.constant(Tensor::Zero(1, 8)), enc), std::logic_error);
  }
}

TEST(Attention, ScalingVKeepsScoreOrdering) {
  Fixture f;
  Summarizer m(f.config(Architecture::Baseline), 12);
  const auto& pair = f.task.data.pairs[4];
  Tensor h = Tensor::Constant(1, 8, 0.2);
  auto argmax = [&]() {
    Graph g;
    auto enc = m.encode(g, pair);
    Var scores;
    m.attention_semantic(g.constant(h), enc, &scores);
    Index best;
    scores.value().row(0).maxCoeff(&best);
    return best;
  };
  Index before = argmax();
  m.params().at("attn.v").value *= 3.7;
  EXPECT_EQ(argmax(), before);
}

TEST(TwoWayWord, HandValues) {
  Graph g;
  Var alpha = g.constant(row({0.8, 0.2}));
  Var beta = g.constant(row({0.5, 0.5}));
  Tensor d = model::combine_two_way_word(alpha, beta, g.scalar(1.0)).value();
  EXPECT_NEAR(d(0, 0), 0.65, 1e-15);
  EXPECT_NEAR(d(0, 1), 0.35, 1e-15);
  EXPECT_EQ(model::combine_two_way_word(alpha, beta, g.scalar(0.0)).value(), alpha.value());
  EXPECT_TRUE(model::combine_two_way_word(alpha, alpha, g.scalar(1.0)).value().isApprox(alpha.value(), 1e-15));
}

TEST(TwoWayWord, NonPositiveNormalizerThrows) {
  Graph g;
  Var a = g.constant(row({0.5, 0.5}));
  EXPECT_THROW(model::combine_two_way_word(a, a, g.scalar(-1.5)), std::domain_error);
}

// gamma_i by direct enumeration of edges to earlier tokens.
Tensor brute_gamma(const std::vector<int>& parent, const Tensor& history, const Tensor& beta) {
  const Index n = beta.cols();
  Tensor gamma = Tensor::Zero(1, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < i; ++j) {
      if (parent[static_cast<std::size_t>(i)] == j) gamma(0, i) += history(0, j) * beta(0, i);
      if (parent[static_cast<std::size_t>(j)] == i) gamma(0, i) += history(0, j) * beta(0, j);
    }
  }
  return gamma;
}

TEST(TwoWayRelation, ChainMatchesHandEvaluation) {
  // Chain w0 -> w1 -> w2 rooted at w0, one previous step of attention.
  std::vector<int> parent = {-1, 0, 1};
  Tensor heads, deps;
  model::edge_matrices(parent, heads, deps);
  Graph g;
  Tensor prev = row({0.6, 0.3, 0.1});
  Tensor alpha = row({0.2, 0.5, 0.3});
  Tensor beta = row({0.1, 0.7, 0.2});
  auto r = model::combine_two_way_relation(g.constant(alpha), g.constant(prev), g.constant(beta), heads, deps,
                                           g.scalar(1.0));
  // gamma_0 = 0; gamma_1 = prev_0 * beta_1; gamma_2 = prev_1 * beta_2.
  Tensor gamma = row({0.0, 0.6 * 0.7, 0.3 * 0.2});
  EXPECT_TRUE(r.gamma.value().isApprox(gamma, 1e-15));
  Tensor delta = (alpha + gamma) / (1.0 + gamma.sum());
  EXPECT_TRUE(r.delta.value().isApprox(delta, 1e-15));
  EXPECT_NEAR(r.delta.value().sum(), 1.0, 1e-15);
}

TEST(TwoWayRelation, MatchesBruteForceOnRandomTrees) {
  std::mt19937_64 rng(21);
  std::gamma_distribution<double> gd(1.0, 1.0);
  auto dirichlet = [&](Index n) {
    Tensor t(1, n);
    for (Index i = 0; i < n; ++i) t(0, i) = gd(rng);
    return Tensor(t / t.sum());
  };
  for (int trial = 0; trial < 200; ++trial) {
    std::size_t n = 1 + static_cast<std::size_t>(trial % 7);
    auto s = testing::random_sentence(n, {"a"}, rng);
    std::vector<int> parent;
    for (int h : s.head) parent.push_back(h - 1);
    Tensor heads, deps;
    model::edge_matrices(parent, heads, deps);
    Tensor alpha = dirichlet(static_cast<Index>(n)), beta = dirichlet(static_cast<Index>(n));
    Tensor history = dirichlet(static_cast<Index>(n)) * static_cast<double>(trial % 4);
    double eps = 0.25 + 0.5 * (trial % 5);
    Graph g;
    auto r = model::combine_two_way_relation(g.constant(alpha), g.constant(history), g.constant(beta), heads, deps,
                                             g.scalar(eps));
    Tensor gamma = brute_gamma(parent, history, beta);
    EXPECT_TRUE(r.gamma.value().isApprox(gamma, 1e-12) || (gamma.isZero(0) && r.gamma.value().isZero(0)));
    Tensor delta = (alpha + eps * gamma) / (alpha + eps * gamma).sum();
    EXPECT_TRUE(r.delta.value().isApprox(delta, 1e-12));
    EXPECT_GE(r.gamma.value().minCoeff(), 0.0);
  }
}

TEST(TwoWayRelation, EmptyHistoryReturnsAlphaExactly) {
  std::vector<int> parent = {1, -1, 1, 2};
  Tensor heads, deps;
  model::edge_matrices(parent, heads, deps);
  Graph g;
  Tensor alpha = row({0.1, 0.2, 0.3, 0.4});
  auto r = model::combine_two_way_relation(g.constant(alpha), g.constant(Tensor::Zero(1, 4)),
                                           g.constant(row({0.25, 0.25, 0.25, 0.25})), heads, deps, g.scalar(1.0));
  EXPECT_TRUE(r.gamma.value().isZero(0.0));
  EXPECT_EQ(r.delta.value(), alpha);
}

TEST(TwoWayRelation, TokenWithoutEarlierEdgesHasZeroGamma) {
  // Token 1's only edge goes to token 2, which comes later.
  std::vector<int> parent = {-1, 2, 0};
  Tensor heads, deps;
  model::edge_matrices(parent, heads, deps);
  Graph g;
  auto r = model::combine_two_way_relation(g.constant(row({0.3, 0.3, 0.4})), g.constant(row({0.5, 0.4, 0.1})),
                                           g.constant(row({0.2, 0.3, 0.5})), heads, deps, g.scalar(1.0));
  EXPECT_EQ(r.gamma.value()(0, 1), 0.0);
  EXPECT_GT(r.gamma.value()(0, 2), 0.0);
}

TEST(CopyMixture, HandExample) {
  // Source "x y x"; x has output id 0, y is outside the output vocabulary.
  Graph g;
  model::CopyMap map{{0, 2, 0}, 3};
  Tensor p_vocab = row({0.1, 0.9});
  auto p = model::mix_copy_distribution(g.constant(p_vocab), g.constant(row({0.5, 0.2, 0.3})), g.scalar(0.4), map);
  EXPECT_NEAR(p.value()(0, 0), 0.52, 1e-15);
  EXPECT_NEAR(p.value()(0, 1), 0.4 * 0.9, 1e-15);  // not in the source
  EXPECT_NEAR(p.value()(0, 2), 0.6 * 0.2, 1e-15);  // source-only word
  EXPECT_NEAR(p.value().sum(), 1.0, 1e-15);
}

TEST(DecodeStep, DistributionInvariantsForEveryArchitecture) {
  Fixture f;
  for (auto a : testing::kAllArchitectures) {
    Summarizer m(f.config(a), 31);
    for (const auto& pair : f.task.data.pairs) {
      Graph g;
      std::vector<std::string> extra;
      auto copy = Summarizer::instance_copy_map(pair, f.vocab(), &extra);
      auto enc = m.encode(g, pair);
      auto state = m.initial_state(g, enc);
      int prev = corpus::kBosId;
      for (std::size_t t = 0; t < pair.target_steps(); ++t) {
        auto s = m.decode_step(g, state, prev, enc, copy);
        EXPECT_NEAR(s.p_final.value().sum(), 1.0, 1e-6);
        EXPECT_NEAR(s.alpha.value().sum(), 1.0, 1e-6);
        EXPECT_NEAR(s.attention.value().sum(), 1.0, 1e-6);
        double pg = s.p_gen.scalar();
        EXPECT_GT(pg, 0.0);
        EXPECT_LT(pg, 1.0);
        if (model::uses_two_way(a)) {
          EXPECT_NEAR(s.beta.value().sum(), 1.0, 1e-6);
          EXPECT_NEAR(s.delta.value().sum(), 1.0, 1e-6);
        }
        if (a == Architecture::TwoWayRelation) EXPECT_GE(s.gamma.value().minCoeff(), 0.0);
        // Independent evaluation of the mixture for every extended word.
        for (int w = 0; w < copy.width; ++w) {
          double copy_mass = 0;
          for (std::size_t i = 0; i < pair.source_length(); ++i) {
            if (copy.source_to_extended[i] == w) copy_mass += s.attention.value()(0, static_cast<Index>(i));
          }
          double gen = w < f.vocab().output_size() ? s.p_vocab.value()(0, w) : 0.0;
          EXPECT_NEAR(s.p_final.value()(0, w), pg * gen + (1 - pg) * copy_mass, 1e-14);
        }
        if (t < pair.tgt_input_ids.size()) prev = pair.tgt_input_ids[t];
      }
    }
  }
}

TEST(DecodeStep, CopyDisabledUsesVocabularyOnly) {
  Fixture f;
  Summarizer m(f.config(Architecture::Baseline), 3);
  m.set_copy_enabled(false);
  Graph g;
  const auto& pair = f.task.data.pairs[0];
  auto enc = m.encode(g, pair);
  auto state = m.initial_state(g, enc);
  auto s = m.decode_step(g, state, corpus::kBosId, enc, model::CopyMap{{}, f.vocab().output_size()});
  EXPECT_EQ(s.p_gen.scalar(), 1.0);
  EXPECT_EQ(s.p_final.value(), s.p_vocab.value());
}

TEST(Reduction, TwoWayWordWithZeroEpsilonMatchesBaseline) {
  Fixture f;
  Summarizer two_way(f.config(Architecture::TwoWayWord), 77);
  two_way.set_epsilon_override(0.0);
  Summarizer baseline(f.config(Architecture::Baseline), 1);
  for (auto& p : baseline.params()) p.value = two_way.params().at(p.name).value;
  for (const auto& pair : f.task.data.pairs) {
    auto a = step_distributions(two_way, pair, f.vocab());
    auto b = step_distributions(baseline, pair, f.vocab());
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t t = 0; t < a.size(); ++t) EXPECT_LE((a[t] - b[t]).cwiseAbs().maxCoeff(), 1e-9);
  }
}

TEST(Reduction, RelationFirstStepDeltaIsAlpha) {
  Fixture f;
  Summarizer m(f.config(Architecture::TwoWayRelation), 5);
  for (const auto& pair : f.task.data.pairs) {
    Graph g;
    auto copy = Summarizer::instance_copy_map(pair, f.vocab());
    auto enc = m.encode(g, pair);
    auto state = m.initial_state(g, enc);
    auto s = m.decode_step(g, state, corpus::kBosId, enc, copy);
    EXPECT_EQ(s.delta.value(), s.alpha.value());
  }
}

TEST(GradCheck, EndToEndEveryArchitecture) {
  Fixture f;
  for (auto a : testing::kAllArchitectures) {
    Summarizer m(f.config(a), 13);
    const auto& pair = f.task.data.pairs[3];
    auto copy = Summarizer::instance_copy_map(pair, f.vocab());
    std::vector<int> gold;
    for (std::size_t t = 0; t < pair.tgt_surface.size(); ++t) {
      const auto& w = pair.tgt_surface[t];
      int id = f.vocab().output_id(w);
      if (id == corpus::kUnkId) {
        for (std::size_t i = 0; i < pair.src_surface.size(); ++i) {
          if (pair.src_surface[i] == w) id = copy.source_to_extended[i];
        }
      }
      gold.push_back(id);
    }
    gold.push_back(corpus::kEosId);
    auto objective = [&](Graph& g) {
      auto enc = m.encode(g, pair);
      auto state = m.initial_state(g, enc);
      std::vector<Var> terms;
      int prev = corpus::kBosId;
      for (std::size_t t = 0; t < gold.size(); ++t) {
        auto s = m.decode_step(g, state, prev, enc, copy);
        terms.push_back(ad::log(ad::pick(s.p_final, 0, gold[t])));
        if (t < pair.tgt_input_ids.size()) prev = pair.tgt_input_ids[t];
      }
      return ad::affine(ad::sum(ad::concat_cols(std::span<const Var>(terms))), -1.0, 0.0);
    };
    std::vector<ad::Parameter*> params;
    for (auto& p : m.params()) params.push_back(&p);
    ad::GradCheckOptions opts;
    opts.max_coords_per_param = 6;
    auto report = ad::grad_check(objective, params, opts);
    EXPECT_TRUE(report.passed) << model::architecture_name(a) << " worst " << report.worst()->name << " "
                               << report.max_rel_error();
  }
}

TEST(Checkpoint, BitExactRoundTrip) {
  Fixture f;
  auto cfg = f.config(Architecture::TwoWayRelation);
  Summarizer m(cfg, 99);
  std::stringstream buf;
  model::write_checkpoint(buf, cfg, m.params(), {{"vocab_hash", "123"}});
  auto ck = model::read_checkpoint(buf);
  EXPECT_EQ(ck.metadata.at("vocab_hash"), "123");
  EXPECT_EQ(ck.config.architecture, cfg.architecture);
  EXPECT_EQ(ck.config.label_sizes, cfg.label_sizes);
  for (const auto& p : m.params()) {
    const auto& q = ck.params.at(p.name).value;
    ASSERT_EQ(q.rows(), p.value.rows());
    EXPECT_EQ(std::memcmp(q.data(), p.value.data(), sizeof(double) * static_cast<std::size_t>(q.size())), 0) << p.name;
  }
}

TEST(Checkpoint, TruncatedAndCorruptFilesFail) {
  Fixture f;
  auto cfg = f.config(Architecture::Baseline);
  Summarizer m(cfg, 99);
  std::stringstream buf;
  model::write_checkpoint(buf, cfg, m.params());
  std::string bytes = buf.str();
  std::stringstream truncated(bytes.substr(0, bytes.size() - 5));
  EXPECT_THROW(model::read_checkpoint(truncated), std::runtime_error);
  std::stringstream bad_magic("not a checkpoint\n");
  EXPECT_THROW(model::read_checkpoint(bad_magic), std::runtime_error);
  EXPECT_THROW(model::load_checkpoint("/nonexistent/file.ckpt"), std::runtime_error);
}

}  // namespace
}  // namespace structsum
