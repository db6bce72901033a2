#include <benchmark/benchmark.h>

#include <span>
#include <vector>

#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/corpus/toy_corpus.hpp"
#include "structsum/corpus/vocabulary.hpp"
#include "structsum/decoding/search.hpp"
#include "structsum/decoding/step_model.hpp"
#include "structsum/evaluation/rouge.hpp"
#include "structsum/model/summarizer.hpp"
#include "structsum/training/batching.hpp"
#include "structsum/training/loss.hpp"

namespace {

using namespace structsum;

struct Toy {
  corpus::Vocabulary vocab;
  std::vector<corpus::EncodedPair> pairs;
};

const Toy& toy() {
  static const Toy t = [] {
    auto raw = corpus::generate_toy_corpus(64, 1);
    std::vector<corpus::TrainingText> texts;
    for (const auto& p : raw) {
      texts.push_back({p.source.tokens, p.summary, corpus::extract_structural_labels(p.source)});
    }
    Toy out;
    out.vocab = corpus::build_vocabularies(texts, 1000, 60);
    for (const auto& p : raw) {
      out.pairs.push_back(corpus::encode_pair(p.source.tokens, p.summary, out.vocab, &p.source));
    }
    return out;
  }();
  return t;
}

model::ModelConfig config(model::Architecture a, int hidden) {
  model::ModelConfig c;
  c.architecture = a;
  c.word_dim = hidden / 2;
  c.struct_dim = 8;
  c.hidden_dim = hidden;
  c.v_in = toy().vocab.input_size();
  c.v_out = toy().vocab.output_size();
  for (auto cat : corpus::kLabelCategories) {
    c.label_sizes[static_cast<std::size_t>(cat)] = toy().vocab.label_size(cat);
  }
  return c;
}

model::Architecture arch(const benchmark::State& state) { return static_cast<model::Architecture>(state.range(0)); }

void BM_Encode(benchmark::State& state) {
  model::Summarizer m(config(arch(state), static_cast<int>(state.range(1))), 1);
  const auto& pair = toy().pairs.front();
  for (auto _ : state) {
    ad::Graph g;
    auto enc = m.encode(g, pair);
    benchmark::DoNotOptimize(enc.states.value().data());
  }
  state.SetLabel(std::string(model::architecture_name(arch(state))));
}
BENCHMARK(BM_Encode)->ArgsProduct({{0, 1, 2, 3, 4}, {64, 256}});

void BM_TeacherForcedStep(benchmark::State& state) {
  model::Summarizer m(config(arch(state), static_cast<int>(state.range(1))), 1);
  std::span<const corpus::EncodedPair> pairs(toy().pairs);
  auto batch = training::make_batches(pairs, 16).front();
  for (auto _ : state) {
    ad::Graph g;
    auto r = training::step_loss(g, m, toy().vocab, pairs, batch, 1.0, true);
    g.backward(r.objective);
    benchmark::DoNotOptimize(r.objective.scalar());
  }
  state.SetLabel(std::string(model::architecture_name(arch(state))));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(batch.members.size()));
}
BENCHMARK(BM_TeacherForcedStep)->ArgsProduct({{0, 4}, {64, 256}})->Unit(benchmark::kMillisecond);

void BM_BeamSearch(benchmark::State& state) {
  model::Summarizer m(config(model::Architecture::TwoWayRelation, 128), 1);
  const auto& pair = toy().pairs.front();
  const int width = static_cast<int>(state.range(0));
  for (auto _ : state) {
    decoding::SummarizerStepModel step(m, toy().vocab, pair);
    auto h = decoding::beam_search(step, width, 13.5, 12);
    benchmark::DoNotOptimize(h.log_prob);
  }
}
BENCHMARK(BM_BeamSearch)->Arg(1)->Arg(5)->Arg(10)->Unit(benchmark::kMillisecond);

void BM_RougeL(benchmark::State& state) {
  std::vector<std::string> a, b;
  for (std::int64_t k = 0; k < state.range(0); ++k) {
    a.push_back("w" + std::to_string(k % 37));
    b.push_back("w" + std::to_string((k * 7) % 41));
  }
  for (auto _ : state) benchmark::DoNotOptimize(evaluation::rouge_l(a, b).f1);
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_RougeL)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oNSquared);

}  // namespace

BENCHMARK_MAIN();
