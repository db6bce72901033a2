#include "fixtures.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "structsum/corpus/structural_labels.hpp"

namespace structsum::testing {

ad::Tensor random_tensor(ad::Index rows, ad::Index cols, std::mt19937_64& rng, double scale) {
  std::normal_distribution<double> dist(0.0, scale);
  ad::Tensor t(rows, cols);
  for (ad::Index r = 0; r < rows; ++r) {
    for (ad::Index c = 0; c < cols; ++c) t(r, c) = dist(rng);
  }
  return t;
}

corpus::ParsedSentence random_sentence(std::size_t n, const std::vector<std::string>& words, std::mt19937_64& rng) {
  static const std::vector<std::string> tags = {"NN", "VBD", "JJ", "IN", "DT"};
  static const std::vector<std::string> rels = {"nsubj", "dobj", "amod", "case", "det"};
  corpus::ParsedSentence s;
  std::uniform_int_distribution<std::size_t> pick_word(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_tag(0, tags.size() - 1);
  std::size_t root = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  // Attach tokens in a random order to an already attached token.
  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < n; ++k) {
    if (k != root) order.push_back(k);
  }
  std::shuffle(order.begin(), order.end(), rng);
  s.head.assign(n, 0);
  std::vector<std::size_t> attached = {root};
  for (auto k : order) {
    auto parent = attached[std::uniform_int_distribution<std::size_t>(0, attached.size() - 1)(rng)];
    s.head[k] = static_cast<int>(parent) + 1;
    attached.push_back(k);
  }
  for (std::size_t k = 0; k < n; ++k) {
    s.tokens.push_back(words[pick_word(rng)]);
    s.pos.push_back(tags[pick_tag(rng)]);
    s.deprel.push_back(k == root ? "root" : rels[pick_tag(rng)]);
  }
  corpus::validate_tree(s);
  return s;
}

Dataset build_dataset(const std::vector<corpus::ParsedSentence>& sources,
                      const std::vector<std::vector<std::string>>& summaries, int v_in, int v_out) {
  if (sources.size() != summaries.size()) throw std::invalid_argument("build_dataset: size mismatch");
  Dataset d;
  d.sources = sources;
  d.summaries = summaries;
  std::vector<corpus::TrainingText> texts;
  for (std::size_t k = 0; k < sources.size(); ++k) {
    texts.push_back({sources[k].tokens, summaries[k], corpus::extract_structural_labels(sources[k])});
  }
  d.vocab = corpus::build_vocabularies(texts, v_in, v_out);
  for (std::size_t k = 0; k < sources.size(); ++k) {
    d.pairs.push_back(corpus::encode_pair(sources[k].tokens, summaries[k], d.vocab, &sources[k]));
  }
  return d;
}

Dataset toy_dataset(std::size_t n, std::uint64_t seed, int v_in, int v_out) {
  auto toy = corpus::generate_toy_corpus(n, seed);
  std::vector<corpus::ParsedSentence> sources;
  std::vector<std::vector<std::string>> summaries;
  for (auto& p : toy) {
    sources.push_back(p.source);
    summaries.push_back(p.summary);
  }
  return build_dataset(sources, summaries, v_in, v_out);
}

constexpr int kSeedRows = 10;

TinyTask tiny_task(std::size_t count, std::size_t max_source, std::size_t max_summary, int v_out,
                   std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  // Frequent words fill the output vocabulary; rare ones stay outside it.
  std::vector<std::string> common, rare;
  for (int k = 0; k < v_out - corpus::kNumReserved; ++k) common.push_back("w" + std::to_string(k));
  for (int k = 0; k < 6; ++k) rare.push_back("r" + std::to_string(k));
  std::vector<std::string> all = common;
  all.insert(all.end(), rare.begin(), rare.end());

  std::vector<corpus::ParsedSentence> sources;
  std::vector<std::vector<std::string>> summaries;
  // Seed sentences so every common word outranks every rare word.
  for (int rep = 0; rep < kSeedRows; ++rep) {
    corpus::ParsedSentence s = random_sentence(common.size(), common, rng);
    s.tokens = common;
    sources.push_back(s);
    summaries.push_back({common.front()});
  }
  for (std::size_t k = 0; k < count; ++k) {
    std::size_t n = std::uniform_int_distribution<std::size_t>(2, max_source)(rng);
    auto s = random_sentence(n, all, rng);
    std::size_t m = std::uniform_int_distribution<std::size_t>(1, max_summary)(rng);
    std::vector<std::string> summary;
    for (std::size_t j = 0; j < m; ++j) {
      int kind = std::uniform_int_distribution<int>(0, 2)(rng);
      if (kind == 0) {
        summary.push_back(s.tokens[std::uniform_int_distribution<std::size_t>(0, n - 1)(rng)]);
      } else if (kind == 1) {
        summary.push_back(common[std::uniform_int_distribution<std::size_t>(0, common.size() - 1)(rng)]);
      } else {
        summary.push_back(rare[std::uniform_int_distribution<std::size_t>(0, rare.size() - 1)(rng)]);
      }
    }
    sources.push_back(s);
    summaries.push_back(summary);
  }
  TinyTask t;
  t.v_out = v_out;
  t.data = build_dataset(sources, summaries, static_cast<int>(all.size()), v_out - corpus::kNumReserved);
  // Drop the seeding sentences from the instances under test.
  t.data.pairs.erase(t.data.pairs.begin(), t.data.pairs.begin() + kSeedRows);
  t.data.sources.erase(t.data.sources.begin(), t.data.sources.begin() + kSeedRows);
  t.data.summaries.erase(t.data.summaries.begin(), t.data.summaries.begin() + kSeedRows);
  return t;
}

model::ModelConfig config_for(model::Architecture arch, const corpus::Vocabulary& vocab, int word_dim, int struct_dim,
                              int hidden_dim) {
  model::ModelConfig c;
  c.architecture = arch;
  c.word_dim = word_dim;
  c.struct_dim = struct_dim;
  c.hidden_dim = hidden_dim;
  c.v_in = vocab.input_size();
  c.v_out = vocab.output_size();
  for (auto cat : corpus::kLabelCategories) c.label_sizes[static_cast<std::size_t>(cat)] = vocab.label_size(cat);
  return c;
}

TempDir::TempDir(const std::string& tag) {
  static std::atomic<int> counter{0};
  auto base = std::filesystem::temp_directory_path() /
              ("structsum-" + tag + "-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
  std::filesystem::remove_all(base);
  std::filesystem::create_directories(base);
  path_ = base.string();
}

TempDir::~TempDir() {
  std::error_code ec;
  std::filesystem::remove_all(path_, ec);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

}  // namespace structsum::testing
