#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "structsum/autodiff/tensor.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/corpus/parsed_sentence.hpp"
#include "structsum/corpus/toy_corpus.hpp"
#include "structsum/corpus/vocabulary.hpp"
#include "structsum/model/config.hpp"

namespace structsum::testing {

ad::Tensor random_tensor(ad::Index rows, ad::Index cols, std::mt19937_64& rng, double scale = 1.0);

// Random single-rooted tree over `n` tokens drawn from `words`.
corpus::ParsedSentence random_sentence(std::size_t n, const std::vector<std::string>& words, std::mt19937_64& rng);

struct Dataset {
  corpus::Vocabulary vocab;
  std::vector<corpus::ParsedSentence> sources;
  std::vector<std::vector<std::string>> summaries;
  std::vector<corpus::EncodedPair> pairs;
};

// Vocabulary over every pair, then encodings of every pair.
Dataset build_dataset(const std::vector<corpus::ParsedSentence>& sources,
                      const std::vector<std::vector<std::string>>& summaries, int v_in, int v_out);

Dataset toy_dataset(std::size_t n, std::uint64_t seed, int v_in = 100000, int v_out = 100000);

// Small random instances over a fixed word list: sources of 2..max_source
// tokens with random trees, summaries of 1..max_summary tokens drawn from
// the source and from words outside the output vocabulary.
struct TinyTask {
  Dataset data;
  int v_out = 0;  // output size including reserved tokens
};
TinyTask tiny_task(std::size_t count, std::size_t max_source, std::size_t max_summary, int v_out,
                   std::uint64_t seed);

model::ModelConfig config_for(model::Architecture arch, const corpus::Vocabulary& vocab, int word_dim, int struct_dim,
                              int hidden_dim);

inline constexpr model::Architecture kAllArchitectures[] = {
    model::Architecture::Baseline, model::Architecture::StructInput, model::Architecture::StructHidden,
    model::Architecture::TwoWayWord, model::Architecture::TwoWayRelation};

// Fresh directory under the system temp path, removed by the destructor.
class TempDir {
 public:
  explicit TempDir(const std::string& tag);
  ~TempDir();
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::string& path() const { return path_; }
  std::string file(const std::string& name) const { return path_ + "/" + name; }

 private:
  std::string path_;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace structsum::testing
