#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/corpus/vocabulary.hpp"
#include "structsum/model/summarizer.hpp"

namespace structsum::training {

// Output vocabulary followed by every source word of a batch that is not
// already in it, each exactly once, in first-occurrence order.
class BatchVocabulary {
 public:
  BatchVocabulary(const corpus::Vocabulary& vocab, std::span<const corpus::EncodedPair* const> pairs);

  int size() const { return static_cast<int>(words_.size()); }
  int output_size() const { return output_size_; }
  // Local index of `word`, or -1.
  int index(const std::string& word) const;
  bool contains(const std::string& word) const { return index(word) >= 0; }
  const std::string& word(int index) const { return words_.at(static_cast<std::size_t>(index)); }

  // Copy map of one instance into this index space (width = size()).
  model::CopyMap copy_map(const corpus::EncodedPair& pair) const;
  // Gold indices for every decoder step of `pair`, end token included.
  // Words outside the output vocabulary resolve to their local index when
  // the instance's own source contains them and to kUnkId otherwise; with
  // `copy` false every such word is kUnkId.
  std::vector<int> gold_ids(const corpus::EncodedPair& pair, bool copy = true) const;

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, int> index_;
  int output_size_ = 0;
};

struct Batch {
  std::vector<std::size_t> members;  // indices into the corpus
  std::size_t max_source_length = 0;
  // members.size() x max_source_length, 1 for real tokens and 0 for padding.
  std::vector<std::vector<double>> mask;
};

// Instances sorted by source length (stable, so equal lengths keep corpus
// order) and cut into batches of `batch_size`; the last may be smaller.
std::vector<Batch> make_batches(std::span<const corpus::EncodedPair> corpus, int batch_size);

// Permutation of batch indices for one epoch. Same (seed, epoch) gives the
// same order.
std::vector<std::size_t> epoch_order(std::size_t num_batches, std::uint64_t seed, int epoch);

}  // namespace structsum::training
