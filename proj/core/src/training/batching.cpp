#include "structsum/training/batching.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace structsum::training {

BatchVocabulary::BatchVocabulary(const corpus::Vocabulary& vocab,
                                 std::span<const corpus::EncodedPair* const> pairs)
    : output_size_(vocab.output_size()) {
  const auto& tokens = vocab.words().tokens();
  words_.assign(tokens.begin(), tokens.begin() + output_size_);
  for (int k = 0; k < output_size_; ++k) index_.emplace(words_[static_cast<std::size_t>(k)], k);
  for (const auto* pair : pairs) {
    for (const auto& w : pair->src_surface) {
      auto [it, inserted] = index_.try_emplace(w, size());
      if (inserted) words_.push_back(w);
    }
  }
}

int BatchVocabulary::index(const std::string& word) const {
  auto it = index_.find(word);
  return it == index_.end() ? -1 : it->second;
}

model::CopyMap BatchVocabulary::copy_map(const corpus::EncodedPair& pair) const {
  model::CopyMap map;
  map.width = size();
  map.source_to_extended.reserve(pair.src_surface.size());
  for (const auto& w : pair.src_surface) {
    int k = index(w);
    if (k < 0) throw std::invalid_argument("batch vocabulary does not cover source word '" + w + "'");
    map.source_to_extended.push_back(k);
  }
  return map;
}

std::vector<int> BatchVocabulary::gold_ids(const corpus::EncodedPair& pair, bool copy) const {
  std::vector<int> gold;
  gold.reserve(pair.tgt_surface.size() + 1);
  for (const auto& w : pair.tgt_surface) {
    int k = index(w);
    if (k >= 0 && k < output_size_) {
      gold.push_back(k);
    } else if (copy && k >= 0 && std::find(pair.src_surface.begin(), pair.src_surface.end(), w) != pair.src_surface.end()) {
      gold.push_back(k);
    } else {
      gold.push_back(corpus::kUnkId);
    }
  }
  gold.push_back(corpus::kEosId);
  return gold;
}

std::vector<Batch> make_batches(std::span<const corpus::EncodedPair> corpus, int batch_size) {
  if (batch_size <= 0) throw std::invalid_argument("make_batches: batch size must be positive");
  std::vector<std::size_t> order(corpus.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return corpus[a].source_length() < corpus[b].source_length();
  });
  std::vector<Batch> batches;
  const auto m = static_cast<std::size_t>(batch_size);
  for (std::size_t start = 0; start < order.size(); start += m) {
    Batch b;
    b.members.assign(order.begin() + static_cast<std::ptrdiff_t>(start),
                     order.begin() + static_cast<std::ptrdiff_t>(std::min(order.size(), start + m)));
    for (auto k : b.members) b.max_source_length = std::max(b.max_source_length, corpus[k].source_length());
    for (auto k : b.members) {
      std::vector<double> row(b.max_source_length, 0.0);
      std::fill_n(row.begin(), corpus[k].source_length(), 1.0);
      b.mask.push_back(std::move(row));
    }
    batches.push_back(std::move(b));
  }
  return batches;
}

std::vector<std::size_t> epoch_order(std::size_t num_batches, std::uint64_t seed, int epoch) {
  std::vector<std::size_t> order(num_batches);
  std::iota(order.begin(), order.end(), 0);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(epoch)};
  std::mt19937_64 rng(seq);
  // Fisher-Yates with an explicit draw so the order does not depend on the
  // standard library's shuffle.
  for (std::size_t i = num_batches; i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(order[i - 1], order[j]);
  }
  return order;
}

}  // namespace structsum::training
