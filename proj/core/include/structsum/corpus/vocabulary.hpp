#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "structsum/corpus/structural_labels.hpp"

namespace structsum::corpus {

// Dense token <-> index map in rank order.
class TokenMap {
 public:
  TokenMap() = default;
  // `ranked` must not contain duplicates; `unk` must be one of its entries.
  TokenMap(std::vector<std::string> ranked, int unk_id);

  int size() const { return static_cast<int>(tokens_.size()); }
  bool contains(const std::string& token) const { return index_.count(token) != 0; }
  // Index of `token`, or the unknown index when absent.
  int id(const std::string& token) const;
  const std::string& token(int id) const;
  int unk_id() const { return unk_id_; }
  const std::vector<std::string>& tokens() const { return tokens_; }

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
  int unk_id_ = 0;
};

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;
inline constexpr int kBosId = 2;
inline constexpr int kEosId = 3;
inline constexpr int kNumReserved = 4;
inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kBosToken = "<s>";
inline constexpr const char* kEosToken = "</s>";

// Structural label maps reserve index 0 for unseen labels.
inline constexpr int kLabelUnkId = 0;

// Input words are ranked by frequency; the output vocabulary is the prefix
// of the first `output_size()` entries, so every output id is also a valid
// input id.
class Vocabulary {
 public:
  Vocabulary() = default;
  Vocabulary(TokenMap words, int output_size, std::array<TokenMap, kNumLabelCategories> labels);

  const TokenMap& words() const { return words_; }
  int input_size() const { return words_.size(); }
  int output_size() const { return output_size_; }
  // Output-vocabulary id of `token`, or kUnkId.
  int output_id(const std::string& token) const;
  bool in_output(const std::string& token) const;

  const TokenMap& labels(LabelCategory c) const { return labels_[static_cast<std::size_t>(c)]; }
  int label_size(LabelCategory c) const { return labels(c).size(); }

  // FNV-1a over every map and the output size.
  std::uint64_t hash() const;

  // One token per line in rank order: <dir>/words.txt (+ output size in
  // <dir>/output_size.txt) and <dir>/label.<category>.txt.
  void save(const std::string& dir) const;
  static Vocabulary load(const std::string& dir);

 private:
  TokenMap words_;
  int output_size_ = 0;
  std::array<TokenMap, kNumLabelCategories> labels_;
};

// Text of one training pair as seen by the vocabulary builder.
struct TrainingText {
  std::vector<std::string> source;
  std::vector<std::string> summary;
  std::optional<StructuralLabels> labels;
};

// Frequency-ranked vocabularies. `v_in` and `v_out` count regular words;
// the reserved tokens come first and are not included in either count.
// Frequency ties keep first-occurrence order (source before summary, pairs
// in corpus order). Throws std::invalid_argument on an empty corpus or
// v_out > v_in.
Vocabulary build_vocabularies(std::span<const TrainingText> corpus, int v_in, int v_out);

}  // namespace structsum::corpus
