#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "structsum/corpus/parsed_sentence.hpp"
#include "structsum/corpus/structural_labels.hpp"
#include "structsum/corpus/vocabulary.hpp"

namespace structsum::corpus {

// Index-encoded (source, summary) instance.
struct EncodedPair {
  std::vector<int> src_ids;  // input-vocabulary ids
  std::array<std::vector<int>, kNumLabelCategories> src_struct_ids;
  std::vector<std::string> src_surface;
  // Parent position per source token (0-based), -1 for the root or when no
  // parse is available.
  std::vector<int> parent_index;
  bool has_structure = false;
  std::vector<std::string> src_deprel;  // empty without a parse

  std::vector<std::string> tgt_surface;  // without the end token
  // Output-vocabulary ids of tgt_surface followed by kEosId.
  std::vector<int> tgt_ids;
  // Input-vocabulary ids of tgt_surface, fed back to the decoder.
  std::vector<int> tgt_input_ids;
  // For each target token, every source position with the same surface form.
  std::vector<std::vector<int>> tgt_copy_positions;

  std::size_t source_length() const { return src_ids.size(); }
  // Number of decoder steps, including the end token.
  std::size_t target_steps() const { return tgt_ids.size(); }
};

// `parse` may be null (plain-text source); then structural ids are the
// unknown label and no parents are recorded. When present, its tokens must
// equal `source`.
EncodedPair encode_pair(const std::vector<std::string>& source, const std::vector<std::string>& summary,
                        const Vocabulary& vocab, const ParsedSentence* parse,
                        const LabelConfig& label_config = {});

// Surface forms recovered from ids; unknown ids render as "<unk>".
std::vector<std::string> decode_ids(const std::vector<int>& ids, const Vocabulary& vocab);

// Whitespace tokenization of a pre-tokenized line.
std::vector<std::string> split_tokens(const std::string& line);
std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace structsum::corpus
