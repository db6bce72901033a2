#include "structsum/corpus/encoded_pair.hpp"

#include <sstream>
#include <stdexcept>

namespace structsum::corpus {

EncodedPair encode_pair(const std::vector<std::string>& source, const std::vector<std::string>& summary,
                        const Vocabulary& vocab, const ParsedSentence* parse, const LabelConfig& label_config) {
  if (source.empty()) throw std::invalid_argument("encode_pair: empty source");
  EncodedPair p;
  p.src_surface = source;
  for (const auto& t : source) p.src_ids.push_back(vocab.words().id(t));

  if (parse != nullptr) {
    if (parse->tokens != source) throw std::invalid_argument("encode_pair: parse tokens differ from source tokens");
    StructuralLabels labels = extract_structural_labels(*parse, label_config);
    for (auto c : kLabelCategories) {
      auto& ids = p.src_struct_ids[static_cast<std::size_t>(c)];
      for (const auto& l : labels.strings(c)) ids.push_back(vocab.labels(c).id(l));
    }
    for (int h : parse->head) p.parent_index.push_back(h - 1);
    p.src_deprel = parse->deprel;
    p.has_structure = true;
  } else {
    for (auto& ids : p.src_struct_ids) ids.assign(source.size(), kLabelUnkId);
    p.parent_index.assign(source.size(), -1);
  }

  p.tgt_surface = summary;
  for (const auto& t : summary) {
    p.tgt_ids.push_back(vocab.output_id(t));
    p.tgt_input_ids.push_back(vocab.words().id(t));
    std::vector<int> positions;
    for (std::size_t i = 0; i < source.size(); ++i) {
      if (source[i] == t) positions.push_back(static_cast<int>(i));
    }
    p.tgt_copy_positions.push_back(std::move(positions));
  }
  p.tgt_ids.push_back(kEosId);
  return p;
}

std::vector<std::string> decode_ids(const std::vector<int>& ids, const Vocabulary& vocab) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (int id : ids) out.push_back(vocab.words().token(id));
  return out;
}

std::vector<std::string> split_tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i];
  }
  return out;
}

}  // namespace structsum::corpus
