#include "structsum/model/config.hpp"

#include <stdexcept>
#include <string>

namespace structsum::model {

std::string_view architecture_name(Architecture a) {
  switch (a) {
    case Architecture::Baseline: return "Baseline";
    case Architecture::StructInput: return "StructInput";
    case Architecture::StructHidden: return "StructHidden";
    case Architecture::TwoWayWord: return "TwoWayWord";
    case Architecture::TwoWayRelation: return "TwoWayRelation";
  }
  return "?";
}

Architecture parse_architecture(std::string_view name) {
  if (name == "Baseline" || name == "baseline") return Architecture::Baseline;
  if (name == "StructInput" || name == "Struct+Input") return Architecture::StructInput;
  if (name == "StructHidden" || name == "Struct+Hidden") return Architecture::StructHidden;
  if (name == "TwoWayWord" || name == "Struct+2Way+Word") return Architecture::TwoWayWord;
  if (name == "TwoWayRelation" || name == "Struct+2Way+Relation") return Architecture::TwoWayRelation;
  throw std::invalid_argument("unknown architecture '" + std::string(name) + "'");
}

bool uses_structure(Architecture a) { return a != Architecture::Baseline; }

bool uses_two_way(Architecture a) {
  return a == Architecture::TwoWayWord || a == Architecture::TwoWayRelation;
}

void ModelConfig::validate() const {
  auto positive = [](int v, const char* name) {
    if (v <= 0) throw std::invalid_argument(std::string("model config: ") + name + " must be positive");
  };
  positive(word_dim, "word_dim");
  positive(hidden_dim, "hidden_dim");
  positive(v_in, "v_in");
  positive(v_out, "v_out");
  positive(max_src_len, "max_src_len");
  positive(max_tgt_len, "max_tgt_len");
  if (attention_dim < 0) throw std::invalid_argument("model config: attention_dim must be nonnegative");
  if (v_out > v_in) throw std::invalid_argument("model config: v_out exceeds v_in");
  if (uses_structure(architecture)) {
    positive(struct_dim, "struct_dim");
    for (int s : label_sizes) positive(s, "label table size");
  }
}

int ModelConfig::encoder_input_dim() const {
  return architecture == Architecture::StructInput ? word_dim + struct_vector_dim() : word_dim;
}

int ModelConfig::encoder_state_dim() const {
  return architecture == Architecture::StructHidden ? 2 * hidden_dim + struct_vector_dim() : 2 * hidden_dim;
}

int ModelConfig::structural_input_dim() const {
  return architecture == Architecture::TwoWayRelation ? 2 * primitive_dim() : primitive_dim();
}

}  // namespace structsum::model
