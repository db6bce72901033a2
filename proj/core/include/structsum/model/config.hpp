#pragma once

#include <array>
#include <string>
#include <string_view>

#include "structsum/corpus/structural_labels.hpp"

namespace structsum::model {

enum class Architecture { Baseline, StructInput, StructHidden, TwoWayWord, TwoWayRelation };

std::string_view architecture_name(Architecture a);
// Accepts the names above plus the "Struct+Input" style spellings.
Architecture parse_architecture(std::string_view name);

// True when the architecture reads structural label embeddings.
bool uses_structure(Architecture a);
bool uses_two_way(Architecture a);

struct ModelConfig {
  Architecture architecture = Architecture::Baseline;
  int word_dim = 100;
  int struct_dim = 16;  // per label category
  int hidden_dim = 256;
  // Inner width of both attention scorers; 0 means hidden_dim.
  int attention_dim = 0;
  int v_in = 0;   // rows of the word embedding table, reserved tokens included
  int v_out = 0;  // output vocabulary size, reserved tokens included
  std::array<int, corpus::kNumLabelCategories> label_sizes{};
  int max_src_len = 100;
  int max_tgt_len = 50;
  bool share_embeddings = true;

  // Throws std::invalid_argument when a dimension is not positive.
  void validate() const;

  int attention_width() const { return attention_dim > 0 ? attention_dim : hidden_dim; }
  int struct_vector_dim() const { return static_cast<int>(corpus::kNumLabelCategories) * struct_dim; }
  int encoder_input_dim() const;
  // Width of one row of H^e.
  int encoder_state_dim() const;
  // Width of the primitive representation g_i = [s_i || x_i].
  int primitive_dim() const { return struct_vector_dim() + word_dim; }
  // Width of the structural attention's source-side input.
  int structural_input_dim() const;
};

}  // namespace structsum::model
