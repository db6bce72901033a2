#pragma once

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "structsum/corpus/parsed_sentence.hpp"

namespace structsum::corpus {

// The six per-token structural label categories.
enum class LabelCategory {
  Depth = 0,
  InLabel = 1,
  OutDegree = 2,
  PosTag = 3,
  AbsPosition = 4,
  RelPosition = 5,
};

inline constexpr std::size_t kNumLabelCategories = 6;
inline constexpr std::array<LabelCategory, kNumLabelCategories> kLabelCategories = {
    LabelCategory::Depth,  LabelCategory::InLabel,     LabelCategory::OutDegree,
    LabelCategory::PosTag, LabelCategory::AbsPosition, LabelCategory::RelPosition};

std::string_view category_name(LabelCategory c);

struct LabelConfig {
  int max_depth = 20;
  int max_abs_position = 100;
};

struct StructuralLabels {
  std::vector<int> depth;
  std::vector<std::string> in_label;
  std::vector<int> out_degree;
  std::vector<std::string> pos_tag;
  std::vector<int> abs_pos;         // 1-based, clipped
  std::vector<int> rel_pos_bucket;  // 1..10

  std::size_t size() const { return depth.size(); }
  // String form of one category, used as vocabulary keys.
  std::vector<std::string> strings(LabelCategory c) const;
};

// Bucket b in [1, 10] with (b-1)/10 < position/length <= b/10.
int relative_position_bucket(int position, int length);

StructuralLabels extract_structural_labels(const ParsedSentence& s, const LabelConfig& config = {});

}  // namespace structsum::corpus
