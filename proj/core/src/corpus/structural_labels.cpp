#include "structsum/corpus/structural_labels.hpp"

#include <algorithm>
#include <stdexcept>

namespace structsum::corpus {

std::string_view category_name(LabelCategory c) {
  switch (c) {
    case LabelCategory::Depth: return "depth";
    case LabelCategory::InLabel: return "in_label";
    case LabelCategory::OutDegree: return "out_degree";
    case LabelCategory::PosTag: return "pos";
    case LabelCategory::AbsPosition: return "abs_pos";
    case LabelCategory::RelPosition: return "rel_pos";
  }
  return "?";
}

std::vector<std::string> StructuralLabels::strings(LabelCategory c) const {
  auto ints = [](const std::vector<int>& v) {
    std::vector<std::string> s;
    s.reserve(v.size());
    for (int x : v) s.push_back(std::to_string(x));
    return s;
  };
  switch (c) {
    case LabelCategory::Depth: return ints(depth);
    case LabelCategory::InLabel: return in_label;
    case LabelCategory::OutDegree: return ints(out_degree);
    case LabelCategory::PosTag: return pos_tag;
    case LabelCategory::AbsPosition: return ints(abs_pos);
    case LabelCategory::RelPosition: return ints(rel_pos_bucket);
  }
  return {};
}

int relative_position_bucket(int position, int length) {
  if (length <= 0 || position < 1 || position > length) {
    throw std::invalid_argument("relative_position_bucket: position " + std::to_string(position) +
                                " outside sentence of length " + std::to_string(length));
  }
  // ceil(10 * position / length) in integers, so 0.5 lands exactly in bucket 5.
  return std::clamp((10 * position + length - 1) / length, 1, 10);
}

StructuralLabels extract_structural_labels(const ParsedSentence& s, const LabelConfig& config) {
  validate_tree(s);
  const int n = static_cast<int>(s.size());
  StructuralLabels out;
  out.depth.assign(s.size(), -1);
  out.out_degree.assign(s.size(), 0);
  out.in_label = s.deprel;
  out.pos_tag = s.pos;

  for (int i = 0; i < n; ++i) {
    int h = s.head[static_cast<std::size_t>(i)];
    if (h > 0) {
      ++out.out_degree[static_cast<std::size_t>(h - 1)];
    } else {
      out.in_label[static_cast<std::size_t>(i)] = "root";
    }
  }

  // Depth by walking to the root; validate_tree guarantees termination.
  for (int i = 0; i < n; ++i) {
    int d = 0;
    for (int cur = i; s.head[static_cast<std::size_t>(cur)] != 0; cur = s.head[static_cast<std::size_t>(cur)] - 1) ++d;
    out.depth[static_cast<std::size_t>(i)] = std::min(d, config.max_depth);
  }

  for (int i = 0; i < n; ++i) {
    out.abs_pos.push_back(std::min(i + 1, config.max_abs_position));
    out.rel_pos_bucket.push_back(relative_position_bucket(i + 1, n));
  }
  return out;
}

}  // namespace structsum::corpus
