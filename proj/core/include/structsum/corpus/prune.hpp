#pragma once

#include <string>
#include <vector>

namespace structsum::corpus {

// Ingestion filters for train/valid splits. Test data is never pruned.
struct PruneConfig {
  bool enabled = true;
  std::size_t min_source_length = 5;
  std::size_t max_source_length = 100;
  std::size_t min_summary_length = 2;
  std::size_t max_summary_length = 50;
  // Minimum number of distinct non-stopword summary types found in the source.
  std::size_t min_overlap = 1;
};

struct PruneDecision {
  bool keep = true;
  std::string reason;  // empty when kept
};

PruneDecision prune_pair(const std::vector<std::string>& source, const std::vector<std::string>& summary,
                         const PruneConfig& rules);

// Lowercased comparison against a small English stopword list.
bool is_stopword(const std::string& token);

}  // namespace structsum::corpus
