#include "structsum/corpus/prune.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <unordered_set>

namespace structsum::corpus {
namespace {

std::string lower(const std::string& s) {
  std::string out = s;
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

const std::unordered_set<std::string>& stopwords() {
  static const std::unordered_set<std::string> words = {
      "a",    "an",   "the",  "and",  "or",   "but",   "of",    "in",    "on",    "at",   "to",    "for",
      "by",   "with", "from", "as",   "is",   "are",   "was",   "were",  "be",    "been", "has",   "have",
      "had",  "it",   "its",  "that", "this", "which", "who",   "he",    "she",   "they", "his",   "her",
      "their", "we",  "i",    "you",  "not",  "will",  "would", "said",  "says",  "'s",   ",",     ".",
      "``",   "''",   "-lrb-", "-rrb-", ":",  ";",     "--",    "?",     "!",     "'",    "\"",    "#"};
  return words;
}

}  // namespace

bool is_stopword(const std::string& token) { return stopwords().count(lower(token)) != 0; }

PruneDecision prune_pair(const std::vector<std::string>& source, const std::vector<std::string>& summary,
                         const PruneConfig& rules) {
  if (!rules.enabled) return {};
  if (source == summary) return {false, "repetitive"};
  if (source.size() < rules.min_source_length || source.size() > rules.max_source_length) {
    return {false, "source length"};
  }
  if (summary.size() < rules.min_summary_length || summary.size() > rules.max_summary_length) {
    return {false, "summary length"};
  }
  std::set<std::string> src;
  for (const auto& t : source) src.insert(lower(t));
  std::set<std::string> shared;
  for (const auto& t : summary) {
    std::string l = lower(t);
    if (!is_stopword(l) && src.count(l) != 0) shared.insert(l);
  }
  if (shared.size() < rules.min_overlap) return {false, "overlap"};
  return {};
}

}  // namespace structsum::corpus
