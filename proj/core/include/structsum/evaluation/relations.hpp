#pragma once

#include <array>
#include <iosfwd>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "structsum/corpus/parsed_sentence.hpp"

namespace structsum::evaluation {

inline constexpr std::array<std::string_view, 10> kReportedRelations = {
    "nsubj", "dobj", "amod", "nmod", "nmod:poss", "mark", "case", "conj", "cc", "det"};

struct RelationCount {
  long total = 0;
  long preserved = 0;
  double percentage() const { return total == 0 ? 0.0 : 100.0 * static_cast<double>(preserved) / static_cast<double>(total); }
};

struct RelationPreservationReport {
  std::map<std::string, RelationCount> by_relation;

  // Adds every head-dependent edge of `source`. An edge is preserved when
  // both words occur in `summary` (lowercase exact match, any position).
  // Each edge instance counts once, including repeated word pairs.
  void add(const corpus::ParsedSentence& source, std::span<const std::string> summary);
  RelationCount count(std::string_view relation) const;
};

RelationPreservationReport relation_preservation(const corpus::ParsedSentence& source,
                                                 std::span<const std::string> summary);

// One header row and one row per system, percentages with two decimals for
// the ten reported relation types ("-" when a type never occurs).
void write_relation_table(std::ostream& out,
                          const std::vector<std::pair<std::string, RelationPreservationReport>>& systems);
// Every relation type seen: relation, total, preserved, percentage.
void write_relation_counts(std::ostream& out, const RelationPreservationReport& report);

}  // namespace structsum::evaluation
