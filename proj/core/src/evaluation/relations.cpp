#include "structsum/evaluation/relations.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <ostream>
#include <set>
#include <stdexcept>

namespace structsum::evaluation {
namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

}  // namespace

void RelationPreservationReport::add(const corpus::ParsedSentence& source, std::span<const std::string> summary) {
  std::set<std::string> present;
  for (const auto& w : summary) present.insert(lower(w));
  for (std::size_t i = 0; i < source.tokens.size(); ++i) {
    int head = source.head[i];
    if (head <= 0) continue;
    if (static_cast<std::size_t>(head) > source.tokens.size()) throw std::out_of_range("relation_preservation: head out of range");
    auto& c = by_relation[source.deprel[i]];
    ++c.total;
    if (present.count(lower(source.tokens[i])) != 0 && present.count(lower(source.tokens[static_cast<std::size_t>(head - 1)])) != 0) {
      ++c.preserved;
    }
  }
}

RelationCount RelationPreservationReport::count(std::string_view relation) const {
  auto it = by_relation.find(std::string(relation));
  return it == by_relation.end() ? RelationCount{} : it->second;
}

RelationPreservationReport relation_preservation(const corpus::ParsedSentence& source,
                                                 std::span<const std::string> summary) {
  RelationPreservationReport r;
  r.add(source, summary);
  return r;
}

void write_relation_table(std::ostream& out,
                          const std::vector<std::pair<std::string, RelationPreservationReport>>& systems) {
  out << "System";
  for (auto rel : kReportedRelations) out << '\t' << rel;
  out << '\n';
  for (const auto& [name, report] : systems) {
    out << name;
    for (auto rel : kReportedRelations) {
      auto c = report.count(rel);
      out << '\t';
      if (c.total == 0) {
        out << '-';
      } else {
        out << std::fixed << std::setprecision(2) << c.percentage();
      }
    }
    out << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

void write_relation_counts(std::ostream& out, const RelationPreservationReport& report) {
  out << "relation\ttotal\tpreserved\tpercent\n";
  for (const auto& [rel, c] : report.by_relation) {
    out << rel << '\t' << c.total << '\t' << c.preserved << '\t' << std::fixed << std::setprecision(2)
        << c.percentage() << '\n';
  }
  out.unsetf(std::ios::floatfield);
}

}  // namespace structsum::evaluation
