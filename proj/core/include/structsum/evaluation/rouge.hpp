#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace structsum::evaluation {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  bool empty_reference = false;  // scored 0 because the reference had no units
};

// F1 = 2PR / (P + R), or 0 when P + R = 0.
double f1_score(double precision, double recall);

// Clipped n-gram overlap over pre-normalized tokens.
RougeScore rouge_n(std::span<const std::string> system, std::span<const std::string> reference, int n);
// Plain longest common subsequence, no weighting.
RougeScore rouge_l(std::span<const std::string> system, std::span<const std::string> reference);
std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

struct RougeOptions {
  bool lowercase = true;
  bool stem = false;
};

std::vector<std::string> normalize_tokens(std::span<const std::string> tokens, const RougeOptions& options);

struct InstanceRouge {
  RougeScore r1, r2, rl;
};

struct RougeReport {
  std::vector<InstanceRouge> instances;
  InstanceRouge average;  // mean of per-instance P, R and F1
  int empty_references = 0;
};

// Scores aligned systems and references; throws std::invalid_argument when
// the counts differ.
RougeReport score_corpus(const std::vector<std::vector<std::string>>& systems,
                         const std::vector<std::vector<std::string>>& references, const RougeOptions& options = {});

// Tab-separated "metric P R F1" table preceded by '#' comment lines.
void write_rouge_report(std::ostream& out, const RougeReport& report, const RougeOptions& options);

}  // namespace structsum::evaluation
