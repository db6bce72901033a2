#include "structsum/evaluation/rouge.hpp"

#include <algorithm>
#include <cctype>
#include <iomanip>
#include <map>
#include <ostream>
#include <stdexcept>

#include "structsum/evaluation/porter.hpp"

namespace structsum::evaluation {
namespace {

using Gram = std::vector<std::string>;

std::map<Gram, int> ngram_counts(std::span<const std::string> tokens, int n) {
  std::map<Gram, int> counts;
  const auto N = static_cast<std::size_t>(n);
  for (std::size_t k = 0; k + N <= tokens.size(); ++k) ++counts[Gram(tokens.begin() + static_cast<std::ptrdiff_t>(k), tokens.begin() + static_cast<std::ptrdiff_t>(k + N))];
  return counts;
}

RougeScore from_counts(double matched, double system_units, double reference_units) {
  RougeScore s;
  if (reference_units == 0) {
    s.empty_reference = true;
    return s;
  }
  s.precision = system_units > 0 ? matched / system_units : 0.0;
  s.recall = matched / reference_units;
  s.f1 = f1_score(s.precision, s.recall);
  return s;
}

void accumulate(RougeScore& into, const RougeScore& s) {
  into.precision += s.precision;
  into.recall += s.recall;
  into.f1 += s.f1;
}

void divide(RougeScore& s, double n) {
  s.precision /= n;
  s.recall /= n;
  s.f1 /= n;
}

}  // namespace

double f1_score(double precision, double recall) {
  return precision + recall > 0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

RougeScore rouge_n(std::span<const std::string> system, std::span<const std::string> reference, int n) {
  if (n < 1) throw std::invalid_argument("rouge_n: n must be positive");
  auto sys = ngram_counts(system, n);
  auto ref = ngram_counts(reference, n);
  double matched = 0, sys_total = 0, ref_total = 0;
  for (const auto& [g, c] : sys) sys_total += c;
  for (const auto& [g, c] : ref) {
    ref_total += c;
    auto it = sys.find(g);
    if (it != sys.end()) matched += std::min(c, it->second);
  }
  return from_counts(matched, sys_total, ref_total);
}

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  std::vector<std::size_t> prev(b.size() + 1, 0), cur(b.size() + 1, 0);
  for (std::size_t i = 1; i <= a.size(); ++i) {
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

RougeScore rouge_l(std::span<const std::string> system, std::span<const std::string> reference) {
  return from_counts(static_cast<double>(lcs_length(system, reference)), static_cast<double>(system.size()),
                     static_cast<double>(reference.size()));
}

std::vector<std::string> normalize_tokens(std::span<const std::string> tokens, const RougeOptions& options) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (auto t : tokens) {
    if (options.lowercase) {
      std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    }
    if (options.stem) t = porter_stem(t);
    out.push_back(std::move(t));
  }
  return out;
}

RougeReport score_corpus(const std::vector<std::vector<std::string>>& systems,
                         const std::vector<std::vector<std::string>>& references, const RougeOptions& options) {
  if (systems.size() != references.size()) {
    throw std::invalid_argument("rouge: " + std::to_string(systems.size()) + " system lines but " +
                                std::to_string(references.size()) + " reference lines");
  }
  RougeReport report;
  for (std::size_t k = 0; k < systems.size(); ++k) {
    auto sys = normalize_tokens(systems[k], options);
    auto ref = normalize_tokens(references[k], options);
    InstanceRouge s{rouge_n(sys, ref, 1), rouge_n(sys, ref, 2), rouge_l(sys, ref)};
    if (s.r1.empty_reference) ++report.empty_references;
    accumulate(report.average.r1, s.r1);
    accumulate(report.average.r2, s.r2);
    accumulate(report.average.rl, s.rl);
    report.instances.push_back(s);
  }
  if (!systems.empty()) {
    const auto n = static_cast<double>(systems.size());
    divide(report.average.r1, n);
    divide(report.average.r2, n);
    divide(report.average.rl, n);
  }
  return report;
}

void write_rouge_report(std::ostream& out, const RougeReport& report, const RougeOptions& options) {
  out << "# instances=" << report.instances.size() << " stem=" << (options.stem ? "porter" : "none")
      << " lowercase=" << (options.lowercase ? "yes" : "no") << '\n';
  out << "# ROUGE-L is plain LCS (unweighted); scores are means of per-instance values\n";
  if (report.empty_references > 0) {
    out << "# warning: " << report.empty_references << " empty reference(s) scored as 0\n";
  }
  out << "metric\tP\tR\tF1\n";
  auto row = [&](const char* name, const RougeScore& s) {
    out << name << '\t' << std::fixed << std::setprecision(5) << s.precision << '\t' << s.recall << '\t' << s.f1
        << '\n';
  };
  row("ROUGE-1", report.average.r1);
  row("ROUGE-2", report.average.r2);
  row("ROUGE-L", report.average.rl);
  out.unsetf(std::ios::floatfield);
}

}  // namespace structsum::evaluation
