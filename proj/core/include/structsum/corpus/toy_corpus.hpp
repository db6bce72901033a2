#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "structsum/corpus/parsed_sentence.hpp"

namespace structsum::corpus {

struct ToyPair {
  ParsedSentence source;
  std::vector<std::string> summary;
};

// Deterministic templated news-style sentences with hand-built dependency
// trees and rule-derived headline summaries. Pairs are distinct.
std::vector<ToyPair> generate_toy_corpus(std::size_t count, std::uint64_t seed);

// Writes <dir>/<split>.source.txt, <split>.conllu and <split>.summary.txt.
void write_toy_split(const std::string& dir, const std::string& split, const std::vector<ToyPair>& pairs);

// Copy task: the source is filler words, a marker token, then a 3-token
// span; the summary is that span. Every span contains one word drawn from
// `rare_prefix` + counter, so each such word occurs once in the data.
struct CopyTaskOptions {
  std::size_t count = 100;
  std::uint64_t seed = 7;
  std::string rare_prefix = "rare";
  std::size_t rare_offset = 0;
  std::string marker = "@";
};

struct CopyPair {
  std::vector<std::string> source;
  std::vector<std::string> summary;
  std::string rare_token;
};

std::vector<CopyPair> generate_copy_task(const CopyTaskOptions& options);

// The dependency parse used for the "had" structural-label example, in
// CoNLL-U form.
std::string alaska_father_conllu();

}  // namespace structsum::corpus
