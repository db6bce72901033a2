#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "structsum/corpus/parsed_sentence.hpp"
#include "structsum/corpus/prune.hpp"
#include "structsum/decoding/search.hpp"
#include "structsum/model/config.hpp"
#include "structsum/training/train_config.hpp"

namespace structsum::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SplitPaths {
  std::string source;   // one pre-tokenized sentence per line
  std::string summary;  // aligned with source
  std::string parse;    // CoNLL-U, optional
};

struct RunConfig {
  SplitPaths train, valid, test;
  std::string embeddings;  // GloVe-style text, optional
  std::string output_dir = "work";

  // Regular words only; reserved tokens are added on top.
  int v_in = 70000;
  int v_out = 5000;
  std::size_t shard_size = 10000;
  corpus::PosColumn pos_column = corpus::PosColumn::Xpos;

  model::ModelConfig model;  // v_in, v_out and label sizes come from the vocabulary
  bool copy = true;
  training::TrainConfig train_config;
  decoding::DecodeConfig decode;
  corpus::PruneConfig prune;
  std::uint64_t seed = 1;

  RunConfig();
};

// Every key this tool understands, with its default, in file order.
std::vector<std::pair<std::string, std::string>> default_entries();

// Flat "section.key = value" lines; '#' starts a comment. Relative paths
// resolve against `base_dir`. Unknown keys and malformed values throw
// ConfigError naming the line.
RunConfig parse_run_config(const std::string& text, const std::string& base_dir = "");
RunConfig load_run_config(const std::string& path);

// Applies one "section.key=value" override.
void apply_override(RunConfig& config, const std::string& assignment, const std::string& base_dir = "");

// Writes every key with its current value, in the same format.
std::string format_run_config(const RunConfig& config);

}  // namespace structsum::cli
