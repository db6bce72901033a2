#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "structsum/cli/run_config.hpp"
#include "structsum/corpus/encoded_pair.hpp"
#include "structsum/corpus/vocabulary.hpp"

namespace structsum::cli {

// Failure of a command with a short machine-readable kind, e.g.
// "alignment", "missing-parse", "vocab-mismatch".
class CommandError : public std::runtime_error {
 public:
  CommandError(std::string kind, const std::string& message) : std::runtime_error(message), kind_(std::move(kind)) {}
  const std::string& kind() const { return kind_; }

 private:
  std::string kind_;
};

// Aligned text of one split as read from disk.
struct RawSplit {
  std::vector<std::vector<std::string>> sources;
  std::vector<std::vector<std::string>> summaries;
  std::vector<corpus::ParsedSentence> parses;  // empty without a parse file
};

// Reads the files of one split and checks that line and sentence counts
// agree. `summary` may be absent when `require_summary` is false.
RawSplit read_split(const SplitPaths& paths, const RunConfig& config, bool require_summary = true);

struct SplitStats {
  std::size_t input = 0;
  std::size_t kept = 0;
  std::map<std::string, std::size_t> dropped;  // by reason
};

struct PreprocessResult {
  std::map<std::string, SplitStats> splits;
  std::uint64_t vocab_hash = 0;
  int input_vocab = 0;
  int output_vocab = 0;
  bool has_parses = false;
};

// Layout under output_dir:
//   vocab/          vocabularies
//   data/<split>-NNNNN.jsonl
//   stats.json
PreprocessResult cmd_preprocess(const RunConfig& config);

// A preprocessed split loaded back and encoded against `vocab`.
struct LoadedSplit {
  std::vector<corpus::ParsedSentence> sources;
  std::vector<std::vector<std::string>> summaries;
  std::vector<corpus::EncodedPair> pairs;
  bool has_parses = false;
};

corpus::Vocabulary load_vocabulary(const std::string& output_dir);
LoadedSplit load_split(const std::string& output_dir, const std::string& split, const corpus::Vocabulary& vocab);

struct TrainOutcome {
  std::string best_checkpoint;
  int epochs = 0;
  double best_valid_loss = 0.0;
};

// Trains on the preprocessed train/valid splits. Writes train.log,
// checkpoints/epoch-NNN.ckpt and manifest.json under output_dir.
TrainOutcome cmd_train(const RunConfig& config, std::ostream* progress = nullptr);

struct SummarizeArgs {
  std::string checkpoint;  // defaults to the manifest's best checkpoint
  std::string input;       // source text, one sentence per line
  std::string parse;       // CoNLL-U for the input, needed by structural models
  std::string output;
};

// One summary line per input line.
void cmd_summarize(const RunConfig& config, const SummarizeArgs& args);

struct EvaluateArgs {
  std::string system;
  std::string reference;
  std::string parse;   // source parses; enables the relation report
  std::string output;  // directory for rouge.tsv / relations.tsv; stdout when empty
  std::string name = "System";
  bool stem = false;
};

void cmd_evaluate(const EvaluateArgs& args, std::ostream& out);

struct AnalyzeArgs {
  std::vector<std::string> systems;  // summary files
  std::vector<std::string> names;    // row labels, defaults to file stems
  std::string parse;
};

// Relation-preservation table with one row per system file.
void cmd_analyze_relations(const AnalyzeArgs& args, std::ostream& out);

struct ToyArgs {
  std::string output_dir;
  std::size_t train = 160;
  std::size_t valid = 20;
  std::size_t test = 20;
  std::uint64_t seed = 1;
};

// Writes train/valid/test splits of the synthetic corpus and a matching
// toy.conf.
void cmd_generate_toy(const ToyArgs& args);

// Parses arguments and runs one subcommand. Returns the process exit code;
// failures print one JSON error line to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace structsum::cli
