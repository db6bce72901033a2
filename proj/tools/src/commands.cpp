#include "structsum/cli/commands.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "structsum/corpus/structural_labels.hpp"
#include "structsum/corpus/toy_corpus.hpp"
#include "structsum/decoding/search.hpp"
#include "structsum/decoding/step_model.hpp"
#include "structsum/evaluation/relations.hpp"
#include "structsum/evaluation/rouge.hpp"
#include "structsum/model/checkpoint.hpp"
#include "structsum/model/params.hpp"
#include "structsum/model/summarizer.hpp"
#include "structsum/training/trainer.hpp"

namespace structsum::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

const char* const kSplits[] = {"train", "valid", "test"};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("io", "cannot read '" + path + "'");
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<corpus::ParsedSentence> read_parses(const std::string& path, const RunConfig& config) {
  corpus::ConlluOptions opts;
  opts.pos_column = config.pos_column;
  try {
    return corpus::parse_conllu_file(path, opts);
  } catch (const corpus::ParseError& e) {
    throw CommandError("parse", path + ": " + e.what());
  }
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CommandError("io", "cannot write '" + path.string() + "'");
  out << text;
}

json read_json(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CommandError("io", "cannot read '" + path.string() + "'");
  return json::parse(in);
}

std::string hex(std::uint64_t v) {
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << v;
  return os.str();
}

SplitPaths split_paths(const RunConfig& c, const std::string& split) {
  if (split == "train") return c.train;
  if (split == "valid") return c.valid;
  return c.test;
}

bool has_parse_file(const SplitPaths& p) { return !p.parse.empty(); }

json encode_record(std::size_t id, const std::vector<std::string>& source, const std::vector<std::string>& summary,
                   const corpus::ParsedSentence* parse, const corpus::Vocabulary& vocab) {
  auto pair = corpus::encode_pair(source, summary, vocab, parse);
  json r;
  r["id"] = id;
  r["source"] = source;
  r["summary"] = summary;
  r["src_ids"] = pair.src_ids;
  r["tgt_ids"] = pair.tgt_ids;
  if (parse != nullptr) r["parse"] = {{"pos", parse->pos}, {"head", parse->head}, {"deprel", parse->deprel}};
  return r;
}

}  // namespace

RawSplit read_split(const SplitPaths& paths, const RunConfig& config, bool require_summary) {
  RawSplit out;
  if (paths.source.empty()) throw CommandError("config", "no source file configured");
  for (const auto& line : read_lines(paths.source)) out.sources.push_back(corpus::split_tokens(line));
  if (!paths.summary.empty()) {
    for (const auto& line : read_lines(paths.summary)) out.summaries.push_back(corpus::split_tokens(line));
    if (out.summaries.size() != out.sources.size()) {
      throw CommandError("alignment", "'" + paths.source + "' has " + std::to_string(out.sources.size()) +
                                          " lines but '" + paths.summary + "' has " +
                                          std::to_string(out.summaries.size()));
    }
  } else if (require_summary) {
    throw CommandError("config", "no summary file configured for '" + paths.source + "'");
  }
  if (!paths.parse.empty()) {
    out.parses = read_parses(paths.parse, config);
    if (out.parses.size() != out.sources.size()) {
      throw CommandError("alignment", "'" + paths.source + "' has " + std::to_string(out.sources.size()) +
                                          " lines but '" + paths.parse + "' has " +
                                          std::to_string(out.parses.size()) + " sentences");
    }
    for (std::size_t k = 0; k < out.sources.size(); ++k) {
      if (out.parses[k].tokens != out.sources[k]) {
        throw CommandError("alignment", "sentence " + std::to_string(k + 1) + " of '" + paths.parse +
                                            "' does not match line " + std::to_string(k + 1) + " of '" +
                                            paths.source + "'");
      }
    }
  }
  return out;
}

PreprocessResult cmd_preprocess(const RunConfig& config) {
  if (config.train.source.empty()) throw CommandError("config", "paths.train_source is not set");
  const bool parsed = has_parse_file(config.train);
  for (const char* split : {"valid", "test"}) {
    auto p = split_paths(config, split);
    if (!p.source.empty() && has_parse_file(p) != parsed) {
      throw CommandError("config", std::string("parse files must be given for every split or none (") + split + ")");
    }
  }

  PreprocessResult result;
  result.has_parses = parsed;
  std::map<std::string, RawSplit> kept;
  for (const char* split : kSplits) {
    auto paths = split_paths(config, split);
    if (paths.source.empty()) continue;
    auto raw = read_split(paths, config, true);
    SplitStats stats;
    stats.input = raw.sources.size();
    RawSplit out;
    const bool prune = config.prune.enabled && std::string(split) != "test";
    for (std::size_t k = 0; k < raw.sources.size(); ++k) {
      if (prune) {
        auto d = corpus::prune_pair(raw.sources[k], raw.summaries[k], config.prune);
        if (!d.keep) {
          ++stats.dropped[d.reason];
          continue;
        }
      }
      out.sources.push_back(raw.sources[k]);
      out.summaries.push_back(raw.summaries[k]);
      if (parsed) out.parses.push_back(raw.parses[k]);
    }
    stats.kept = out.sources.size();
    result.splits[split] = stats;
    kept[split] = std::move(out);
  }
  const auto& train = kept.at("train");
  if (train.sources.empty()) throw CommandError("data", "no training pairs left after pruning");

  std::vector<corpus::TrainingText> texts;
  for (std::size_t k = 0; k < train.sources.size(); ++k) {
    corpus::TrainingText t{train.sources[k], train.summaries[k], std::nullopt};
    if (parsed) t.labels = corpus::extract_structural_labels(train.parses[k]);
    texts.push_back(std::move(t));
  }
  auto vocab = corpus::build_vocabularies(texts, config.v_in, config.v_out);
  result.vocab_hash = vocab.hash();
  result.input_vocab = vocab.input_size();
  result.output_vocab = vocab.output_size();

  fs::path root(config.output_dir);
  fs::create_directories(root / "data");
  fs::remove_all(root / "vocab");
  vocab.save((root / "vocab").string());
  for (const auto& entry : fs::directory_iterator(root / "data")) {
    if (entry.path().extension() == ".jsonl") fs::remove(entry.path());
  }

  const std::size_t shard_size = config.shard_size == 0 ? 1 : config.shard_size;
  json stats;
  for (const auto& [split, data] : kept) {
    std::size_t shards = 0;
    std::ofstream out;
    for (std::size_t k = 0; k < data.sources.size(); ++k) {
      if (k % shard_size == 0) {
        std::ostringstream name;
        name << split << '-' << std::setw(5) << std::setfill('0') << shards++ << ".jsonl";
        out = std::ofstream(root / "data" / name.str(), std::ios::binary);
        if (!out) throw CommandError("io", "cannot write shard " + name.str());
      }
      out << encode_record(k, data.sources[k], data.summaries[k], parsed ? &data.parses[k] : nullptr, vocab).dump()
          << '\n';
    }
    const auto& s = result.splits.at(split);
    stats["splits"][split] = {{"input", s.input}, {"kept", s.kept}, {"dropped", s.dropped}, {"shards", shards}};
  }
  stats["vocab_hash"] = hex(result.vocab_hash);
  stats["input_vocab"] = result.input_vocab;
  stats["output_vocab"] = result.output_vocab;
  stats["has_parses"] = parsed;
  stats["pruning"] = config.prune.enabled;
  write_text(root / "stats.json", stats.dump(2) + "\n");
  return result;
}

corpus::Vocabulary load_vocabulary(const std::string& output_dir) {
  fs::path dir = fs::path(output_dir) / "vocab";
  if (!fs::exists(dir)) throw CommandError("missing-data", "no vocabulary under '" + output_dir + "'; run preprocess first");
  return corpus::Vocabulary::load(dir.string());
}

LoadedSplit load_split(const std::string& output_dir, const std::string& split, const corpus::Vocabulary& vocab) {
  fs::path root(output_dir);
  auto stats = read_json(root / "stats.json");
  if (stats.at("vocab_hash").get<std::string>() != hex(vocab.hash())) {
    throw CommandError("vocab-mismatch", "vocabulary under '" + output_dir + "' does not match stats.json");
  }
  LoadedSplit out;
  out.has_parses = stats.at("has_parses").get<bool>();
  if (!stats["splits"].contains(split)) return out;
  std::size_t shards = stats["splits"][split].at("shards").get<std::size_t>();
  for (std::size_t s = 0; s < shards; ++s) {
    std::ostringstream name;
    name << split << '-' << std::setw(5) << std::setfill('0') << s << ".jsonl";
    std::ifstream in(root / "data" / name.str(), std::ios::binary);
    if (!in) throw CommandError("missing-data", "missing shard " + name.str());
    for (std::string line; std::getline(in, line);) {
      auto r = json::parse(line);
      corpus::ParsedSentence src;
      src.tokens = r.at("source").get<std::vector<std::string>>();
      auto summary = r.at("summary").get<std::vector<std::string>>();
      const corpus::ParsedSentence* parse = nullptr;
      if (r.contains("parse")) {
        src.pos = r["parse"].at("pos").get<std::vector<std::string>>();
        src.head = r["parse"].at("head").get<std::vector<int>>();
        src.deprel = r["parse"].at("deprel").get<std::vector<std::string>>();
        parse = &src;
      }
      out.pairs.push_back(corpus::encode_pair(src.tokens, summary, vocab, parse));
      out.sources.push_back(std::move(src));
      out.summaries.push_back(std::move(summary));
    }
  }
  return out;
}

namespace {

model::ModelConfig model_config_for(const RunConfig& config, const corpus::Vocabulary& vocab) {
  model::ModelConfig m = config.model;
  m.v_in = vocab.input_size();
  m.v_out = vocab.output_size();
  for (auto cat : corpus::kLabelCategories) m.label_sizes[static_cast<std::size_t>(cat)] = vocab.label_size(cat);
  m.validate();
  return m;
}

void require_parses(model::Architecture arch, bool available, const std::string& what) {
  if (model::uses_structure(arch) && !available) {
    throw CommandError("missing-parse", std::string(model::architecture_name(arch)) +
                                            " reads dependency structure but " + what + " has no parses");
  }
}

}  // namespace

TrainOutcome cmd_train(const RunConfig& config, std::ostream* progress) {
  auto vocab = load_vocabulary(config.output_dir);
  auto train = load_split(config.output_dir, "train", vocab);
  auto valid = load_split(config.output_dir, "valid", vocab);
  require_parses(config.model.architecture, train.has_parses, "the preprocessed data");
  if (train.pairs.empty()) throw CommandError("data", "the preprocessed training split is empty");

  auto mconfig = model_config_for(config, vocab);
  model::Summarizer summarizer(mconfig, config.seed);
  summarizer.set_copy_enabled(config.copy);
  std::size_t loaded = 0;
  if (!config.embeddings.empty()) {
    loaded = model::load_pretrained_embeddings(summarizer.params(), mconfig, vocab, config.embeddings);
  }

  fs::path root(config.output_dir);
  fs::path ckdir = root / "checkpoints";
  fs::remove_all(ckdir);
  std::ofstream log(root / "train.log", std::ios::binary);
  if (!log) throw CommandError("io", "cannot write train.log");
  log << "epoch\tstep\tL\tomega\tseconds\n";

  training::TrainHooks hooks;
  hooks.log = &log;
  hooks.checkpoint_dir = ckdir.string();
  hooks.metadata = {{"vocab_hash", hex(vocab.hash())}, {"copy", config.copy ? "1" : "0"}};
  if (progress != nullptr) {
    hooks.on_epoch = [progress](const training::EpochRecord& r) {
      *progress << "epoch " << r.epoch << " (stage " << r.stage << "): train " << r.train_loss << ", valid "
                << r.valid_loss << " + omega " << r.valid_omega << '\n';
    };
  }
  training::TrainResult result;
  try {
    result = training::train(summarizer, vocab, train.pairs, valid.pairs, config.train_config, hooks);
  } catch (const training::TrainingError& e) {
    throw CommandError("training", e.what());
  }

  const auto& best = result.history.at(static_cast<std::size_t>(result.best));
  json manifest;
  manifest["architecture"] = model::architecture_name(mconfig.architecture);
  manifest["best_checkpoint"] = fs::path(best.checkpoint).filename().string();
  manifest["best_epoch"] = best.epoch;
  manifest["best_stage1_checkpoint"] =
      fs::path(result.history.at(static_cast<std::size_t>(result.best_stage1)).checkpoint).filename().string();
  manifest["early_stopped"] = result.early_stopped;
  manifest["vocab_hash"] = hex(vocab.hash());
  manifest["pretrained_rows"] = loaded;
  manifest["copy"] = config.copy;
  for (const auto& r : result.history) {
    manifest["epochs"].push_back({{"epoch", r.epoch},
                                  {"stage", r.stage},
                                  {"train_loss", r.train_loss},
                                  {"train_omega", r.train_omega},
                                  {"valid_loss", r.valid_loss},
                                  {"valid_omega", r.valid_omega},
                                  {"checkpoint", fs::path(r.checkpoint).filename().string()}});
  }
  write_text(root / "manifest.json", manifest.dump(2) + "\n");
  write_text(root / "run.conf", format_run_config(config));

  TrainOutcome out;
  out.best_checkpoint = best.checkpoint;
  out.epochs = static_cast<int>(result.history.size());
  out.best_valid_loss = best.valid_loss;
  return out;
}

void cmd_summarize(const RunConfig& config, const SummarizeArgs& args) {
  config.decode.validate();
  auto vocab = load_vocabulary(config.output_dir);
  std::string checkpoint = args.checkpoint;
  if (checkpoint.empty()) {
    auto manifest = read_json(fs::path(config.output_dir) / "manifest.json");
    checkpoint = (fs::path(config.output_dir) / "checkpoints" / manifest.at("best_checkpoint").get<std::string>()).string();
  }
  model::Checkpoint ck;
  try {
    ck = model::load_checkpoint(checkpoint);
  } catch (const std::runtime_error& e) {
    throw CommandError("checkpoint", e.what());
  }
  auto hash = ck.metadata.find("vocab_hash");
  if (hash == ck.metadata.end() || hash->second != hex(vocab.hash())) {
    throw CommandError("vocab-mismatch", "checkpoint '" + checkpoint + "' was trained with vocabulary " +
                                             (hash == ck.metadata.end() ? std::string("<none>") : hash->second) +
                                             " but '" + config.output_dir + "' holds " + hex(vocab.hash()));
  }
  if (args.input.empty()) throw CommandError("config", "no input file given");
  SplitPaths paths{args.input, "", args.parse};
  auto raw = read_split(paths, config, false);
  require_parses(ck.config.architecture, !raw.parses.empty() || raw.sources.empty(), "'" + args.input + "'");

  model::Summarizer summarizer(ck.config, std::move(ck.params));
  auto copy = ck.metadata.find("copy");
  summarizer.set_copy_enabled(copy == ck.metadata.end() || copy->second == "1");

  std::ofstream out;
  std::ostream* sink = &std::cout;
  if (!args.output.empty()) {
    out.open(args.output, std::ios::binary);
    if (!out) throw CommandError("io", "cannot write '" + args.output + "'");
    sink = &out;
  }
  for (std::size_t k = 0; k < raw.sources.size(); ++k) {
    if (raw.sources[k].empty()) {
      *sink << '\n';
      continue;
    }
    auto pair = corpus::encode_pair(raw.sources[k], {}, vocab, raw.parses.empty() ? nullptr : &raw.parses[k]);
    decoding::SummarizerStepModel step(summarizer, vocab, pair);
    auto h = decoding::decode(step, config.decode);
    *sink << corpus::join_tokens(h.words) << '\n';
  }
}

void cmd_evaluate(const EvaluateArgs& args, std::ostream& out) {
  auto sys_lines = read_lines(args.system);
  auto ref_lines = read_lines(args.reference);
  if (sys_lines.size() != ref_lines.size()) {
    throw CommandError("alignment", "'" + args.system + "' has " + std::to_string(sys_lines.size()) +
                                        " lines but '" + args.reference + "' has " + std::to_string(ref_lines.size()));
  }
  std::vector<std::vector<std::string>> sys, ref;
  for (const auto& l : sys_lines) sys.push_back(corpus::split_tokens(l));
  for (const auto& l : ref_lines) ref.push_back(corpus::split_tokens(l));
  evaluation::RougeOptions opts;
  opts.stem = args.stem;
  auto report = evaluation::score_corpus(sys, ref, opts);

  std::ostringstream rouge;
  evaluation::write_rouge_report(rouge, report, opts);
  std::ostringstream relations;
  if (!args.parse.empty()) {
    auto parses = read_parses(args.parse, RunConfig{});
    if (parses.size() != sys.size()) {
      throw CommandError("alignment", "'" + args.parse + "' has " + std::to_string(parses.size()) +
                                          " sentences but '" + args.system + "' has " + std::to_string(sys.size()) +
                                          " lines");
    }
    evaluation::RelationPreservationReport rel;
    for (std::size_t k = 0; k < sys.size(); ++k) rel.add(parses[k], sys[k]);
    evaluation::write_relation_table(relations, {{args.name, rel}});
    relations << '\n';
    evaluation::write_relation_counts(relations, rel);
  }
  if (args.output.empty()) {
    out << rouge.str();
    if (!args.parse.empty()) out << '\n' << relations.str();
    return;
  }
  fs::create_directories(args.output);
  write_text(fs::path(args.output) / "rouge.tsv", rouge.str());
  if (!args.parse.empty()) write_text(fs::path(args.output) / "relations.tsv", relations.str());
}

void cmd_analyze_relations(const AnalyzeArgs& args, std::ostream& out) {
  if (args.systems.empty()) throw CommandError("config", "no system files given");
  if (!args.names.empty() && args.names.size() != args.systems.size()) {
    throw CommandError("config", std::to_string(args.names.size()) + " names given for " +
                                     std::to_string(args.systems.size()) + " system files");
  }
  auto parses = read_parses(args.parse, RunConfig{});
  std::vector<std::pair<std::string, evaluation::RelationPreservationReport>> rows;
  for (std::size_t s = 0; s < args.systems.size(); ++s) {
    auto lines = read_lines(args.systems[s]);
    if (lines.size() != parses.size()) {
      throw CommandError("alignment", "'" + args.systems[s] + "' has " + std::to_string(lines.size()) +
                                          " lines but '" + args.parse + "' has " + std::to_string(parses.size()) +
                                          " sentences");
    }
    evaluation::RelationPreservationReport rel;
    for (std::size_t k = 0; k < lines.size(); ++k) rel.add(parses[k], corpus::split_tokens(lines[k]));
    std::string name = args.names.empty() ? fs::path(args.systems[s]).stem().string() : args.names[s];
    rows.emplace_back(name, std::move(rel));
  }
  evaluation::write_relation_table(out, rows);
}

void cmd_generate_toy(const ToyArgs& args) {
  if (args.output_dir.empty()) throw CommandError("config", "no output directory given");
  auto pairs = corpus::generate_toy_corpus(args.train + args.valid + args.test, args.seed);
  auto begin = pairs.begin();
  std::vector<corpus::ToyPair> train(begin, begin + static_cast<std::ptrdiff_t>(args.train));
  std::vector<corpus::ToyPair> valid(begin + static_cast<std::ptrdiff_t>(args.train),
                                     begin + static_cast<std::ptrdiff_t>(args.train + args.valid));
  std::vector<corpus::ToyPair> test(begin + static_cast<std::ptrdiff_t>(args.train + args.valid), pairs.end());
  corpus::write_toy_split(args.output_dir, "train", train);
  corpus::write_toy_split(args.output_dir, "valid", valid);
  corpus::write_toy_split(args.output_dir, "test", test);

  std::ostringstream conf;
  conf << "# Synthetic corpus, " << pairs.size() << " pairs, seed " << args.seed << ".\n";
  for (const char* split : kSplits) {
    conf << "paths." << split << "_source = " << split << ".source.txt\n";
    conf << "paths." << split << "_summary = " << split << ".summary.txt\n";
    conf << "paths." << split << "_parse = " << split << ".conllu\n";
  }
  conf << "paths.output_dir = work\n\n"
          "data.v_in = 1000\n"
          "data.v_out = 60\n\n"
          "model.architecture = TwoWayRelation\n"
          "model.word_dim = 16\n"
          "model.struct_dim = 4\n"
          "model.hidden_dim = 32\n\n"
          "train.learning_rate = 0.01\n"
          "train.batch_size = 16\n"
          "train.max_epochs = 1\n"
          "train.coverage_epochs = 0\n\n"
          "decode.max_length = 12\n";
  write_text(fs::path(args.output_dir) / "toy.conf", conf.str());
}

}  // namespace structsum::cli
