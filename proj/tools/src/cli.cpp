#include <filesystem>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "structsum/cli/commands.hpp"

namespace structsum::cli {
namespace {

void print_error(std::ostream& err, const std::string& command, const std::string& kind, const std::string& message) {
  nlohmann::json line = {{"error", {{"command", command}, {"kind", kind}, {"message", message}}}};
  err << line.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"structsum: structure-infused copy summarization"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  auto add_config_options = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "run configuration file");
    sub->add_option("--set", overrides, "override one key, e.g. --set train.max_epochs=3");
  };

  auto* preprocess = app.add_subcommand("preprocess", "prune, build vocabularies, write encoded shards");
  add_config_options(preprocess);

  auto* train = app.add_subcommand("train", "train on preprocessed data");
  add_config_options(train);

  SummarizeArgs sum_args;
  auto* summarize = app.add_subcommand("summarize", "decode one summary per input line");
  add_config_options(summarize);
  summarize->add_option("--checkpoint", sum_args.checkpoint, "checkpoint file (default: best in manifest)");
  summarize->add_option("--input", sum_args.input, "source sentences")->required();
  summarize->add_option("--parse", sum_args.parse, "CoNLL-U parses of the input");
  summarize->add_option("--output", sum_args.output, "summary file (default: stdout)");

  EvaluateArgs eval_args;
  auto* evaluate = app.add_subcommand("evaluate", "ROUGE and relation-preservation reports");
  evaluate->add_option("--system", eval_args.system, "system summaries")->required();
  evaluate->add_option("--reference", eval_args.reference, "reference summaries")->required();
  evaluate->add_option("--parse", eval_args.parse, "CoNLL-U parses of the sources");
  evaluate->add_option("--output", eval_args.output, "report directory (default: stdout)");
  evaluate->add_option("--name", eval_args.name, "row label of the relation table");
  evaluate->add_flag("--stem", eval_args.stem, "Porter-stem both sides");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze-relations", "relation-preservation table for several systems");
  analyze->add_option("--parse", analyze_args.parse, "CoNLL-U parses of the sources")->required();
  analyze->add_option("--system", analyze_args.systems, "system summary file (repeatable)")->required();
  analyze->add_option("--name", analyze_args.names, "row label per system file");

  ToyArgs toy_args;
  auto* toy = app.add_subcommand("generate-toy", "write the synthetic corpus and a matching config");
  toy->add_option("--out", toy_args.output_dir, "output directory")->required();
  toy->add_option("--train", toy_args.train, "training pairs");
  toy->add_option("--valid", toy_args.valid, "validation pairs");
  toy->add_option("--test", toy_args.test, "test pairs");
  toy->add_option("--seed", toy_args.seed, "generator seed");

  auto* show = app.add_subcommand("print-config", "print the effective configuration");
  add_config_options(show);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    print_error(err, "", "usage", e.what());
    return 2;
  }

  auto* sub = app.get_subcommands().front();
  const std::string command = sub->get_name();
  try {
    auto load = [&]() {
      RunConfig config = config_path.empty() ? RunConfig{} : load_run_config(config_path);
      for (const auto& o : overrides) apply_override(config, o);
      return config;
    };
    if (sub == preprocess) {
      auto r = cmd_preprocess(load());
      for (const auto& [split, s] : r.splits) out << split << ": " << s.kept << " of " << s.input << " pairs kept\n";
      out << "vocabulary: " << r.input_vocab << " input, " << r.output_vocab << " output\n";
    } else if (sub == train) {
      auto r = cmd_train(load(), &out);
      out << "best checkpoint: " << r.best_checkpoint << '\n';
    } else if (sub == summarize) {
      cmd_summarize(load(), sum_args);
    } else if (sub == evaluate) {
      cmd_evaluate(eval_args, out);
    } else if (sub == analyze) {
      cmd_analyze_relations(analyze_args, out);
    } else if (sub == toy) {
      cmd_generate_toy(toy_args);
    } else if (sub == show) {
      out << format_run_config(load());
    }
  } catch (const CommandError& e) {
    print_error(err, command, e.kind(), e.what());
    return 1;
  } catch (const ConfigError& e) {
    print_error(err, command, "config", e.what());
    return 1;
  } catch (const std::exception& e) {
    print_error(err, command, "internal", e.what());
    return 1;
  }
  return 0;
}

}  // namespace structsum::cli
