#include "structsum/cli/run_config.hpp"

#include <charconv>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <sstream>

namespace structsum::cli {
namespace {

namespace fs = std::filesystem;

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T out{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw ConfigError("'" + key + "': expected a number, got '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("'" + key + "': expected true or false, got '" + value + "'");
}

std::string fmt(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  std::string s = os.str();
  return s;
}

std::string resolve(const std::string& value, const std::string& base_dir) {
  if (value.empty() || base_dir.empty() || fs::path(value).is_absolute()) return value;
  return (fs::path(base_dir) / value).lexically_normal().string();
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;  // (config, value, base_dir)
  std::function<std::string(const RunConfig&)> get;
};

template <typename T, typename Member>
Field number(Member member) {
  return {[member](RunConfig& c, const std::string& v, const std::string&) { member(c) = parse_number<T>("", v); },
          [member](const RunConfig& c) {
            if constexpr (std::is_floating_point_v<T>) {
              return fmt(member(const_cast<RunConfig&>(c)));
            } else {
              return std::to_string(member(const_cast<RunConfig&>(c)));
            }
          }};
}

template <typename Member>
Field flag(Member member) {
  return {[member](RunConfig& c, const std::string& v, const std::string&) { member(c) = parse_bool("", v); },
          [member](const RunConfig& c) { return member(const_cast<RunConfig&>(c)) ? std::string("true") : "false"; }};
}

template <typename Member>
Field path(Member member) {
  return {[member](RunConfig& c, const std::string& v, const std::string& base) { member(c) = resolve(v, base); },
          [member](const RunConfig& c) { return member(const_cast<RunConfig&>(c)); }};
}

#define STRUCTSUM_MEMBER(expr) [](RunConfig& c) -> auto& { return expr; }

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = [] {
    std::vector<std::pair<std::string, Field>> f;
    f.emplace_back("paths.train_source", path(STRUCTSUM_MEMBER(c.train.source)));
    f.emplace_back("paths.train_summary", path(STRUCTSUM_MEMBER(c.train.summary)));
    f.emplace_back("paths.train_parse", path(STRUCTSUM_MEMBER(c.train.parse)));
    f.emplace_back("paths.valid_source", path(STRUCTSUM_MEMBER(c.valid.source)));
    f.emplace_back("paths.valid_summary", path(STRUCTSUM_MEMBER(c.valid.summary)));
    f.emplace_back("paths.valid_parse", path(STRUCTSUM_MEMBER(c.valid.parse)));
    f.emplace_back("paths.test_source", path(STRUCTSUM_MEMBER(c.test.source)));
    f.emplace_back("paths.test_summary", path(STRUCTSUM_MEMBER(c.test.summary)));
    f.emplace_back("paths.test_parse", path(STRUCTSUM_MEMBER(c.test.parse)));
    f.emplace_back("paths.embeddings", path(STRUCTSUM_MEMBER(c.embeddings)));
    f.emplace_back("paths.output_dir", path(STRUCTSUM_MEMBER(c.output_dir)));

    f.emplace_back("data.v_in", number<int>(STRUCTSUM_MEMBER(c.v_in)));
    f.emplace_back("data.v_out", number<int>(STRUCTSUM_MEMBER(c.v_out)));
    f.emplace_back("data.shard_size", number<std::size_t>(STRUCTSUM_MEMBER(c.shard_size)));
    f.emplace_back("data.pos_column",
                   Field{[](RunConfig& c, const std::string& v, const std::string&) {
                           if (v == "xpos") {
                             c.pos_column = corpus::PosColumn::Xpos;
                           } else if (v == "upos") {
                             c.pos_column = corpus::PosColumn::Upos;
                           } else {
                             throw ConfigError("expected xpos or upos, got '" + v + "'");
                           }
                         },
                         [](const RunConfig& c) {
                           return std::string(c.pos_column == corpus::PosColumn::Xpos ? "xpos" : "upos");
                         }});

    f.emplace_back("model.architecture",
                   Field{[](RunConfig& c, const std::string& v, const std::string&) {
                           try {
                             c.model.architecture = model::parse_architecture(v);
                           } catch (const std::invalid_argument& e) {
                             throw ConfigError(e.what());
                           }
                         },
                         [](const RunConfig& c) { return std::string(model::architecture_name(c.model.architecture)); }});
    f.emplace_back("model.word_dim", number<int>(STRUCTSUM_MEMBER(c.model.word_dim)));
    f.emplace_back("model.struct_dim", number<int>(STRUCTSUM_MEMBER(c.model.struct_dim)));
    f.emplace_back("model.hidden_dim", number<int>(STRUCTSUM_MEMBER(c.model.hidden_dim)));
    f.emplace_back("model.attention_dim", number<int>(STRUCTSUM_MEMBER(c.model.attention_dim)));
    f.emplace_back("model.max_src_len", number<int>(STRUCTSUM_MEMBER(c.model.max_src_len)));
    f.emplace_back("model.max_tgt_len", number<int>(STRUCTSUM_MEMBER(c.model.max_tgt_len)));
    f.emplace_back("model.share_embeddings", flag(STRUCTSUM_MEMBER(c.model.share_embeddings)));
    f.emplace_back("model.copy", flag(STRUCTSUM_MEMBER(c.copy)));

    f.emplace_back("train.learning_rate", number<double>(STRUCTSUM_MEMBER(c.train_config.learning_rate)));
    f.emplace_back("train.coverage_lambda", number<double>(STRUCTSUM_MEMBER(c.train_config.coverage_lambda)));
    f.emplace_back("train.clip", number<double>(STRUCTSUM_MEMBER(c.train_config.clip)));
    f.emplace_back("train.batch_size", number<int>(STRUCTSUM_MEMBER(c.train_config.batch_size)));
    f.emplace_back("train.max_epochs", number<int>(STRUCTSUM_MEMBER(c.train_config.max_epochs)));
    f.emplace_back("train.coverage_epochs", number<int>(STRUCTSUM_MEMBER(c.train_config.coverage_epochs)));
    f.emplace_back("train.patience", number<int>(STRUCTSUM_MEMBER(c.train_config.patience)));
    f.emplace_back("train.adam_beta1", number<double>(STRUCTSUM_MEMBER(c.train_config.adam_beta1)));
    f.emplace_back("train.adam_beta2", number<double>(STRUCTSUM_MEMBER(c.train_config.adam_beta2)));
    f.emplace_back("train.adam_eps", number<double>(STRUCTSUM_MEMBER(c.train_config.adam_eps)));
    f.emplace_back("train.target_train_loss", number<double>(STRUCTSUM_MEMBER(c.train_config.target_train_loss)));

    f.emplace_back("decode.mode",
                   Field{[](RunConfig& c, const std::string& v, const std::string&) {
                           try {
                             c.decode.mode = decoding::parse_decode_mode(v);
                           } catch (const std::invalid_argument& e) {
                             throw ConfigError(e.what());
                           }
                         },
                         [](const RunConfig& c) {
                           return std::string(c.decode.mode == decoding::DecodeMode::Greedy ? "greedy" : "beam");
                         }});
    f.emplace_back("decode.beam_width", number<int>(STRUCTSUM_MEMBER(c.decode.beam_width)));
    f.emplace_back("decode.eta", number<double>(STRUCTSUM_MEMBER(c.decode.eta)));
    f.emplace_back("decode.max_length", number<int>(STRUCTSUM_MEMBER(c.decode.max_length)));

    f.emplace_back("prune.enabled", flag(STRUCTSUM_MEMBER(c.prune.enabled)));
    f.emplace_back("prune.min_source_length", number<std::size_t>(STRUCTSUM_MEMBER(c.prune.min_source_length)));
    f.emplace_back("prune.max_source_length", number<std::size_t>(STRUCTSUM_MEMBER(c.prune.max_source_length)));
    f.emplace_back("prune.min_summary_length", number<std::size_t>(STRUCTSUM_MEMBER(c.prune.min_summary_length)));
    f.emplace_back("prune.max_summary_length", number<std::size_t>(STRUCTSUM_MEMBER(c.prune.max_summary_length)));
    f.emplace_back("prune.min_overlap", number<std::size_t>(STRUCTSUM_MEMBER(c.prune.min_overlap)));

    f.emplace_back("run.seed", number<std::uint64_t>(STRUCTSUM_MEMBER(c.seed)));
    return f;
  }();
  return table;
}

#undef STRUCTSUM_MEMBER

const Field& field(const std::string& key) {
  for (const auto& [name, f] : fields()) {
    if (name == key) return f;
  }
  throw ConfigError("unknown key '" + key + "'");
}

void assign(RunConfig& config, const std::string& key, const std::string& value, const std::string& base_dir) {
  const auto& f = field(key);
  try {
    f.set(config, value, base_dir);
  } catch (const ConfigError& e) {
    std::string msg = e.what();
    if (msg.rfind("'': ", 0) == 0) msg = msg.substr(4);
    throw ConfigError("'" + key + "': " + msg);
  }
  if (key == "run.seed") config.train_config.seed = config.seed;
}

}  // namespace

RunConfig::RunConfig() {
  model.word_dim = 100;
  model.struct_dim = 16;
  model.hidden_dim = 256;
  train_config.coverage_epochs = 5;
}

std::vector<std::pair<std::string, std::string>> default_entries() {
  RunConfig c;
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [name, f] : fields()) out.emplace_back(name, f.get(c));
  return out;
}

RunConfig parse_run_config(const std::string& text, const std::string& base_dir) {
  RunConfig config;
  std::istringstream in(text);
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) throw ConfigError("line " + std::to_string(number) + ": expected key = value");
    try {
      assign(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)), base_dir);
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(number) + ": " + e.what());
    }
  }
  return config;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str(), fs::path(path).parent_path().string());
}

void apply_override(RunConfig& config, const std::string& assignment, const std::string& base_dir) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + assignment + "': expected key=value");
  assign(config, trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)), base_dir);
}

std::string format_run_config(const RunConfig& config) {
  std::ostringstream out;
  std::string section;
  for (const auto& [name, f] : fields()) {
    std::string s = name.substr(0, name.find('.'));
    if (s != section) {
      if (!section.empty()) out << '\n';
      section = s;
    }
    out << name << " = " << f.get(config) << '\n';
  }
  return out.str();
}

}  // namespace structsum::cli
