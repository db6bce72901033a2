#include "structsum/model/checkpoint.hpp"

#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "structsum/model/params.hpp"

namespace structsum::model {
namespace {

constexpr const char* kMagic = "structsum-checkpoint 1";

void put_le(std::ostream& out, double v) {
  std::uint64_t bits = std::bit_cast<std::uint64_t>(v);
  char bytes[8];
  for (int k = 0; k < 8; ++k) bytes[k] = static_cast<char>((bits >> (8 * k)) & 0xff);
  out.write(bytes, 8);
}

double get_le(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw std::runtime_error("checkpoint: truncated parameter data");
  std::uint64_t bits = 0;
  for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
  return std::bit_cast<double>(bits);
}

std::map<std::string, std::string> config_fields(const ModelConfig& c) {
  std::map<std::string, std::string> f;
  f["architecture"] = std::string(architecture_name(c.architecture));
  f["word_dim"] = std::to_string(c.word_dim);
  f["struct_dim"] = std::to_string(c.struct_dim);
  f["hidden_dim"] = std::to_string(c.hidden_dim);
  f["attention_dim"] = std::to_string(c.attention_dim);
  f["v_in"] = std::to_string(c.v_in);
  f["v_out"] = std::to_string(c.v_out);
  f["max_src_len"] = std::to_string(c.max_src_len);
  f["max_tgt_len"] = std::to_string(c.max_tgt_len);
  f["share_embeddings"] = c.share_embeddings ? "1" : "0";
  for (auto cat : corpus::kLabelCategories) {
    f["label_size." + std::string(corpus::category_name(cat))] =
        std::to_string(c.label_sizes[static_cast<std::size_t>(cat)]);
  }
  return f;
}

ModelConfig config_from_fields(const std::map<std::string, std::string>& f) {
  auto get = [&](const std::string& k) {
    auto it = f.find(k);
    if (it == f.end()) throw std::runtime_error("checkpoint: missing config field '" + k + "'");
    return it->second;
  };
  ModelConfig c;
  c.architecture = parse_architecture(get("architecture"));
  c.word_dim = std::stoi(get("word_dim"));
  c.struct_dim = std::stoi(get("struct_dim"));
  c.hidden_dim = std::stoi(get("hidden_dim"));
  c.attention_dim = std::stoi(get("attention_dim"));
  c.v_in = std::stoi(get("v_in"));
  c.v_out = std::stoi(get("v_out"));
  c.max_src_len = std::stoi(get("max_src_len"));
  c.max_tgt_len = std::stoi(get("max_tgt_len"));
  c.share_embeddings = get("share_embeddings") == "1";
  for (auto cat : corpus::kLabelCategories) {
    c.label_sizes[static_cast<std::size_t>(cat)] = std::stoi(get("label_size." + std::string(corpus::category_name(cat))));
  }
  return c;
}

}  // namespace

void write_checkpoint(std::ostream& out, const ModelConfig& config, const ad::ParameterSet& params,
                      const std::map<std::string, std::string>& metadata) {
  out << kMagic << '\n';
  for (const auto& [k, v] : config_fields(config)) out << "config." << k << '=' << v << '\n';
  for (const auto& [k, v] : metadata) {
    if (k.find_first_of("=\n") != std::string::npos || v.find('\n') != std::string::npos) {
      throw std::invalid_argument("checkpoint: metadata key/value contains a separator");
    }
    out << "meta." << k << '=' << v << '\n';
  }
  out << "params " << params.size() << '\n';
  for (const auto& p : params) {
    out << p.name << ' ' << p.value.rows() << ' ' << p.value.cols() << '\n';
    for (ad::Index r = 0; r < p.value.rows(); ++r) {
      for (ad::Index c = 0; c < p.value.cols(); ++c) put_le(out, p.value(r, c));
    }
  }
  if (!out) throw std::runtime_error("checkpoint: write failed");
}

void save_checkpoint(const std::string& path, const ModelConfig& config, const ad::ParameterSet& params,
                     const std::map<std::string, std::string>& metadata) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write checkpoint '" + path + "'");
  write_checkpoint(out, config, params, metadata);
}

Checkpoint read_checkpoint(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kMagic) throw std::runtime_error("checkpoint: bad magic line");
  std::map<std::string, std::string> config;
  Checkpoint ck;
  std::size_t count = 0;
  while (std::getline(in, line)) {
    if (line.rfind("params ", 0) == 0) {
      count = std::stoul(line.substr(7));
      break;
    }
    auto eq = line.find('=');
    if (eq == std::string::npos) throw std::runtime_error("checkpoint: malformed header line '" + line + "'");
    std::string key = line.substr(0, eq), value = line.substr(eq + 1);
    if (key.rfind("config.", 0) == 0) {
      config[key.substr(7)] = value;
    } else if (key.rfind("meta.", 0) == 0) {
      ck.metadata[key.substr(5)] = value;
    } else {
      throw std::runtime_error("checkpoint: unknown header key '" + key + "'");
    }
  }
  ck.config = config_from_fields(config);
  for (std::size_t k = 0; k < count; ++k) {
    if (!std::getline(in, line)) throw std::runtime_error("checkpoint: missing parameter header");
    std::istringstream hs(line);
    std::string name;
    ad::Index rows = 0, cols = 0;
    if (!(hs >> name >> rows >> cols)) throw std::runtime_error("checkpoint: malformed parameter header '" + line + "'");
    auto& p = ck.params.add(name, rows, cols);
    for (ad::Index r = 0; r < rows; ++r) {
      for (ad::Index c = 0; c < cols; ++c) p.value(r, c) = get_le(in);
    }
  }
  auto problems = shape_audit(ck.config, ck.params);
  if (!problems.empty()) throw std::runtime_error("checkpoint: " + problems.front());
  return ck;
}

Checkpoint load_checkpoint(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open checkpoint '" + path + "'");
  return read_checkpoint(in);
}

}  // namespace structsum::model
