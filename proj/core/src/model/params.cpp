#include "structsum/model/params.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace structsum::model {
namespace {

void add_lstm(std::vector<ParamSpec>& specs, const std::string& prefix, int input, int hidden) {
  specs.push_back({prefix + ".W", input + hidden, 4 * hidden});
  specs.push_back({prefix + ".b", 1, 4 * hidden});
}

bool is_bias(const std::string& name) {
  auto dot = name.rfind('.');
  std::string leaf = dot == std::string::npos ? name : name.substr(dot + 1);
  return leaf.size() >= 1 && leaf[0] == 'b';
}

}  // namespace

std::vector<ParamSpec> parameter_specs(const ModelConfig& c) {
  c.validate();
  const int h = c.hidden_dim;
  const int a = c.attention_width();
  const int enc = c.encoder_state_dim();
  std::vector<ParamSpec> s;
  s.push_back({"embedding", c.v_in, c.word_dim});
  if (!c.share_embeddings) s.push_back({"tgt_embedding", c.v_in, c.word_dim});
  if (uses_structure(c.architecture)) {
    for (auto cat : corpus::kLabelCategories) {
      s.push_back({"struct." + std::string(corpus::category_name(cat)),
                   c.label_sizes[static_cast<std::size_t>(cat)], c.struct_dim});
    }
  }
  add_lstm(s, "enc.l1.fwd", c.encoder_input_dim(), h);
  add_lstm(s, "enc.l1.bwd", c.encoder_input_dim(), h);
  add_lstm(s, "enc.l2.fwd", 2 * h, h);
  add_lstm(s, "enc.l2.bwd", 2 * h, h);
  add_lstm(s, "dec", c.word_dim, h);
  s.push_back({"bridge.W", enc, h});
  s.push_back({"bridge.b", 1, h});
  s.push_back({"attn.W", h + enc, a});
  s.push_back({"attn.b", 1, a});
  s.push_back({"attn.v", 1, a});
  s.push_back({"out.Wh", h + enc, h});
  s.push_back({"out.bh", 1, h});
  s.push_back({"out.Wy", h, c.v_out});
  s.push_back({"out.by", 1, c.v_out});
  s.push_back({"switch.W", h + enc + c.word_dim, 1});
  s.push_back({"switch.b", 1, 1});
  if (uses_two_way(c.architecture)) {
    s.push_back({"sattn.W", c.structural_input_dim() + h, a});
    s.push_back({"sattn.b", 1, a});
    s.push_back({"sattn.u", 1, a});
    s.push_back({"epsilon", 1, 1});
  }
  return s;
}

ad::ParameterSet allocate_parameters(const ModelConfig& config) {
  ad::ParameterSet p;
  for (const auto& spec : parameter_specs(config)) p.add(spec.name, spec.rows, spec.cols);
  return p;
}

double inverse_softplus(double epsilon) { return std::log(std::expm1(epsilon)); }

void initialize_parameters(ad::ParameterSet& params, const ModelConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (auto& p : params) {
    p.grad.setZero();
    if (p.name == "epsilon") {
      p.value.setConstant(inverse_softplus(1.0));
      continue;
    }
    if (is_bias(p.name)) {
      p.value.setZero();
      // Gate order is [input, forget, cell, output].
      if (p.name.rfind("enc.", 0) == 0 || p.name.rfind("dec.", 0) == 0) {
        p.value.middleCols(config.hidden_dim, config.hidden_dim).setConstant(1.0);
      }
      continue;
    }
    // Row vectors (v, u) score a hidden layer into one unit.
    double fan_in = static_cast<double>(p.value.rows() == 1 ? p.value.cols() : p.value.rows());
    double fan_out = static_cast<double>(p.value.rows() == 1 ? 1 : p.value.cols());
    std::normal_distribution<double> dist(0.0, std::sqrt(2.0 / (fan_in + fan_out)));
    for (ad::Index i = 0; i < p.value.size(); ++i) p.value(i) = dist(rng);
  }
}

std::vector<std::string> shape_audit(const ModelConfig& config, const ad::ParameterSet& params) {
  std::vector<std::string> problems;
  std::set<std::string> expected;
  for (const auto& spec : parameter_specs(config)) {
    expected.insert(spec.name);
    const auto* p = params.find(spec.name);
    if (p == nullptr) {
      problems.push_back("missing parameter " + spec.name);
    } else if (p->value.rows() != spec.rows || p->value.cols() != spec.cols) {
      problems.push_back(spec.name + " has shape " + ad::to_string(p->shape()) + ", expected " +
                         ad::to_string({spec.rows, spec.cols}));
    }
  }
  for (const auto& p : params) {
    if (!expected.count(p.name)) {
      problems.push_back("unexpected parameter " + p.name + " for " + std::string(architecture_name(config.architecture)));
    }
  }
  return problems;
}

std::size_t load_pretrained_embeddings(ad::ParameterSet& params, const ModelConfig& config,
                                       const corpus::Vocabulary& vocab, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embedding file '" + path + "'");
  auto& table = params.at("embedding").value;
  std::size_t replaced = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || !vocab.words().contains(word)) continue;
    std::vector<double> vec;
    double x = 0.0;
    while (ls >> x) vec.push_back(x);
    if (static_cast<int>(vec.size()) != config.word_dim) {
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected " +
                               std::to_string(config.word_dim) + " values, found " + std::to_string(vec.size()));
    }
    int row = vocab.words().id(word);
    for (int k = 0; k < config.word_dim; ++k) table(row, k) = vec[static_cast<std::size_t>(k)];
    ++replaced;
  }
  return replaced;
}

}  // namespace structsum::model
