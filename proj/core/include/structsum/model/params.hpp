#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "structsum/autodiff/parameter.hpp"
#include "structsum/corpus/vocabulary.hpp"
#include "structsum/model/config.hpp"

namespace structsum::model {

struct ParamSpec {
  std::string name;
  int rows;
  int cols;
};

// Every parameter the architecture owns, with shapes derived from the
// config. Architectures omit the groups they do not use.
std::vector<ParamSpec> parameter_specs(const ModelConfig& config);

// Allocates zero-valued parameters per parameter_specs().
ad::ParameterSet allocate_parameters(const ModelConfig& config);

// Gaussian Xavier init (sigma = sqrt(2 / (fan_in + fan_out))), zero biases,
// LSTM forget-gate biases at 1, and the raw epsilon set so softplus gives 1.
void initialize_parameters(ad::ParameterSet& params, const ModelConfig& config, std::uint64_t seed);

// Empty when every expected parameter is present with the expected shape
// and nothing else is present; otherwise one message per problem.
std::vector<std::string> shape_audit(const ModelConfig& config, const ad::ParameterSet& params);

// Overwrites embedding rows with vectors from a GloVe-style text file
// ("word v1 v2 ..."). Returns the number of rows replaced.
std::size_t load_pretrained_embeddings(ad::ParameterSet& params, const ModelConfig& config,
                                       const corpus::Vocabulary& vocab, const std::string& path);

// Raw value whose softplus is `epsilon`.
double inverse_softplus(double epsilon);

}  // namespace structsum::model
