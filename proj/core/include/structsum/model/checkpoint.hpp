#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>

#include "structsum/autodiff/parameter.hpp"
#include "structsum/model/config.hpp"

namespace structsum::model {

// Checkpoint layout:
//
//   structsum-checkpoint 1\n
//   key=value\n ...            ModelConfig and metadata, one per line
//   params <count>\n
//   then per parameter:  <name> <rows> <cols>\n  followed by rows*cols
//   little-endian IEEE-754 doubles in row-major order.
//
// Reloading reproduces every parameter bit for bit.
struct Checkpoint {
  ModelConfig config;
  ad::ParameterSet params;
  // Free-form metadata, e.g. "vocab_hash", "epoch", "valid_loss".
  std::map<std::string, std::string> metadata;
};

void write_checkpoint(std::ostream& out, const ModelConfig& config, const ad::ParameterSet& params,
                      const std::map<std::string, std::string>& metadata = {});
void save_checkpoint(const std::string& path, const ModelConfig& config, const ad::ParameterSet& params,
                     const std::map<std::string, std::string>& metadata = {});

Checkpoint read_checkpoint(std::istream& in);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace structsum::model
