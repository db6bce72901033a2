#include "structsum/training/trainer.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "structsum/model/checkpoint.hpp"
#include "structsum/training/batching.hpp"
#include "structsum/training/loss.hpp"
#include "structsum/training/optimizer.hpp"

namespace structsum::training {
namespace {

std::string pair_key(const corpus::EncodedPair& p) {
  return corpus::join_tokens(p.src_surface) + "\t" + corpus::join_tokens(p.tgt_surface);
}

void check_disjoint(std::span<const corpus::EncodedPair> train_set, std::span<const corpus::EncodedPair> valid_set) {
  std::set<std::string> seen;
  for (const auto& p : train_set) seen.insert(pair_key(p));
  for (std::size_t k = 0; k < valid_set.size(); ++k) {
    if (seen.count(pair_key(valid_set[k])) != 0) {
      throw std::invalid_argument("validation instance " + std::to_string(k) + " also occurs in the training set");
    }
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

EvalSummary evaluate_loss(model::Summarizer& model, const corpus::Vocabulary& vocab,
                          std::span<const corpus::EncodedPair> data, const TrainConfig& config) {
  EvalSummary out;
  if (data.empty()) return out;
  double nll = 0.0, omega = 0.0;
  auto batches = make_batches(data, config.batch_size);
  for (const auto& batch : batches) {
    ad::Graph g;
    auto r = step_loss(g, model, vocab, data, batch, config.coverage_lambda, false);
    nll += r.loss.scalar() * r.tokens;
    omega += r.omega.scalar();
    out.tokens += r.tokens;
  }
  out.loss = nll / out.tokens;
  out.omega = omega / static_cast<double>(batches.size());
  return out;
}

TrainResult train(model::Summarizer& model, const corpus::Vocabulary& vocab,
                  std::span<const corpus::EncodedPair> train_set, std::span<const corpus::EncodedPair> valid_set,
                  const TrainConfig& config, const TrainHooks& hooks) {
  config.validate();
  if (train_set.empty()) throw std::invalid_argument("train: empty training set");
  check_disjoint(train_set, valid_set);
  if (!hooks.checkpoint_dir.empty()) std::filesystem::create_directories(hooks.checkpoint_dir);

  auto batches = make_batches(train_set, config.batch_size);
  TrainResult result;
  AdamState adam;
  long global_step = 0;
  int epoch = 0;

  auto run_epoch = [&](int stage) {
    ++epoch;
    const bool coverage = stage == 2;
    double nll = 0.0, omega = 0.0;
    int tokens = 0;
    for (auto b : epoch_order(batches.size(), config.seed, epoch)) {
      auto start = std::chrono::steady_clock::now();
      model.params().zero_grad();
      ad::Graph g;
      auto r = step_loss(g, model, vocab, train_set, batches[b], config.coverage_lambda, coverage);
      if (!std::isfinite(r.objective.scalar())) {
        throw TrainingError("non-finite training objective at epoch " + std::to_string(epoch) + ", step " +
                            std::to_string(global_step + 1));
      }
      g.backward(r.objective);
      adam_update(model.params(), config, adam);
      ++global_step;
      nll += r.loss.scalar() * r.tokens;
      omega += r.omega.scalar();
      tokens += r.tokens;
      double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (hooks.log != nullptr) {
        *hooks.log << epoch << '\t' << global_step << '\t' << r.loss.scalar() << '\t' << r.omega.scalar() << '\t'
                   << seconds << '\n';
      }
    }
    EpochRecord rec;
    rec.stage = stage;
    rec.epoch = epoch;
    rec.train_loss = nll / tokens;
    rec.train_omega = omega / static_cast<double>(batches.size());
    if (!valid_set.empty()) {
      auto v = evaluate_loss(model, vocab, valid_set, config);
      if (!std::isfinite(v.loss) || !std::isfinite(v.omega)) {
        std::ostringstream os;
        os << "validation loss is not finite at epoch " << epoch << " (stage " << stage << "): L=" << v.loss
           << " omega=" << v.omega << " over " << v.tokens << " tokens; last training loss " << rec.train_loss;
        throw TrainingError(os.str());
      }
      rec.valid_loss = v.loss;
      rec.valid_omega = v.omega;
    }
    if (!hooks.checkpoint_dir.empty()) {
      std::ostringstream name;
      name << "epoch-" << std::setw(3) << std::setfill('0') << epoch << ".ckpt";
      rec.checkpoint = (std::filesystem::path(hooks.checkpoint_dir) / name.str()).string();
      std::map<std::string, std::string> meta(hooks.metadata.begin(), hooks.metadata.end());
      meta["epoch"] = std::to_string(epoch);
      meta["stage"] = std::to_string(stage);
      meta["train_loss"] = format_double(rec.train_loss);
      meta["valid_loss"] = format_double(rec.valid_loss);
      meta["valid_omega"] = format_double(rec.valid_omega);
      model::save_checkpoint(rec.checkpoint, model.config(), model.params(), meta);
    }
    result.history.push_back(rec);
    if (hooks.on_epoch) hooks.on_epoch(rec);
    return rec;
  };

  // Stage 1.
  ad::ParameterSet best_params = model.params();
  double best_valid = std::numeric_limits<double>::infinity();
  int since_best = 0;
  for (int e = 0; e < config.max_epochs; ++e) {
    auto rec = run_epoch(1);
    const int idx = static_cast<int>(result.history.size()) - 1;
    if (valid_set.empty() || rec.valid_loss < best_valid) {
      best_valid = rec.valid_loss;
      best_params.copy_values_from(model.params());
      result.best_stage1 = idx;
      since_best = 0;
    } else if (++since_best >= config.patience) {
      result.early_stopped = true;
      break;
    }
    if (config.target_train_loss > 0 && rec.train_loss < config.target_train_loss) break;
  }
  model.params().copy_values_from(best_params);
  result.stage1_params = best_params;
  result.best = result.best_stage1;

  // Stage 2: only its own epochs compete.
  if (config.coverage_epochs > 0) {
    adam = AdamState{};
    double best_objective = std::numeric_limits<double>::infinity();
    for (int e = 0; e < config.coverage_epochs; ++e) {
      auto rec = run_epoch(2);
      double objective = rec.valid_loss + rec.valid_omega;
      if (valid_set.empty() || objective < best_objective) {
        best_objective = objective;
        best_params.copy_values_from(model.params());
        result.best = static_cast<int>(result.history.size()) - 1;
      }
    }
    model.params().copy_values_from(best_params);
  }
  return result;
}

}  // namespace structsum::training
