#include "structsum/decoding/search.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <stdexcept>
#include <utility>

namespace structsum::decoding {

DecodeMode parse_decode_mode(std::string_view name) {
  if (name == "greedy") return DecodeMode::Greedy;
  if (name == "beam") return DecodeMode::Beam;
  throw std::invalid_argument("unknown decode mode '" + std::string(name) + "' (expected greedy or beam)");
}

void DecodeConfig::validate() const {
  if (beam_width < 1) throw std::invalid_argument("decode config: beam_width must be at least 1");
  if (!(eta >= 0)) throw std::invalid_argument("decode config: eta must be non-negative");
  if (max_length < 1) throw std::invalid_argument("decode config: max_length must be at least 1");
}

double Hypothesis::score(double eta, std::size_t source_length) const {
  if (source_length == 0) return log_prob;
  return log_prob + eta * bigrams / static_cast<double>(source_length);
}

int bigram_overlap(std::span<const std::string> candidate, std::span<const std::string> source) {
  if (candidate.size() < 2 || source.size() < 2) return 0;
  std::map<std::pair<std::string_view, std::string_view>, int> available;
  for (std::size_t k = 0; k + 1 < source.size(); ++k) ++available[{source[k], source[k + 1]}];
  int matched = 0;
  for (std::size_t k = 0; k + 1 < candidate.size(); ++k) {
    auto it = available.find({candidate[k], candidate[k + 1]});
    if (it != available.end() && it->second > 0) {
      --it->second;
      ++matched;
    }
  }
  return matched;
}

Hypothesis greedy_decode(StepModel& model, int max_length) {
  Hypothesis h;
  h.snapshot = model.start();
  for (int t = 0; t < max_length; ++t) {
    auto lp = model.log_probs(*h.snapshot);
    auto best = static_cast<int>(std::max_element(lp.begin(), lp.end()) - lp.begin());
    h.log_prob += lp[static_cast<std::size_t>(best)];
    if (best == model.eos()) {
      h.finished = true;
      break;
    }
    h.tokens.push_back(best);
    h.words.push_back(model.surface(best));
    h.snapshot = model.advance(h.snapshot, best);
  }
  h.bigrams = bigram_overlap(h.words, model.source());
  return h;
}

namespace {

struct Candidate {
  double score;
  std::size_t parent;
  int token;
};

bool better_final(const Hypothesis& a, const Hypothesis& b, double eta, std::size_t S) {
  double sa = a.score(eta, S), sb = b.score(eta, S);
  if (sa != sb) return sa > sb;
  if (a.words.size() != b.words.size()) return a.words.size() < b.words.size();
  return a.words < b.words;
}

}  // namespace

Hypothesis beam_search(StepModel& model, int beam_width, double eta, int max_length) {
  if (beam_width < 1) throw std::invalid_argument("beam_search: beam width must be at least 1");
  const auto& source = model.source();
  const std::size_t S = source.size();
  const auto K = static_cast<std::size_t>(beam_width);

  std::vector<Hypothesis> live(1);
  live[0].snapshot = model.start();
  std::vector<Hypothesis> finished;
  std::vector<std::string> surfaces;

  for (int t = 0; t < max_length && !live.empty() && finished.size() < K; ++t) {
    std::vector<Candidate> cands;
    std::vector<std::vector<double>> dists(live.size());
    for (std::size_t p = 0; p < live.size(); ++p) {
      dists[p] = model.log_probs(*live[p].snapshot);
      if (surfaces.size() < dists[p].size()) {
        for (std::size_t w = surfaces.size(); w < dists[p].size(); ++w) surfaces.push_back(model.surface(static_cast<int>(w)));
      }
      const auto& h = live[p];
      // Words that would add one more clipped source bigram after h.
      std::set<std::string_view> rewarded;
      if (!h.words.empty()) {
        const std::string& last = h.words.back();
        for (std::size_t k = 0; k + 1 < S; ++k) {
          if (source[k] != last) continue;
          const std::string& next = source[k + 1];
          int in_source = 0, in_hyp = 0;
          for (std::size_t j = 0; j + 1 < S; ++j) in_source += source[j] == last && source[j + 1] == next;
          for (std::size_t j = 0; j + 1 < h.words.size(); ++j) in_hyp += h.words[j] == last && h.words[j + 1] == next;
          if (in_hyp < in_source) rewarded.insert(next);
        }
      }
      for (std::size_t w = 0; w < dists[p].size(); ++w) {
        double lp = dists[p][w];
        if (std::isinf(lp) && lp < 0) continue;
        int b = h.bigrams;
        if (static_cast<int>(w) != model.eos() && rewarded.count(surfaces[w]) != 0) ++b;
        double score = h.log_prob + lp + (S > 0 ? eta * b / static_cast<double>(S) : 0.0);
        cands.push_back({score, p, static_cast<int>(w)});
      }
    }
    const std::size_t keep = std::min(cands.size(), K - finished.size());
    std::partial_sort(cands.begin(), cands.begin() + static_cast<std::ptrdiff_t>(keep), cands.end(),
                      [](const Candidate& a, const Candidate& b) {
                        if (a.score != b.score) return a.score > b.score;
                        if (a.parent != b.parent) return a.parent < b.parent;
                        return a.token < b.token;
                      });
    std::vector<Hypothesis> next;
    for (std::size_t k = 0; k < keep; ++k) {
      const auto& c = cands[k];
      const auto& parent = live[c.parent];
      Hypothesis h;
      h.tokens = parent.tokens;
      h.words = parent.words;
      h.log_prob = parent.log_prob + dists[c.parent][static_cast<std::size_t>(c.token)];
      if (c.token == model.eos()) {
        h.bigrams = parent.bigrams;
        h.snapshot = parent.snapshot;
        h.finished = true;
        finished.push_back(std::move(h));
        continue;
      }
      h.tokens.push_back(c.token);
      h.words.push_back(model.surface(c.token));
      h.bigrams = bigram_overlap(h.words, source);
      h.snapshot = model.advance(parent.snapshot, c.token);
      next.push_back(std::move(h));
    }
    live = std::move(next);
  }

  std::vector<Hypothesis> pool = std::move(finished);
  for (auto& h : live) pool.push_back(std::move(h));
  if (pool.empty()) return Hypothesis{};
  auto best = std::min_element(pool.begin(), pool.end(),
                               [&](const Hypothesis& a, const Hypothesis& b) { return better_final(a, b, eta, S); });
  return *best;
}

Hypothesis decode(StepModel& model, const DecodeConfig& config) {
  config.validate();
  if (config.mode == DecodeMode::Greedy) return greedy_decode(model, config.max_length);
  return beam_search(model, config.beam_width, config.eta, config.max_length);
}

}  // namespace structsum::decoding
