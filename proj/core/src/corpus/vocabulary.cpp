#include "structsum/corpus/vocabulary.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace structsum::corpus {
namespace {

// Counts tokens, remembering first-occurrence order for tie-breaking.
class FrequencyCounter {
 public:
  void add(const std::string& token) {
    auto [it, inserted] = index_.try_emplace(token, entries_.size());
    if (inserted) entries_.push_back({token, 0});
    ++entries_[it->second].count;
  }

  std::vector<std::string> ranked(std::size_t limit) const {
    std::vector<Entry> sorted = entries_;
    std::stable_sort(sorted.begin(), sorted.end(),
                     [](const Entry& a, const Entry& b) { return a.count > b.count; });
    std::vector<std::string> out;
    for (const auto& e : sorted) {
      if (out.size() >= limit) break;
      out.push_back(e.token);
    }
    return out;
  }

 private:
  struct Entry {
    std::string token;
    std::size_t count;
  };
  std::vector<Entry> entries_;
  std::unordered_map<std::string, std::size_t> index_;
};

bool is_reserved(const std::string& t) {
  return t == kPadToken || t == kUnkToken || t == kBosToken || t == kEosToken;
}

std::vector<std::string> read_lines(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open vocabulary file '" + path.string() + "'");
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) lines.push_back(line);
  return lines;
}

void write_lines(const std::filesystem::path& path, const std::vector<std::string>& lines) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write vocabulary file '" + path.string() + "'");
  for (const auto& l : lines) out << l << '\n';
}

void fnv(std::uint64_t& h, const std::string& s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  h ^= 0xff;
  h *= 1099511628211ULL;
}

}  // namespace

TokenMap::TokenMap(std::vector<std::string> ranked, int unk_id) : tokens_(std::move(ranked)), unk_id_(unk_id) {
  for (std::size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw std::invalid_argument("duplicate vocabulary entry '" + tokens_[i] + "'");
    }
  }
  if (unk_id_ < 0 || unk_id_ >= size()) throw std::invalid_argument("unknown-token index out of range");
}

int TokenMap::id(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? unk_id_ : it->second;
}

const std::string& TokenMap::token(int id) const {
  if (id < 0 || id >= size()) throw std::out_of_range("token id " + std::to_string(id) + " out of range");
  return tokens_[static_cast<std::size_t>(id)];
}

Vocabulary::Vocabulary(TokenMap words, int output_size, std::array<TokenMap, kNumLabelCategories> labels)
    : words_(std::move(words)), output_size_(output_size), labels_(std::move(labels)) {
  if (output_size_ < kNumReserved || output_size_ > words_.size()) {
    throw std::invalid_argument("output vocabulary size must lie in [reserved, input size]");
  }
}

int Vocabulary::output_id(const std::string& token) const {
  int id = words_.id(token);
  return id < output_size_ ? id : kUnkId;
}

bool Vocabulary::in_output(const std::string& token) const {
  return words_.contains(token) && words_.id(token) < output_size_;
}

std::uint64_t Vocabulary::hash() const {
  std::uint64_t h = 14695981039346656037ULL;
  fnv(h, std::to_string(output_size_));
  for (const auto& t : words_.tokens()) fnv(h, t);
  for (const auto& m : labels_) {
    fnv(h, "#");
    for (const auto& t : m.tokens()) fnv(h, t);
  }
  return h;
}

void Vocabulary::save(const std::string& dir) const {
  std::filesystem::create_directories(dir);
  write_lines(std::filesystem::path(dir) / "words.txt", words_.tokens());
  write_lines(std::filesystem::path(dir) / "output_size.txt", {std::to_string(output_size_)});
  for (auto c : kLabelCategories) {
    write_lines(std::filesystem::path(dir) / ("label." + std::string(category_name(c)) + ".txt"),
                labels(c).tokens());
  }
}

Vocabulary Vocabulary::load(const std::string& dir) {
  auto words = read_lines(std::filesystem::path(dir) / "words.txt");
  auto size_lines = read_lines(std::filesystem::path(dir) / "output_size.txt");
  if (size_lines.empty()) throw std::runtime_error("empty output_size.txt in '" + dir + "'");
  int output_size = std::stoi(size_lines[0]);
  std::array<TokenMap, kNumLabelCategories> labels;
  for (auto c : kLabelCategories) {
    labels[static_cast<std::size_t>(c)] = TokenMap(
        read_lines(std::filesystem::path(dir) / ("label." + std::string(category_name(c)) + ".txt")), kLabelUnkId);
  }
  return Vocabulary(TokenMap(std::move(words), kUnkId), output_size, std::move(labels));
}

Vocabulary build_vocabularies(std::span<const TrainingText> corpus, int v_in, int v_out) {
  if (corpus.empty()) throw std::invalid_argument("build_vocabularies: empty corpus");
  if (v_out > v_in) throw std::invalid_argument("build_vocabularies: output size exceeds input size");
  if (v_out < 0) throw std::invalid_argument("build_vocabularies: negative size");

  FrequencyCounter words;
  std::array<FrequencyCounter, kNumLabelCategories> labels;
  for (const auto& pair : corpus) {
    for (const auto& t : pair.source) {
      if (!is_reserved(t)) words.add(t);
    }
    for (const auto& t : pair.summary) {
      if (!is_reserved(t)) words.add(t);
    }
    if (pair.labels) {
      for (auto c : kLabelCategories) {
        for (const auto& l : pair.labels->strings(c)) labels[static_cast<std::size_t>(c)].add(l);
      }
    }
  }

  std::vector<std::string> ranked = {kPadToken, kUnkToken, kBosToken, kEosToken};
  for (auto& t : words.ranked(static_cast<std::size_t>(v_in))) ranked.push_back(std::move(t));
  int output_size = std::min<int>(kNumReserved + v_out, static_cast<int>(ranked.size()));

  std::array<TokenMap, kNumLabelCategories> label_maps;
  for (auto c : kLabelCategories) {
    std::vector<std::string> l = {kUnkToken};
    for (auto& t : labels[static_cast<std::size_t>(c)].ranked(SIZE_MAX)) l.push_back(std::move(t));
    label_maps[static_cast<std::size_t>(c)] = TokenMap(std::move(l), kLabelUnkId);
  }
  return Vocabulary(TokenMap(std::move(ranked), kUnkId), output_size, std::move(label_maps));
}

}  // namespace structsum::corpus
