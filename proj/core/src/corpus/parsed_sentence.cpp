#include "structsum/corpus/parsed_sentence.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace structsum::corpus {
namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cols;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    cols.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cols;
}

bool parse_int(const std::string& s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

// Returns the index of a token on a cycle, or -1.
int find_cycle(const std::vector<int>& head) {
  const int n = static_cast<int>(head.size());
  // 0 = unvisited, 1 = on current path, 2 = reaches root
  std::vector<int> state(head.size(), 0);
  for (int start = 0; start < n; ++start) {
    std::vector<int> path;
    int cur = start;
    while (cur >= 0 && state[static_cast<std::size_t>(cur)] == 0) {
      state[static_cast<std::size_t>(cur)] = 1;
      path.push_back(cur);
      cur = head[static_cast<std::size_t>(cur)] - 1;
    }
    if (cur >= 0 && state[static_cast<std::size_t>(cur)] == 1) return cur;
    for (int p : path) state[static_cast<std::size_t>(p)] = 2;
  }
  return -1;
}

}  // namespace

void validate_tree(const ParsedSentence& s) {
  const std::size_t n = s.tokens.size();
  if (n == 0) throw std::invalid_argument("sentence has no tokens");
  if (s.pos.size() != n || s.head.size() != n || s.deprel.size() != n) {
    throw std::invalid_argument("token, pos, head and deprel arrays differ in length");
  }
  int roots = 0;
  for (std::size_t i = 0; i < n; ++i) {
    int h = s.head[i];
    if (h < 0 || h > static_cast<int>(n)) {
      throw std::invalid_argument("head " + std::to_string(h) + " of token " + std::to_string(i + 1) + " is out of range");
    }
    if (h == static_cast<int>(i + 1)) throw std::invalid_argument("token " + std::to_string(i + 1) + " is its own head");
    if (h == 0) ++roots;
  }
  if (roots != 1) throw std::invalid_argument("tree has " + std::to_string(roots) + " roots, expected 1");
  if (int c = find_cycle(s.head); c >= 0) {
    throw std::invalid_argument("dependency cycle through token " + std::to_string(c + 1));
  }
}

std::vector<ParsedSentence> parse_conllu(std::istream& in, const ConlluOptions& options) {
  std::vector<ParsedSentence> out;
  ParsedSentence cur;
  std::size_t sentence_start = 0;
  std::size_t line_no = 0;
  std::string line;

  auto flush = [&](std::size_t at_line) {
    if (cur.tokens.empty()) return;
    try {
      validate_tree(cur);
    } catch (const std::invalid_argument& e) {
      throw ParseError(sentence_start, std::string("invalid tree in sentence ending at line ") +
                                           std::to_string(at_line) + ": " + e.what());
    }
    out.push_back(std::move(cur));
    cur = ParsedSentence{};
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      flush(line_no);
      continue;
    }
    if (line[0] == '#') continue;
    auto cols = split_tabs(line);
    if (cols.size() != 10) {
      throw ParseError(line_no, "expected 10 tab-separated columns, found " + std::to_string(cols.size()));
    }
    // Multiword token ranges (1-2) and empty nodes (1.1) carry no tree edge.
    if (cols[0].find_first_of("-.") != std::string::npos) continue;
    int id = 0;
    if (!parse_int(cols[0], id)) throw ParseError(line_no, "non-integer ID '" + cols[0] + "'");
    int head = 0;
    if (!parse_int(cols[6], head)) throw ParseError(line_no, "non-integer HEAD '" + cols[6] + "'");
    if (cur.tokens.empty()) sentence_start = line_no;
    if (id != static_cast<int>(cur.tokens.size()) + 1) {
      throw ParseError(line_no, "token ID " + std::to_string(id) + " out of sequence");
    }
    std::string pos = options.pos_column == PosColumn::Xpos ? cols[4] : cols[3];
    if (pos == "_" && options.pos_column == PosColumn::Xpos && options.xpos_fallback) pos = cols[3];
    cur.tokens.push_back(cols[1]);
    cur.pos.push_back(pos);
    cur.head.push_back(head);
    cur.deprel.push_back(cols[7]);
  }
  flush(line_no);
  return out;
}

std::vector<ParsedSentence> parse_conllu_file(const std::string& path, const ConlluOptions& options) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open CoNLL-U file '" + path + "'");
  return parse_conllu(in, options);
}

void write_conllu(std::ostream& out, const ParsedSentence& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << (i + 1) << '\t' << s.tokens[i] << "\t_\t" << s.pos[i] << '\t' << s.pos[i] << "\t_\t" << s.head[i] << '\t'
        << s.deprel[i] << "\t_\t_\n";
  }
  out << '\n';
}

}  // namespace structsum::corpus
