#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace structsum::corpus {

// One dependency-parsed source sentence. `head` is 1-based with 0 marking
// the root, as in CoNLL-U.
struct ParsedSentence {
  std::vector<std::string> tokens;
  std::vector<std::string> pos;
  std::vector<int> head;
  std::vector<std::string> deprel;

  std::size_t size() const { return tokens.size(); }
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Throws std::invalid_argument unless the arrays have equal length and
// `head` encodes a single-rooted tree.
void validate_tree(const ParsedSentence& s);

enum class PosColumn { Upos, Xpos };

struct ConlluOptions {
  PosColumn pos_column = PosColumn::Xpos;
  // Falls back to UPOS when the XPOS column is "_".
  bool xpos_fallback = true;
};

std::vector<ParsedSentence> parse_conllu(std::istream& in, const ConlluOptions& options = {});
std::vector<ParsedSentence> parse_conllu_file(const std::string& path, const ConlluOptions& options = {});

void write_conllu(std::ostream& out, const ParsedSentence& s);

}  // namespace structsum::corpus
