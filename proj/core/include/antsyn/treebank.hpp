#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace antsyn {

struct Token {
  int id = 0;  // 1-based
  std::string form;
  std::string lemma;  // lowercased
  std::string pos;    // XPOS, or UPOS when XPOS is "_"
  int head = 0;       // 0 = root
  std::string deprel;

  bool operator==(const Token&) const = default;
};

// A dependency tree. Tokens are stored in id order, so token(i) is tokens[i-1].
struct Sentence {
  std::vector<Token> tokens;
  int root_id = 0;

  int size() const { return static_cast<int>(tokens.size()); }
  const Token& token(int id) const { return tokens[static_cast<std::size_t>(id - 1)]; }
  int head(int id) const { return token(id).head; }

  bool operator==(const Sentence&) const = default;
};

// Returns std::nullopt for a valid tree, otherwise the first violation found:
// "empty sentence", "non-consecutive token ids", "head out of range",
// "self-loop", "invalid lemma", "invalid pos", "invalid deprel",
// "multiple roots", "cycle", "no root".
std::optional<std::string> validate_tree(const Sentence& s);

// Number of edges from `id` up to the root. Requires a valid tree.
int depth(const Sentence& s, int id);

// Lowest common ancestor of two tokens. Requires a valid tree.
int lowest_common_ancestor(const Sentence& s, int a, int b);

enum class ErrorMode { Lenient, Strict };

struct ConlluDiagnostic {
  std::size_t line = 0;
  std::string message;
};

// Streaming CoNLL-U reader. In strict mode the first problem throws
// ParseError/ValidationError; in lenient mode the offending sentence is
// skipped and a diagnostic recorded.
class ConlluReader {
 public:
  explicit ConlluReader(std::istream& in, ErrorMode mode = ErrorMode::Lenient);

  // Reads the next valid sentence; false at end of input.
  bool next(Sentence& out);

  const std::vector<ConlluDiagnostic>& diagnostics() const { return diagnostics_; }
  std::size_t sentences_read() const { return sentences_read_; }
  std::size_t sentences_skipped() const { return sentences_skipped_; }

 private:
  bool read_block(std::vector<std::string>& lines, std::size_t& first_line);
  void fail(std::size_t line, std::string message, bool validation);

  std::istream& in_;
  ErrorMode mode_;
  std::size_t line_no_ = 0;
  std::size_t block_index_ = 0;
  std::size_t sentences_read_ = 0;
  std::size_t sentences_skipped_ = 0;
  std::vector<ConlluDiagnostic> diagnostics_;
};

struct ConlluParse {
  std::vector<Sentence> sentences;
  std::vector<ConlluDiagnostic> diagnostics;
};

ConlluParse parse_conllu(std::istream& in, ErrorMode mode = ErrorMode::Lenient);

// Writes the sentence in 10-column CoNLL-U; pos fills both UPOS and XPOS.
void write_conllu(std::ostream& out, const Sentence& s);

}  // namespace antsyn
