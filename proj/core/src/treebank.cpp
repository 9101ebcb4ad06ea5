#include "antsyn/treebank.hpp"

#include <istream>
#include <ostream>
#include <utility>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {
namespace {

bool valid_symbol(const std::string& s) {
  return !s.empty() && !text::has_whitespace(s) &&
         s.find('/') == std::string::npos;
}

}  // namespace

std::optional<std::string> validate_tree(const Sentence& s) {
  const int n = s.size();
  if (n == 0) return "empty sentence";
  for (int i = 0; i < n; ++i) {
    const Token& t = s.tokens[static_cast<std::size_t>(i)];
    if (t.id != i + 1) return "non-consecutive token ids";
    if (t.head < 0 || t.head > n) return "head out of range";
    if (t.head == t.id) return "self-loop";
    if (!valid_symbol(t.lemma)) return "invalid lemma";
    if (!valid_symbol(t.pos)) return "invalid pos";
    if (!valid_symbol(t.deprel)) return "invalid deprel";
  }

  int roots = 0;
  for (const Token& t : s.tokens) {
    if (t.head == 0) ++roots;
  }
  if (roots > 1) return "multiple roots";

  // 0 = unvisited, 1 = on the current walk, 2 = known to reach the root
  std::vector<char> state(static_cast<std::size_t>(n + 1), 0);
  state[0] = 2;
  std::vector<int> walk;
  for (int start = 1; start <= n; ++start) {
    walk.clear();
    int v = start;
    while (state[static_cast<std::size_t>(v)] == 0) {
      state[static_cast<std::size_t>(v)] = 1;
      walk.push_back(v);
      v = s.head(v);
    }
    if (state[static_cast<std::size_t>(v)] == 1) return "cycle";
    for (int w : walk) state[static_cast<std::size_t>(w)] = 2;
  }

  if (roots == 0) return "no root";
  if (s.root_id < 1 || s.root_id > n || s.head(s.root_id) != 0) {
    return "root_id does not name the root token";
  }
  return std::nullopt;
}

int depth(const Sentence& s, int id) {
  int d = 0;
  while (s.head(id) != 0) {
    id = s.head(id);
    ++d;
  }
  return d;
}

int lowest_common_ancestor(const Sentence& s, int a, int b) {
  int da = depth(s, a);
  int db = depth(s, b);
  while (da > db) {
    a = s.head(a);
    --da;
  }
  while (db > da) {
    b = s.head(b);
    --db;
  }
  while (a != b) {
    a = s.head(a);
    b = s.head(b);
  }
  return a;
}

ConlluReader::ConlluReader(std::istream& in, ErrorMode mode)
    : in_(in), mode_(mode) {}

bool ConlluReader::read_block(std::vector<std::string>& lines,
                              std::size_t& first_line) {
  lines.clear();
  std::string line;
  while (std::getline(in_, line)) {
    ++line_no_;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) {
      if (lines.empty()) continue;
      return true;
    }
    if (lines.empty()) first_line = line_no_;
    lines.push_back(std::move(line));
  }
  return !lines.empty();
}

void ConlluReader::fail(std::size_t line, std::string message, bool validation) {
  if (mode_ == ErrorMode::Strict) {
    if (validation) throw ValidationError(block_index_, line, message);
    throw ParseError(line, message);
  }
  ++sentences_skipped_;
  diagnostics_.push_back({line, std::move(message)});
}

bool ConlluReader::next(Sentence& out) {
  std::vector<std::string> lines;
  std::size_t first_line = 0;
  while (read_block(lines, first_line)) {
    ++block_index_;
    Sentence s;
    bool ok = true;
    std::size_t line_no = first_line;
    for (const std::string& line : lines) {
      const std::size_t this_line = line_no++;
      if (line.front() == '#') continue;
      const auto cols = text::split(line, '\t');
      if (cols.size() < 8) {
        fail(this_line, "expected at least 8 tab-separated columns, got " +
                            std::to_string(cols.size()),
             false);
        ok = false;
        break;
      }
      if (cols[0].find_first_of("-.") != std::string_view::npos) continue;
      const auto id = text::parse_number<int>(cols[0]);
      if (!id) {
        fail(this_line, "non-integer token id '" + std::string(cols[0]) + "'",
             false);
        ok = false;
        break;
      }
      const auto head = text::parse_number<int>(cols[6]);
      if (!head) {
        fail(this_line, "non-integer head '" + std::string(cols[6]) + "'", false);
        ok = false;
        break;
      }
      Token t;
      t.id = *id;
      t.form = std::string(cols[1]);
      t.lemma = (cols[2].empty() || cols[2] == "_") ? text::lowercase(cols[1])
                                                    : text::lowercase(cols[2]);
      t.pos = cols[4] != "_" ? std::string(cols[4]) : std::string(cols[3]);
      t.head = *head;
      t.deprel = std::string(cols[7]);
      if (t.head == 0 && s.root_id == 0) s.root_id = t.id;
      s.tokens.push_back(std::move(t));
    }
    if (!ok) continue;
    if (s.tokens.empty()) continue;  // comment-only block
    if (auto violation = validate_tree(s)) {
      fail(first_line, *violation, true);
      continue;
    }
    ++sentences_read_;
    out = std::move(s);
    return true;
  }
  return false;
}

ConlluParse parse_conllu(std::istream& in, ErrorMode mode) {
  ConlluParse result;
  ConlluReader reader(in, mode);
  Sentence s;
  while (reader.next(s)) result.sentences.push_back(std::move(s));
  result.diagnostics = reader.diagnostics();
  return result;
}

void write_conllu(std::ostream& out, const Sentence& s) {
  for (const Token& t : s.tokens) {
    out << t.id << '\t' << t.form << '\t' << t.lemma << '\t' << t.pos << '\t'
        << t.pos << '\t' << '_' << '\t' << t.head << '\t' << t.deprel << '\t'
        << '_' << '\t' << '_' << '\n';
  }
  out << '\n';
}

}  // namespace antsyn
