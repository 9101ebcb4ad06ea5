#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "antsyn/pattern.hpp"
#include "antsyn/treebank.hpp"

namespace antsyn {

// An ordered word pair (x, y); patterns always run from x to y.
struct WordPair {
  std::string x;
  std::string y;

  auto operator<=>(const WordPair&) const = default;
  bool operator==(const WordPair&) const = default;
};

// pattern key -> c_p, scoped to one pair
using PatternCounts = std::map<std::string, std::int64_t>;
using ExtractionMap = std::map<WordPair, PatternCounts>;

struct ExtractionStats {
  std::int64_t sentences_scanned = 0;
  std::int64_t sentences_skipped = 0;  // rejected by the treebank reader
  std::int64_t occurrences_found = 0;
  std::int64_t paths_skipped = 0;  // longer than max_path_len

  ExtractionStats& operator+=(const ExtractionStats& o);
  bool operator==(const ExtractionStats&) const = default;
};

struct ExtractionResult {
  ExtractionMap patterns;
  ExtractionStats stats;
};

// Collects patterns for a fixed pair list, one sentence at a time.
class PatternExtractor {
 public:
  PatternExtractor(const std::vector<WordPair>& pairs, PatternOptions options);

  void add_sentence(const Sentence& s, ExtractionResult& into) const;

 private:
  PatternOptions options_;
  // x lemma -> y lemmas paired with it
  std::unordered_map<std::string, std::vector<std::string>> by_x_;
};

// Adds counts of `part` into `total`. Associative and commutative.
void merge_into(ExtractionResult& total, const ExtractionResult& part);

// Extracts from a parsed corpus. `threads` > 1 splits the sentences into
// contiguous chunks; the merged result does not depend on the thread count.
ExtractionResult extract_corpus_patterns(const std::vector<Sentence>& corpus,
                                         const std::vector<WordPair>& pairs,
                                         const PatternOptions& options = {},
                                         int threads = 1);

// Streaming variant over a CoNLL-U reader; sentences are processed in
// batches of `batch_size`, each batch split across `threads`.
ExtractionResult extract_corpus_patterns(ConlluReader& reader,
                                         const std::vector<WordPair>& pairs,
                                         const PatternOptions& options = {},
                                         int threads = 1,
                                         std::size_t batch_size = 4096);

// Drops patterns with count < min_count, then pairs left without patterns.
ExtractionMap filter_patterns(const ExtractionMap& map, std::int64_t min_count = 5);

// `x <TAB> y <TAB> key <TAB> count`, sorted by (x, y, key).
void write_patterns(std::ostream& out, const ExtractionMap& map);
ExtractionMap read_patterns(std::istream& in);

void write_stats(std::ostream& out, const ExtractionStats& stats);

// Expands a pair's counts into Pattern values (nodes parsed from the key).
std::vector<Pattern> to_patterns(const PatternCounts& counts);

}  // namespace antsyn
