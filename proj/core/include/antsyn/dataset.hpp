#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "antsyn/extraction.hpp"
#include "antsyn/pattern.hpp"

namespace antsyn {

enum class Label { Synonym = 0, Antonym = 1 };

enum class WordClass { Adjective, Verb, Noun };

std::string_view to_string(WordClass wc);
WordClass word_class_from_string(std::string_view s);

enum class Split { Train, Test, Validation };

std::string_view to_string(Split split);
Split split_from_string(std::string_view s);

struct LabeledPair {
  std::string x;
  std::string y;
  Label label = Label::Synonym;

  bool operator==(const LabeledPair&) const = default;
};

// Reads `x <TAB> y <TAB> label` lines (label 1 = antonym, 0 = synonym).
// Lemmas are lowercased; exact duplicates collapse to the first occurrence.
// Throws ParseError on malformed lines, conflicting labels and self-pairs.
std::vector<LabeledPair> load_pairs(std::istream& in);

std::vector<WordPair> word_pairs(const std::vector<LabeledPair>& pairs);

struct PairExample {
  std::string x;
  std::string y;
  Label label = Label::Synonym;
  std::vector<Pattern> patterns;  // distinct keys, sorted by key

  bool operator==(const PairExample&) const = default;
};

struct AssembleStats {
  std::int64_t kept = 0;
  std::int64_t dropped_absent = 0;
  std::int64_t dropped_too_few = 0;
};

// Keeps pairs with at least `min_patterns` distinct patterns in the
// (already count-filtered) extraction map.
std::vector<PairExample> assemble(const std::vector<LabeledPair>& pairs,
                                  const ExtractionMap& patterns,
                                  std::size_t min_patterns = 5,
                                  AssembleStats* stats = nullptr);

struct SplitRatios {
  double train = 0.70;
  double test = 0.25;
  double validation = 0.05;
};

struct SplitDataset {
  std::vector<PairExample> train;
  std::vector<PairExample> test;
  std::vector<PairExample> validation;
  WordClass word_class = WordClass::Adjective;
  std::uint64_t seed = 0;

  const std::vector<PairExample>& split(Split s) const;
};

// Downsamples the majority label to 1:1, then splits so every split stays
// balanced within one example. Deterministic given (examples, seed); the
// input order does not matter.
SplitDataset balance_and_split(std::vector<PairExample> examples,
                               const SplitRatios& ratios, std::uint64_t seed,
                               WordClass word_class = WordClass::Adjective);

// Parses "0.70,0.25,0.05".
SplitRatios parse_ratios(std::string_view s);

// Manifest: `#key <TAB> value` header lines then `x y label split` rows.
struct Manifest {
  WordClass word_class = WordClass::Adjective;
  std::uint64_t seed = 0;
  std::string patterns_file = "patterns.tsv";  // relative to the manifest
  std::vector<std::pair<LabeledPair, Split>> rows;
};

Manifest make_manifest(const SplitDataset& data, std::string patterns_file);
void write_manifest(std::ostream& out, const Manifest& manifest);
Manifest read_manifest(std::istream& in);

// Rejoins a manifest with its pattern file; patterns are taken as-is.
SplitDataset load_split_dataset(const Manifest& manifest, const ExtractionMap& patterns);

// Table 1-shaped counts plus the mean number of distinct patterns per pair.
void write_summary(std::ostream& out, const SplitDataset& data);

// ---------------------------------------------------------------------------
// Vocabularies

// Dense string -> index map. build_vocabulary puts reserved symbols first
// and sorts the rest lexicographically.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(std::vector<std::string> symbols, int unknown_index);

  int size() const { return static_cast<int>(symbols_.size()); }
  // Index of `symbol`, or the unknown index when unseen.
  int lookup(std::string_view symbol) const;
  bool contains(std::string_view symbol) const;
  const std::string& symbol(int index) const {
    return symbols_[static_cast<std::size_t>(index)];
  }
  const std::vector<std::string>& symbols() const { return symbols_; }
  int unknown_index() const { return unknown_; }

  bool operator==(const SymbolTable& o) const {
    return symbols_ == o.symbols_ && unknown_ == o.unknown_;
  }

 private:
  std::vector<std::string> symbols_;
  std::map<std::string, int, std::less<>> index_;
  int unknown_ = 0;
};

inline constexpr std::string_view kLemmaX = "<X>";
inline constexpr std::string_view kLemmaY = "<Y>";
inline constexpr std::string_view kOov = "<OOV>";
inline constexpr std::string_view kUnknown = "<UNK>";

struct Vocabulary {
  SymbolTable lemma;   // <X>=0, <Y>=1, <OOV>=2, then lemmas
  SymbolTable pos;     // <UNK>=0
  SymbolTable deprel;  // <UNK>=0
  SymbolTable dist;    // <UNK>=0
  SymbolTable dir;     // <UNK>=0
  SymbolTable word;    // <OOV>=0, then pair words

  // The lemma index for a node slot: X and Y map to their reserved rows.
  int lemma_index(std::string_view lemma_slot) const;

  bool operator==(const Vocabulary&) const = default;
};

// Symbols from the train patterns only; the word table additionally holds
// every pair word in `all_pairs` since its rows come from pretrained vectors.
Vocabulary build_vocabulary(const std::vector<PairExample>& train,
                            const std::vector<PairExample>& all_pairs = {});

// `feature <TAB> index <TAB> symbol` lines.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary(std::istream& in);

}  // namespace antsyn
