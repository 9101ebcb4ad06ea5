#include "antsyn/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <ostream>
#include <random>
#include <set>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

std::string_view to_string(WordClass wc) {
  switch (wc) {
    case WordClass::Adjective:
      return "adjective";
    case WordClass::Verb:
      return "verb";
    case WordClass::Noun:
      return "noun";
  }
  return "adjective";
}

WordClass word_class_from_string(std::string_view s) {
  if (s == "adjective") return WordClass::Adjective;
  if (s == "verb") return WordClass::Verb;
  if (s == "noun") return WordClass::Noun;
  throw ConfigError("unknown word class '" + std::string(s) + "'");
}

std::string_view to_string(Split split) {
  switch (split) {
    case Split::Train:
      return "train";
    case Split::Test:
      return "test";
    case Split::Validation:
      return "validation";
  }
  return "train";
}

Split split_from_string(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "test") return Split::Test;
  if (s == "validation") return Split::Validation;
  throw ConfigError("unknown split '" + std::string(s) + "'");
}

std::vector<LabeledPair> load_pairs(std::istream& in) {
  std::vector<LabeledPair> out;
  std::map<WordPair, std::pair<Label, std::size_t>> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty() || line.front() == '#') continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3) {
      throw ParseError(line_no, "expected `x <TAB> y <TAB> label`");
    }
    LabeledPair p;
    p.x = text::lowercase(text::trim(cols[0]));
    p.y = text::lowercase(text::trim(cols[1]));
    const auto label = text::trim(cols[2]);
    if (label == "1") {
      p.label = Label::Antonym;
    } else if (label == "0") {
      p.label = Label::Synonym;
    } else {
      throw ParseError(line_no, "label must be 1 (antonym) or 0 (synonym)");
    }
    if (p.x.empty() || p.y.empty() || text::has_whitespace(p.x) ||
        text::has_whitespace(p.y)) {
      throw ParseError(line_no, "pair words must be non-empty single tokens");
    }
    if (p.x == p.y) throw ParseError(line_no, "self-pair '" + p.x + "'");
    WordPair key{p.x, p.y};
    if (auto it = seen.find(key); it != seen.end()) {
      if (it->second.first != p.label) {
        throw ParseError(line_no, "conflicting labels for pair (" + p.x + ", " +
                                      p.y + "), first seen on line " +
                                      std::to_string(it->second.second));
      }
      continue;
    }
    seen.emplace(std::move(key), std::make_pair(p.label, line_no));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<WordPair> word_pairs(const std::vector<LabeledPair>& pairs) {
  std::vector<WordPair> out;
  out.reserve(pairs.size());
  for (const auto& p : pairs) out.push_back({p.x, p.y});
  return out;
}

std::vector<PairExample> assemble(const std::vector<LabeledPair>& pairs,
                                  const ExtractionMap& patterns,
                                  std::size_t min_patterns, AssembleStats* stats) {
  AssembleStats local;
  std::vector<PairExample> out;
  for (const auto& p : pairs) {
    const auto it = patterns.find(WordPair{p.x, p.y});
    if (it == patterns.end()) {
      ++local.dropped_absent;
      continue;
    }
    if (it->second.size() < min_patterns) {
      ++local.dropped_too_few;
      continue;
    }
    out.push_back(PairExample{p.x, p.y, p.label, to_patterns(it->second)});
    ++local.kept;
  }
  if (stats) *stats = local;
  return out;
}

const std::vector<PairExample>& SplitDataset::split(Split s) const {
  switch (s) {
    case Split::Train:
      return train;
    case Split::Test:
      return test;
    case Split::Validation:
      return validation;
  }
  return train;
}

namespace {

void check_ratios(const SplitRatios& r) {
  if (r.train < 0 || r.test < 0 || r.validation < 0) {
    throw ConfigError("split ratios must be non-negative");
  }
  if (std::abs(r.train + r.test + r.validation - 1.0) > 1e-9) {
    throw ConfigError("split ratios must sum to 1");
  }
}

// Largest-remainder apportionment of `total` items; ties go to the earlier split.
std::array<std::size_t, 3> apportion(std::size_t total, const SplitRatios& r) {
  const std::array<double, 3> want = {r.train * static_cast<double>(total),
                                      r.test * static_cast<double>(total),
                                      r.validation * static_cast<double>(total)};
  std::array<std::size_t, 3> sizes{};
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    sizes[i] = static_cast<std::size_t>(std::floor(want[i] + 1e-9));
    assigned += sizes[i];
  }
  std::array<std::size_t, 3> order = {0, 1, 2};
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return want[a] - static_cast<double>(sizes[a]) >
           want[b] - static_cast<double>(sizes[b]);
  });
  for (std::size_t k = 0; assigned < total; k = (k + 1) % 3) {
    ++sizes[order[k]];
    ++assigned;
  }
  return sizes;
}

}  // namespace

SplitDataset balance_and_split(std::vector<PairExample> examples,
                               const SplitRatios& ratios, std::uint64_t seed,
                               WordClass word_class) {
  check_ratios(ratios);
  std::sort(examples.begin(), examples.end(),
            [](const PairExample& a, const PairExample& b) {
              return std::tie(a.x, a.y) < std::tie(b.x, b.y);
            });
  std::vector<PairExample> ant;
  std::vector<PairExample> syn;
  for (auto& e : examples) {
    (e.label == Label::Antonym ? ant : syn).push_back(std::move(e));
  }
  if (ant.empty() || syn.empty()) {
    throw ConfigError("balance_and_split needs at least one example of each label");
  }

  std::mt19937_64 rng(seed);
  std::shuffle(ant.begin(), ant.end(), rng);
  std::shuffle(syn.begin(), syn.end(), rng);
  const std::size_t n = std::min(ant.size(), syn.size());
  ant.resize(n);
  syn.resize(n);

  const auto sizes = apportion(2 * n, ratios);
  SplitDataset out;
  out.word_class = word_class;
  out.seed = seed;
  std::array<std::vector<PairExample>*, 3> dst = {&out.train, &out.test,
                                                  &out.validation};
  std::size_t next_ant = 0;
  std::size_t next_syn = 0;
  bool extra_to_antonym = true;
  for (std::size_t i = 0; i < 3; ++i) {
    std::size_t n_ant = sizes[i] / 2;
    std::size_t n_syn = sizes[i] / 2;
    if (sizes[i] % 2 == 1) {
      (extra_to_antonym ? n_ant : n_syn) += 1;
      extra_to_antonym = !extra_to_antonym;
    }
    auto& split = *dst[i];
    for (std::size_t k = 0; k < n_ant; ++k) split.push_back(std::move(ant[next_ant++]));
    for (std::size_t k = 0; k < n_syn; ++k) split.push_back(std::move(syn[next_syn++]));
    std::shuffle(split.begin(), split.end(), rng);
  }
  return out;
}

SplitRatios parse_ratios(std::string_view s) {
  const auto parts = text::split(s, ',');
  if (parts.size() != 3) throw ConfigError("--ratios expects three comma-separated values");
  std::array<double, 3> v{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto d = text::parse_number<double>(text::trim(parts[i]));
    if (!d) throw ConfigError("bad ratio '" + std::string(parts[i]) + "'");
    v[i] = *d;
  }
  SplitRatios r{v[0], v[1], v[2]};
  check_ratios(r);
  return r;
}

Manifest make_manifest(const SplitDataset& data, std::string patterns_file) {
  Manifest m;
  m.word_class = data.word_class;
  m.seed = data.seed;
  m.patterns_file = std::move(patterns_file);
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : data.split(s)) m.rows.push_back({{e.x, e.y, e.label}, s});
  }
  return m;
}

void write_manifest(std::ostream& out, const Manifest& m) {
  out << "#word_class\t" << to_string(m.word_class) << '\n'
      << "#seed\t" << m.seed << '\n'
      << "#patterns\t" << m.patterns_file << '\n';
  for (const auto& [pair, split] : m.rows) {
    out << pair.x << '\t' << pair.y << '\t' << static_cast<int>(pair.label) << '\t'
        << to_string(split) << '\n';
  }
}

Manifest read_manifest(std::istream& in) {
  Manifest m;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (text::trim(line).empty()) continue;
    const auto cols = text::split(line, '\t');
    if (line.front() == '#') {
      if (cols.size() != 2) throw ParseError(line_no, "bad manifest header line");
      const auto key = cols[0].substr(1);
      if (key == "word_class") {
        m.word_class = word_class_from_string(cols[1]);
      } else if (key == "seed") {
        const auto seed = text::parse_number<std::uint64_t>(cols[1]);
        if (!seed) throw ParseError(line_no, "bad seed");
        m.seed = *seed;
      } else if (key == "patterns") {
        m.patterns_file = std::string(cols[1]);
      }
      continue;
    }
    if (cols.size() != 4) throw ParseError(line_no, "expected `x y label split`");
    LabeledPair p{std::string(cols[0]), std::string(cols[1]), Label::Synonym};
    if (cols[2] == "1") {
      p.label = Label::Antonym;
    } else if (cols[2] != "0") {
      throw ParseError(line_no, "bad label");
    }
    try {
      m.rows.emplace_back(std::move(p), split_from_string(cols[3]));
    } catch (const ConfigError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  return m;
}

SplitDataset load_split_dataset(const Manifest& manifest,
                                const ExtractionMap& patterns) {
  SplitDataset out;
  out.word_class = manifest.word_class;
  out.seed = manifest.seed;
  for (const auto& [pair, split] : manifest.rows) {
    const auto it = patterns.find(WordPair{pair.x, pair.y});
    if (it == patterns.end()) {
      throw Error("manifest pair (" + pair.x + ", " + pair.y +
                  ") has no patterns in the pattern file");
    }
    PairExample e{pair.x, pair.y, pair.label, to_patterns(it->second)};
    switch (split) {
      case Split::Train:
        out.train.push_back(std::move(e));
        break;
      case Split::Test:
        out.test.push_back(std::move(e));
        break;
      case Split::Validation:
        out.validation.push_back(std::move(e));
        break;
    }
  }
  return out;
}

void write_summary(std::ostream& out, const SplitDataset& data) {
  std::size_t patterns = 0;
  std::size_t pairs = 0;
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : data.split(s)) {
      patterns += e.patterns.size();
      ++pairs;
    }
  }
  const double mean = pairs == 0 ? 0.0
                                 : static_cast<double>(patterns) /
                                       static_cast<double>(pairs);
  out << "word_class\ttrain\ttest\tvalidation\ttotal\tmean_patterns_per_pair\n"
      << to_string(data.word_class) << '\t' << data.train.size() << '\t'
      << data.test.size() << '\t' << data.validation.size() << '\t' << pairs << '\t'
      << text::format_fixed(mean, 2) << '\n';
}

// ---------------------------------------------------------------------------

SymbolTable::SymbolTable(std::vector<std::string> symbols, int unknown_index)
    : symbols_(std::move(symbols)), unknown_(unknown_index) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!index_.emplace(symbols_[i], static_cast<int>(i)).second) {
      throw Error("duplicate vocabulary symbol '" + symbols_[i] + "'");
    }
  }
  if (unknown_ < 0 || unknown_ >= static_cast<int>(symbols_.size())) {
    throw Error("unknown index outside the vocabulary");
  }
}

int SymbolTable::lookup(std::string_view symbol) const {
  const auto it = index_.find(symbol);
  return it == index_.end() ? unknown_ : it->second;
}

bool SymbolTable::contains(std::string_view symbol) const {
  return index_.find(symbol) != index_.end();
}

int Vocabulary::lemma_index(std::string_view lemma_slot) const {
  if (lemma_slot == kSlotX) return lemma.lookup(kLemmaX);
  if (lemma_slot == kSlotY) return lemma.lookup(kLemmaY);
  return lemma.lookup(lemma_slot);
}

namespace {

SymbolTable make_table(std::vector<std::string> reserved,
                       const std::set<std::string>& symbols, int unknown) {
  for (const auto& s : symbols) {
    if (std::find(reserved.begin(), reserved.end(), s) == reserved.end()) {
      reserved.push_back(s);
    }
  }
  return SymbolTable(std::move(reserved), unknown);
}

}  // namespace

Vocabulary build_vocabulary(const std::vector<PairExample>& train,
                            const std::vector<PairExample>& all_pairs) {
  std::set<std::string> lemmas, pos, deprel, dist, dir, words;
  std::size_t n_patterns = 0;
  for (const auto& e : train) {
    words.insert(e.x);
    words.insert(e.y);
    for (const auto& p : e.patterns) {
      ++n_patterns;
      for (const auto& node : p.nodes) {
        if (node.lemma_slot != kSlotX && node.lemma_slot != kSlotY) {
          lemmas.insert(node.lemma_slot);
        }
        pos.insert(node.pos);
        deprel.insert(node.deprel);
        (node.dir ? dir : dist).insert(node.label());
      }
    }
  }
  if (n_patterns == 0) throw ConfigError("empty train split");
  for (const auto& e : all_pairs) {
    words.insert(e.x);
    words.insert(e.y);
  }
  const std::string unk(kUnknown);
  Vocabulary v;
  v.lemma = make_table({std::string(kLemmaX), std::string(kLemmaY), std::string(kOov)},
                       lemmas, 2);
  v.pos = make_table({unk}, pos, 0);
  v.deprel = make_table({unk}, deprel, 0);
  v.dist = make_table({unk}, dist, 0);
  v.dir = make_table({unk}, dir, 0);
  v.word = make_table({std::string(kOov)}, words, 0);
  return v;
}

namespace {
constexpr std::array<std::string_view, 6> kVocabFeatures = {
    "lemma", "pos", "deprel", "dist", "dir", "word"};

std::array<const SymbolTable*, 6> tables(const Vocabulary& v) {
  return {&v.lemma, &v.pos, &v.deprel, &v.dist, &v.dir, &v.word};
}
}  // namespace

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  const auto t = tables(vocab);
  for (std::size_t f = 0; f < t.size(); ++f) {
    out << "#unknown\t" << kVocabFeatures[f] << '\t' << t[f]->unknown_index() << '\n';
  }
  for (std::size_t f = 0; f < t.size(); ++f) {
    for (int i = 0; i < t[f]->size(); ++i) {
      out << kVocabFeatures[f] << '\t' << i << '\t' << t[f]->symbol(i) << '\n';
    }
  }
}

Vocabulary read_vocabulary(std::istream& in) {
  std::array<std::vector<std::string>, 6> symbols;
  std::array<int, 6> unknown{};
  std::string line;
  std::size_t line_no = 0;
  auto feature_index = [&](std::string_view name) {
    const auto it = std::find(kVocabFeatures.begin(), kVocabFeatures.end(), name);
    if (it == kVocabFeatures.end()) {
      throw ParseError(line_no, "unknown vocabulary feature '" + std::string(name) + "'");
    }
    return static_cast<std::size_t>(it - kVocabFeatures.begin());
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cols = text::split(line, '\t');
    if (cols.size() != 3) throw ParseError(line_no, "expected 3 columns in vocabulary file");
    if (cols[0] == "#unknown") {
      const auto idx = text::parse_number<int>(cols[2]);
      if (!idx) throw ParseError(line_no, "bad unknown index");
      unknown[feature_index(cols[1])] = *idx;
      continue;
    }
    const auto f = feature_index(cols[0]);
    const auto idx = text::parse_number<int>(cols[1]);
    if (!idx || *idx != static_cast<int>(symbols[f].size())) {
      throw ParseError(line_no, "vocabulary indices must be dense and in order");
    }
    symbols[f].emplace_back(cols[2]);
  }
  Vocabulary v;
  try {
    v.lemma = SymbolTable(std::move(symbols[0]), unknown[0]);
    v.pos = SymbolTable(std::move(symbols[1]), unknown[1]);
    v.deprel = SymbolTable(std::move(symbols[2]), unknown[2]);
    v.dist = SymbolTable(std::move(symbols[3]), unknown[3]);
    v.dir = SymbolTable(std::move(symbols[4]), unknown[4]);
    v.word = SymbolTable(std::move(symbols[5]), unknown[5]);
  } catch (const Error& e) {
    throw ParseError(line_no, e.what());
  }
  return v;
}

}  // namespace antsyn
