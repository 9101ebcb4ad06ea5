#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "antsyn/dataset.hpp"
#include "antsyn/error.hpp"
#include "fixtures.hpp"

using namespace antsyn;
using namespace antsyn::testing;

namespace {

std::vector<LabeledPair> pairs_from(const std::string& text) {
  std::istringstream in(text);
  return load_pairs(in);
}

std::string key(int i) {
  return "X/JJ/amod/" + std::to_string(i) + " -- Y/NN/nsubj/0";
}

PairExample example(const std::string& x, const std::string& y, Label label, int n_patterns) {
  PatternCounts counts;
  for (int i = 1; i <= n_patterns; ++i) counts[key(i)] = 5;
  return {x, y, label, to_patterns(counts)};
}

std::vector<PairExample> examples(int antonyms, int synonyms) {
  std::vector<PairExample> out;
  for (int i = 0; i < antonyms; ++i) out.push_back(example("a" + std::to_string(i), "b", Label::Antonym, 5));
  for (int i = 0; i < synonyms; ++i) out.push_back(example("s" + std::to_string(i), "t", Label::Synonym, 5));
  return out;
}

std::pair<std::size_t, std::size_t> label_counts(const std::vector<PairExample>& v) {
  std::size_t a = 0, s = 0;
  for (const auto& e : v) (e.label == Label::Antonym ? a : s)++;
  return {a, s};
}

}  // namespace

TEST(Dataset, LoadPairsExamples) {
  EXPECT_EQ(pairs_from("old\tnew\t1\n"), (std::vector<LabeledPair>{{"old", "new", Label::Antonym}}));
  EXPECT_EQ(pairs_from("old\tnew\t1\nold\tnew\t1\n").size(), 1u);
  try {
    pairs_from("old\tnew\t1\nold\tnew\t0\n");
    FAIL() << "expected a conflict error";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("old, new"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Dataset, LoadPairsNormalizesAndRejects) {
  EXPECT_EQ(pairs_from("# header\nOld\tNEW\t0\n"),
            (std::vector<LabeledPair>{{"old", "new", Label::Synonym}}));
  EXPECT_THROW(pairs_from("old\tnew\n"), ParseError);
  EXPECT_THROW(pairs_from("old\tnew\tyes\n"), ParseError);
  EXPECT_THROW(pairs_from("old\told\t1\n"), ParseError);
  EXPECT_THROW(pairs_from("old man\tnew\t1\n"), ParseError);
  EXPECT_TRUE(pairs_from("").empty());
}

TEST(Dataset, AssembleMinPatternsBoundary) {
  const std::vector<LabeledPair> pairs = {
      {"five", "x", Label::Antonym}, {"four", "x", Label::Antonym}, {"none", "x", Label::Synonym}};
  ExtractionMap m;
  for (int i = 1; i <= 5; ++i) m[{"five", "x"}][key(i)] = 5;
  for (int i = 1; i <= 4; ++i) m[{"four", "x"}][key(i)] = 5;
  AssembleStats stats;
  const auto kept = assemble(pairs, m, 5, &stats);
  ASSERT_EQ(kept.size(), 1u);
  EXPECT_EQ(kept[0].x, "five");
  EXPECT_EQ(kept[0].patterns.size(), 5u);
  EXPECT_EQ(stats.kept, 1);
  EXPECT_EQ(stats.dropped_too_few, 1);
  EXPECT_EQ(stats.dropped_absent, 1);
}

TEST(Dataset, SplitSizesAndBalance) {
  const auto d = balance_and_split(examples(100, 100), {}, 7);
  EXPECT_EQ(d.train.size(), 140u);
  EXPECT_EQ(d.test.size(), 50u);
  EXPECT_EQ(d.validation.size(), 10u);
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    const auto [a, y] = label_counts(d.split(s));
    EXPECT_LE(a > y ? a - y : y - a, 1u);
  }
}

TEST(Dataset, DownsamplesMajority) {
  const auto d = balance_and_split(examples(100, 60), {}, 7);
  EXPECT_EQ(d.train.size() + d.test.size() + d.validation.size(), 120u);
  std::size_t a = 0, s = 0;
  for (Split sp : {Split::Train, Split::Test, Split::Validation}) {
    const auto [x, y] = label_counts(d.split(sp));
    a += x;
    s += y;
  }
  EXPECT_EQ(a, 60u);
  EXPECT_EQ(s, 60u);
}

TEST(Dataset, SplitIsDeterministicAndDisjoint) {
  const auto a = balance_and_split(examples(37, 41), {}, 3);
  const auto b = balance_and_split(examples(37, 41), {}, 3);
  EXPECT_EQ(a.train, b.train);
  EXPECT_EQ(a.test, b.test);
  EXPECT_EQ(a.validation, b.validation);
  const auto c = balance_and_split(examples(37, 41), {}, 4);
  EXPECT_NE(a.train, c.train);
  std::set<std::pair<std::string, std::string>> seen;
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : a.split(s)) EXPECT_TRUE(seen.insert({e.x, e.y}).second);
  }
}

TEST(Dataset, OddSizesStayWithinOne) {
  for (int n : {3, 7, 11, 23, 51}) {
    const auto d = balance_and_split(examples(n, n), {}, 1);
    const std::size_t total = 2 * static_cast<std::size_t>(n);
    EXPECT_EQ(d.train.size() + d.test.size() + d.validation.size(), total);
    EXPECT_NEAR(static_cast<double>(d.train.size()), 0.70 * static_cast<double>(total), 1.0);
    EXPECT_NEAR(static_cast<double>(d.test.size()), 0.25 * static_cast<double>(total), 1.0);
    EXPECT_NEAR(static_cast<double>(d.validation.size()), 0.05 * static_cast<double>(total), 1.0);
    for (Split s : {Split::Train, Split::Test, Split::Validation}) {
      const auto [a, y] = label_counts(d.split(s));
      EXPECT_LE(a > y ? a - y : y - a, 1u);
    }
  }
}

TEST(Dataset, RatioValidation) {
  EXPECT_THROW(balance_and_split(examples(5, 5), {0.7, 0.25, 0.1}, 1), ConfigError);
  EXPECT_THROW(balance_and_split(examples(5, 0), {}, 1), ConfigError);
  const auto r = parse_ratios("0.8,0.1,0.1");
  EXPECT_DOUBLE_EQ(r.train, 0.8);
  EXPECT_THROW(parse_ratios("0.8,0.1"), ConfigError);
}

TEST(Dataset, ManifestRoundTrip) {
  const auto d = balance_and_split(examples(10, 10), {}, 5, WordClass::Noun);
  const Manifest m = make_manifest(d, "patterns.tsv");
  std::ostringstream out;
  write_manifest(out, m);
  std::istringstream in(out.str());
  const Manifest back = read_manifest(in);
  EXPECT_EQ(back.word_class, WordClass::Noun);
  EXPECT_EQ(back.seed, 5u);
  EXPECT_EQ(back.rows, m.rows);

  ExtractionMap patterns;
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : d.split(s)) {
      for (const auto& p : e.patterns) patterns[{e.x, e.y}][p.key] = p.count;
    }
  }
  const SplitDataset loaded = load_split_dataset(back, patterns);
  EXPECT_EQ(loaded.train, d.train);
  EXPECT_EQ(loaded.test, d.test);
  EXPECT_EQ(loaded.validation, d.validation);
  patterns.erase(patterns.begin());
  EXPECT_THROW(load_split_dataset(back, patterns), Error);
}

TEST(Dataset, VocabularyFromGoldenPattern) {
  const PairExample e{"old", "new", Label::Antonym, to_patterns({{kGoldenKey, 1}})};
  const Vocabulary v = build_vocabulary({e});
  EXPECT_EQ(v.lemma.symbols(),
            (std::vector<std::string>{"<X>", "<Y>", "<OOV>", "provide", "service", "village", "with"}));
  EXPECT_EQ(v.dist.symbols(), (std::vector<std::string>{"<UNK>", "0", "1", "2", "3"}));
  EXPECT_EQ(v.lemma_index("X"), 0);
  EXPECT_EQ(v.lemma_index("Y"), 1);
  EXPECT_EQ(v.lemma_index("unseen"), 2);
  EXPECT_EQ(v.deprel.lookup("expl"), v.deprel.unknown_index());
  EXPECT_EQ(v.deprel.unknown_index(), 0);
  EXPECT_EQ(v.word.lookup("old"), v.word.lookup("old"));
  EXPECT_NE(v.word.lookup("old"), v.word.unknown_index());
}

TEST(Dataset, VocabularyErrorsAndRoundTrip) {
  EXPECT_THROW(build_vocabulary({}), ConfigError);
  const auto d = balance_and_split(examples(10, 10), {}, 5);
  const Vocabulary v = build_vocabulary(d.train);
  EXPECT_EQ(build_vocabulary(d.train), v);
  std::ostringstream out;
  write_vocabulary(out, v);
  std::istringstream in(out.str());
  EXPECT_EQ(read_vocabulary(in), v);
}
