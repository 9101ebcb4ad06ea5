#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "antsyn/error.hpp"
#include "antsyn/model.hpp"
#include "commands.hpp"

namespace antsyn::cli {

namespace {

struct Verb {
  const char* lemma;
  const char* form;
};

constexpr std::array<Verb, 12> kVerbs = {{{"move", "moved"},
                                          {"turn", "turned"},
                                          {"shift", "shifted"},
                                          {"change", "changed"},
                                          {"swing", "swung"},
                                          {"range", "ranged"},
                                          {"go", "went"},
                                          {"drift", "drifted"},
                                          {"switch", "switched"},
                                          {"vary", "varied"},
                                          {"flip", "flipped"},
                                          {"grow", "grew"}}};

// Tree shapes. Antonyms use FromTo and EitherOr, synonyms Appos and KnownAs,
// and Conj is shared by both classes.
enum class Shape { FromTo, EitherOr, Appos, KnownAs, Conj };

using Row = std::tuple<std::string, std::string, std::string, int, std::string>;

Sentence make_sentence(const std::vector<Row>& rows) {
  Sentence s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& [form, lemma, pos, head, deprel] = rows[i];
    s.tokens.push_back({static_cast<int>(i) + 1, form, lemma, pos, head, deprel});
    if (head == 0) s.root_id = static_cast<int>(i) + 1;
  }
  return s;
}

Sentence render(Shape shape, const Verb& v, const std::string& x, const std::string& y) {
  const std::string form = v.form;
  const std::string lemma = v.lemma;
  switch (shape) {
    case Shape::FromTo:  // it moved from X to Y .
      return make_sentence({{"it", "it", "PRP", 2, "nsubj"},
                            {form, lemma, "VBD", 0, "ROOT"},
                            {"from", "from", "IN", 2, "prep"},
                            {x, x, "JJ", 3, "pobj"},
                            {"to", "to", "IN", 2, "prep"},
                            {y, y, "JJ", 5, "pobj"},
                            {".", ".", ".", 2, "punct"}});
    case Shape::EitherOr:  // it moved either X or Y .
      return make_sentence({{"it", "it", "PRP", 2, "nsubj"},
                            {form, lemma, "VBD", 0, "ROOT"},
                            {"either", "either", "CC", 4, "preconj"},
                            {x, x, "JJ", 2, "acomp"},
                            {"or", "or", "CC", 4, "cc"},
                            {y, y, "JJ", 2, "conj"},
                            {".", ".", ".", 2, "punct"}});
    case Shape::Appos:  // it moved X , Y .
      return make_sentence({{"it", "it", "PRP", 2, "nsubj"},
                            {form, lemma, "VBD", 0, "ROOT"},
                            {x, x, "JJ", 2, "dobj"},
                            {",", ",", ",", 2, "punct"},
                            {y, y, "JJ", 2, "appos"},
                            {".", ".", ".", 2, "punct"}});
    case Shape::KnownAs:  // it moved X also as Y .
      return make_sentence({{"it", "it", "PRP", 2, "nsubj"},
                            {form, lemma, "VBD", 0, "ROOT"},
                            {x, x, "JJ", 2, "dobj"},
                            {"also", "also", "RB", 5, "advmod"},
                            {"as", "as", "IN", 2, "prep"},
                            {y, y, "JJ", 5, "pobj"},
                            {".", ".", ".", 2, "punct"}});
    case Shape::Conj:  // X and Y moved .
      return make_sentence({{x, x, "JJ", 4, "nsubj"},
                            {"and", "and", "CC", 1, "cc"},
                            {y, y, "JJ", 1, "conj"},
                            {form, lemma, "VBD", 0, "ROOT"},
                            {".", ".", ".", 4, "punct"}});
  }
  throw Error("unknown shape");
}

Sentence filler(const Verb& v, const std::string& w) {
  return make_sentence({{"it", "it", "PRP", 2, "nsubj"},
                        {v.form, v.lemma, "VBD", 0, "ROOT"},
                        {w, w, "JJ", 2, "acomp"},
                        {".", ".", ".", 2, "punct"}});
}

// Nonce words of three consonant-vowel syllables.
std::vector<std::string> make_words(std::size_t n, std::mt19937_64& rng) {
  static constexpr std::string_view kConsonants = "bdfgklmnprstvz";
  static constexpr std::string_view kVowels = "aeiou";
  std::uniform_int_distribution<std::size_t> c(0, kConsonants.size() - 1);
  std::uniform_int_distribution<std::size_t> v(0, kVowels.size() - 1);
  std::set<std::string> seen;
  std::vector<std::string> out;
  while (out.size() < n) {
    std::string w;
    for (int k = 0; k < 3; ++k) {
      w += kConsonants[c(rng)];
      w += kVowels[v(rng)];
    }
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

}  // namespace

SynthCorpus generate_synthetic(const SynthOptions& o) {
  if (o.pairs < 2 || o.pairs % 2 != 0) throw ConfigError("--pairs must be even and at least 2");
  if (o.dim <= 0) throw ConfigError("--dim must be positive");
  if (o.fillers < 0) throw ConfigError("--fillers must be non-negative");

  std::mt19937_64 rng(derive_seed(o.seed, 9000));
  const auto words = make_words(2 * static_cast<std::size_t>(o.pairs), rng);
  std::uniform_int_distribution<int> repeat(5, 9);
  std::uniform_int_distribution<int> noise_repeat(1, 3);
  std::uniform_int_distribution<int> noise_shapes(0, 2);
  std::bernoulli_distribution coin(0.5);
  std::uniform_int_distribution<std::size_t> pick_verb(0, kVerbs.size() - 1);

  SynthCorpus c;
  for (int i = 0; i < o.pairs; ++i) {
    const bool antonym = i % 2 == 0;
    LabeledPair p{words[2 * static_cast<std::size_t>(i)],
                  words[2 * static_cast<std::size_t>(i) + 1],
                  antonym ? Label::Antonym : Label::Synonym};
    const std::array<Shape, 2> own = antonym ? std::array{Shape::FromTo, Shape::EitherOr}
                                             : std::array{Shape::Appos, Shape::KnownAs};
    const std::array<Shape, 2> other = antonym ? std::array{Shape::Appos, Shape::KnownAs}
                                               : std::array{Shape::FromTo, Shape::EitherOr};

    // six distinct (shape, verb) patterns, each frequent enough to survive
    std::vector<std::pair<Shape, std::size_t>> combos;
    for (Shape s : own) {
      for (std::size_t v = 0; v < kVerbs.size(); ++v) combos.emplace_back(s, v);
    }
    std::shuffle(combos.begin(), combos.end(), rng);
    combos.resize(6);
    for (const auto& [shape, v] : combos) {
      const int n = repeat(rng);
      for (int k = 0; k < n; ++k) c.sentences.push_back(render(shape, kVerbs[v], p.x, p.y));
    }
    if (coin(rng)) {
      const auto& verb = kVerbs[pick_verb(rng)];
      const int n = repeat(rng);
      for (int k = 0; k < n; ++k) c.sentences.push_back(render(Shape::Conj, verb, p.x, p.y));
    }
    // rare patterns of the opposite class, below the frequency filter
    const int noise = noise_shapes(rng);
    for (int q = 0; q < noise; ++q) {
      const Shape shape = other[coin(rng) ? 1 : 0];
      const auto& verb = kVerbs[pick_verb(rng)];
      const int n = noise_repeat(rng);
      for (int k = 0; k < n; ++k) c.sentences.push_back(render(shape, verb, p.x, p.y));
    }
    c.pairs.push_back(std::move(p));
  }
  std::uniform_int_distribution<std::size_t> pick_word(0, words.size() - 1);
  for (int k = 0; k < o.fillers; ++k) {
    c.sentences.push_back(filler(kVerbs[pick_verb(rng)], words[pick_word(rng)]));
  }
  std::shuffle(c.sentences.begin(), c.sentences.end(), rng);

  // vectors for every lemma in the corpus, rounded to the 6 decimals written out
  std::set<std::string> lemmas(words.begin(), words.end());
  for (const auto& s : c.sentences) {
    for (const auto& t : s.tokens) lemmas.insert(t.lemma);
  }
  std::uniform_real_distribution<double> value(-0.5, 0.5);
  c.vectors.dim = o.dim;
  for (const auto& w : lemmas) {
    std::vector<double> v(static_cast<std::size_t>(o.dim));
    for (auto& x : v) x = std::round(value(rng) * 1e6) / 1e6;
    c.vectors.vectors.emplace(w, std::move(v));
  }
  return c;
}

}  // namespace antsyn::cli
