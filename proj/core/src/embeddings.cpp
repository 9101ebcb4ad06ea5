#include "antsyn/embeddings.hpp"

#include <cmath>
#include <istream>
#include <random>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

std::string_view to_string(EmbeddingFeature f) {
  switch (f) {
    case EmbeddingFeature::Lemma:
      return "lemma";
    case EmbeddingFeature::Pos:
      return "pos";
    case EmbeddingFeature::Deprel:
      return "deprel";
    case EmbeddingFeature::Dist:
      return "dist";
    case EmbeddingFeature::Dir:
      return "dir";
    case EmbeddingFeature::Word:
      return "word";
  }
  return "lemma";
}

EmbeddingTable init_random(EmbeddingFeature feature, int vocab_size, int dim,
                           std::uint64_t seed, double range) {
  if (dim <= 0) throw ConfigError("embedding dimension must be positive");
  if (vocab_size < 0) throw ConfigError("negative vocabulary size");
  EmbeddingTable t;
  t.feature = feature;
  t.matrix.resize(vocab_size, dim);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-range, range);
  // row-major fill so a table's prefix rows do not depend on its size
  for (int r = 0; r < vocab_size; ++r) {
    for (int c = 0; c < dim; ++c) t.matrix(r, c) = uniform(rng);
  }
  return t;
}

VectorFile read_vector_file(std::istream& in, int dim,
                            const std::unordered_set<std::string>* wanted) {
  if (dim <= 0) throw ConfigError("embedding dimension must be positive");
  VectorFile out;
  out.dim = dim;
  std::string line;
  std::size_t line_no = 0;
  bool first = true;
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = text::split_whitespace(line);
    if (fields.empty()) continue;
    if (first) {
      first = false;
      // word2vec-style "count dim" header
      if (fields.size() == 2 && text::parse_number<long>(fields[0]) &&
          text::parse_number<long>(fields[1]) && dim != 1) {
        continue;
      }
      if (static_cast<int>(fields.size()) - 1 != dim) {
        throw ParseError(line_no, "vector file has dimension " +
                                      std::to_string(fields.size() - 1) +
                                      ", configured dimension is " +
                                      std::to_string(dim));
      }
    }
    if (static_cast<int>(fields.size()) - 1 != dim) {
      throw ParseError(line_no, "expected " + std::to_string(dim) +
                                    " values, got " +
                                    std::to_string(fields.size() - 1));
    }
    std::string word(fields[0]);
    if (wanted && !wanted->contains(word)) continue;
    std::vector<double> values(static_cast<std::size_t>(dim));
    for (int i = 0; i < dim; ++i) {
      const auto v = text::parse_number<double>(fields[static_cast<std::size_t>(i) + 1]);
      if (!v || !std::isfinite(*v)) {
        throw ParseError(line_no, "bad vector component '" +
                                      std::string(fields[static_cast<std::size_t>(i) + 1]) +
                                      "'");
      }
      values[static_cast<std::size_t>(i)] = *v;
    }
    // first occurrence wins
    out.vectors.emplace(std::move(word), std::move(values));
  }
  return out;
}

PretrainedTable from_vectors(EmbeddingFeature feature, const VectorFile& vectors,
                             const SymbolTable& vocab, std::uint64_t seed) {
  PretrainedTable out;
  out.table = init_random(feature, vocab.size(), vectors.dim, seed);
  for (int i = 0; i < vocab.size(); ++i) {
    const auto it = vectors.vectors.find(vocab.symbol(i));
    if (it == vectors.vectors.end()) continue;
    for (int c = 0; c < vectors.dim; ++c) {
      out.table.matrix(i, c) = it->second[static_cast<std::size_t>(c)];
    }
    ++out.found;
  }
  out.coverage = vocab.size() == 0 ? 0.0
                                   : static_cast<double>(out.found) /
                                         static_cast<double>(vocab.size());
  return out;
}

PretrainedTable load_pretrained(std::istream& in, EmbeddingFeature feature,
                                const SymbolTable& vocab, int dim, std::uint64_t seed) {
  const std::unordered_set<std::string> wanted(vocab.symbols().begin(),
                                               vocab.symbols().end());
  return from_vectors(feature, read_vector_file(in, dim, &wanted), vocab, seed);
}

}  // namespace antsyn
