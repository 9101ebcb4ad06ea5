#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <Eigen/Core>

#include "antsyn/dataset.hpp"

namespace antsyn {

enum class EmbeddingFeature { Lemma, Pos, Deprel, Dist, Dir, Word };

std::string_view to_string(EmbeddingFeature f);

inline constexpr double kEmbeddingInitRange = 0.05;

// One row per vocabulary index.
struct EmbeddingTable {
  EmbeddingFeature feature = EmbeddingFeature::Lemma;
  Eigen::MatrixXd matrix;  // vocab_size x dim
  bool trainable = true;

  int rows() const { return static_cast<int>(matrix.rows()); }
  int dim() const { return static_cast<int>(matrix.cols()); }
  auto row(int index) const { return matrix.row(index); }
  auto row(int index) { return matrix.row(index); }

  bool all_finite() const { return matrix.allFinite(); }
};

// Rows i.i.d. uniform on [-range, range], deterministic in `seed`.
EmbeddingTable init_random(EmbeddingFeature feature, int vocab_size, int dim,
                           std::uint64_t seed, double range = kEmbeddingInitRange);

// Word vectors read from a `word v1 ... v_dim` text file.
struct VectorFile {
  int dim = 0;
  std::unordered_map<std::string, std::vector<double>> vectors;
};

// Reads a text vector file. An optional leading `count dim` header line is
// skipped. When `wanted` is non-null only those words are kept. Throws
// ParseError on a line whose length differs from `dim`.
VectorFile read_vector_file(std::istream& in, int dim,
                            const std::unordered_set<std::string>* wanted = nullptr);

struct PretrainedTable {
  EmbeddingTable table;
  std::int64_t found = 0;  // vocabulary rows filled from the file
  double coverage = 0.0;   // found / vocabulary size
};

// Rows of words present in `vectors` are copied bit-for-bit; all others,
// including reserved symbols, are randomly initialized from `seed`.
PretrainedTable from_vectors(EmbeddingFeature feature, const VectorFile& vectors,
                             const SymbolTable& vocab, std::uint64_t seed);

PretrainedTable load_pretrained(std::istream& in, EmbeddingFeature feature,
                                const SymbolTable& vocab, int dim, std::uint64_t seed);

}  // namespace antsyn
