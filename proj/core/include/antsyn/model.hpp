#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "antsyn/dataset.hpp"
#include "antsyn/embeddings.hpp"
#include "antsyn/pattern.hpp"

namespace antsyn {

enum class Variant { Pattern, Combined };

std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);

struct ModelConfig {
  Variant variant = Variant::Pattern;
  FeatureMode feature_mode = FeatureMode::Distance;
  int lemma_dim = 100;
  int label_dim = 10;  // POS, dependency and distance/direction embeddings
  int word_dim = 100;  // combined variant only
  int hidden_dim = 100;
  double dropout = 0.5;
  int epochs = 40;
  int batch_size = 32;
  std::uint64_t seed = 1;
  double adadelta_rho = 0.95;
  double adadelta_eps = 1e-6;
  int max_path_len = 10;
  int threads = 1;

  int node_dim() const { return lemma_dim + 3 * label_dim; }
  int classifier_dim() const {
    return variant == Variant::Combined ? hidden_dim + 2 * word_dim : hidden_dim;
  }

  // Throws ConfigError when a field is out of range.
  void validate() const;

  bool operator==(const ModelConfig&) const = default;
};

enum Gate { kInputGate = 0, kForgetGate = 1, kOutputGate = 2, kCellGate = 3 };
inline constexpr int kNumGates = 4;

// Per gate: W (hidden x node), U (hidden x hidden), b (hidden).
struct LstmParams {
  std::array<Eigen::MatrixXd, kNumGates> W;
  std::array<Eigen::MatrixXd, kNumGates> U;
  std::array<Eigen::VectorXd, kNumGates> b;

  static LstmParams zeros(int hidden_dim, int node_dim);
  int hidden_dim() const { return static_cast<int>(b[0].size()); }
  int node_dim() const { return static_cast<int>(W[0].cols()); }
};

// The dense (non-embedding) parameters. Also used for gradients and optimizer
// state, which mirror the parameter shapes.
struct DenseParams {
  LstmParams lstm;
  Eigen::VectorXd lr_weights;
  double lr_bias = 0.0;

  static DenseParams zeros(const ModelConfig& config);
};

struct NamedBlock {
  std::string name;
  Eigen::Map<Eigen::MatrixXd> values;
};

struct ConstNamedBlock {
  std::string name;
  Eigen::Map<const Eigen::MatrixXd> values;
};

// Views of every dense block in a fixed order (W, U, b per gate, then lr.w, lr.b).
std::vector<NamedBlock> blocks(DenseParams& d);
std::vector<ConstNamedBlock> blocks(const DenseParams& d);

enum TableId { kLemmaTable = 0, kPosTable, kDeprelTable, kLabelTable, kWordTable };
inline constexpr int kNumTables = 5;

std::string table_block_name(TableId id, FeatureMode mode);

struct ModelParams {
  ModelConfig config;
  DenseParams dense;
  // The label table holds distance or direction embeddings per feature mode.
  // The word table is empty (0 rows) for the pattern variant.
  std::array<EmbeddingTable, kNumTables> tables;

  bool all_finite() const;
};

// Seeds derived from one run seed, one stream per consumer.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

// Glorot-uniform LSTM and classifier weights, forget-gate bias 1, other biases
// 0. Embeddings are random, except lemma and word rows found in `pretrained`.
ModelParams init_model(const ModelConfig& config, const Vocabulary& vocab,
                       const VectorFile* pretrained = nullptr);

// Line-oriented text: a `antsyn-checkpoint 1` line, `config <name> <value>`
// lines, then `[block] rows cols` headers each followed by `rows` lines of
// decimals. Doubles are written in shortest round-trip form.
void write_checkpoint(std::ostream& out, const ModelParams& params);
ModelParams read_checkpoint(std::istream& in);

}  // namespace antsyn
