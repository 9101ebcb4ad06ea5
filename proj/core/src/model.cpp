#include "antsyn/model.hpp"

#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <random>

#include "antsyn/error.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

std::string_view to_string(Variant v) {
  return v == Variant::Pattern ? "pattern" : "combined";
}

Variant variant_from_string(std::string_view s) {
  if (s == "pattern") return Variant::Pattern;
  if (s == "combined") return Variant::Combined;
  throw ConfigError("unknown variant '" + std::string(s) +
                    "' (expected pattern or combined)");
}

void ModelConfig::validate() const {
  if (lemma_dim <= 0 || label_dim <= 0 || word_dim <= 0 || hidden_dim <= 0) {
    throw ConfigError("embedding and hidden dimensions must be positive");
  }
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must be in [0, 1)");
  if (epochs < 0) throw ConfigError("epochs must be non-negative");
  if (batch_size <= 0) throw ConfigError("batch size must be positive");
  if (!(adadelta_rho > 0.0 && adadelta_rho < 1.0)) {
    throw ConfigError("adadelta rho must be in (0, 1)");
  }
  if (!(adadelta_eps > 0.0)) throw ConfigError("adadelta eps must be positive");
  if (max_path_len < 2) throw ConfigError("max path length must be at least 2");
  if (threads < 1) throw ConfigError("threads must be at least 1");
}

LstmParams LstmParams::zeros(int hidden_dim, int node_dim) {
  LstmParams p;
  for (int g = 0; g < kNumGates; ++g) {
    p.W[g] = Eigen::MatrixXd::Zero(hidden_dim, node_dim);
    p.U[g] = Eigen::MatrixXd::Zero(hidden_dim, hidden_dim);
    p.b[g] = Eigen::VectorXd::Zero(hidden_dim);
  }
  return p;
}

DenseParams DenseParams::zeros(const ModelConfig& config) {
  DenseParams d;
  d.lstm = LstmParams::zeros(config.hidden_dim, config.node_dim());
  d.lr_weights = Eigen::VectorXd::Zero(config.classifier_dim());
  d.lr_bias = 0.0;
  return d;
}

namespace {

constexpr std::array<char, kNumGates> kGateSuffix = {'i', 'f', 'o', 'c'};

template <typename Block, typename Dense>
std::vector<Block> collect_blocks(Dense& d) {
  using MapT = decltype(Block::values);
  auto view = [](auto& m) { return MapT(m.data(), m.rows(), m.cols()); };
  std::vector<Block> out;
  out.reserve(3 * kNumGates + 2);
  for (int g = 0; g < kNumGates; ++g) {
    out.push_back({std::string("lstm.W_") + kGateSuffix[g], view(d.lstm.W[g])});
  }
  for (int g = 0; g < kNumGates; ++g) {
    out.push_back({std::string("lstm.U_") + kGateSuffix[g], view(d.lstm.U[g])});
  }
  for (int g = 0; g < kNumGates; ++g) {
    out.push_back({std::string("lstm.b_") + kGateSuffix[g], view(d.lstm.b[g])});
  }
  out.push_back({"lr.w", view(d.lr_weights)});
  out.push_back({"lr.b", MapT(&d.lr_bias, 1, 1)});
  return out;
}

}  // namespace

std::vector<NamedBlock> blocks(DenseParams& d) { return collect_blocks<NamedBlock>(d); }

std::vector<ConstNamedBlock> blocks(const DenseParams& d) {
  return collect_blocks<ConstNamedBlock>(d);
}

std::string table_block_name(TableId id, FeatureMode mode) {
  switch (id) {
    case kLemmaTable:
      return "emb.lemma";
    case kPosTable:
      return "emb.pos";
    case kDeprelTable:
      return "emb.deprel";
    case kLabelTable:
      return mode == FeatureMode::Distance ? "emb.dist" : "emb.dir";
    case kWordTable:
      return "emb.word";
  }
  return "emb.unknown";
}

bool ModelParams::all_finite() const {
  for (const auto& b : blocks(dense)) {
    if (!b.values.allFinite()) return false;
  }
  for (const auto& t : tables) {
    if (!t.all_finite()) return false;
  }
  return true;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 over the combined value
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

enum SeedStream : std::uint64_t {
  kDenseInit = 1,
  kTableInit = 10,  // + TableId
};

void glorot(Eigen::MatrixXd& m, std::mt19937_64& rng) {
  const double limit =
      std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = u(rng);
  }
}

}  // namespace

ModelParams init_model(const ModelConfig& config, const Vocabulary& vocab,
                       const VectorFile* pretrained) {
  config.validate();
  ModelParams p;
  p.config = config;
  p.dense = DenseParams::zeros(config);

  std::mt19937_64 rng(derive_seed(config.seed, kDenseInit));
  for (int g = 0; g < kNumGates; ++g) {
    glorot(p.dense.lstm.W[g], rng);
    glorot(p.dense.lstm.U[g], rng);
  }
  p.dense.lstm.b[kForgetGate].setOnes();
  {
    const double limit =
        std::sqrt(6.0 / static_cast<double>(p.dense.lr_weights.size() + 1));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (Eigen::Index i = 0; i < p.dense.lr_weights.size(); ++i) {
      p.dense.lr_weights(i) = u(rng);
    }
  }

  const bool direction = config.feature_mode == FeatureMode::Direction;
  const SymbolTable& label_vocab = direction ? vocab.dir : vocab.dist;
  auto seed_for = [&](TableId id) { return derive_seed(config.seed, kTableInit + static_cast<std::uint64_t>(id)); };

  if (pretrained) {
    if (pretrained->dim != config.lemma_dim) {
      throw ConfigError("pretrained vectors have dimension " +
                        std::to_string(pretrained->dim) + ", lemma_dim is " +
                        std::to_string(config.lemma_dim));
    }
    p.tables[kLemmaTable] = from_vectors(EmbeddingFeature::Lemma, *pretrained,
                                         vocab.lemma, seed_for(kLemmaTable))
                                .table;
  } else {
    p.tables[kLemmaTable] = init_random(EmbeddingFeature::Lemma, vocab.lemma.size(),
                                        config.lemma_dim, seed_for(kLemmaTable));
  }
  p.tables[kPosTable] = init_random(EmbeddingFeature::Pos, vocab.pos.size(),
                                    config.label_dim, seed_for(kPosTable));
  p.tables[kDeprelTable] = init_random(EmbeddingFeature::Deprel, vocab.deprel.size(),
                                       config.label_dim, seed_for(kDeprelTable));
  p.tables[kLabelTable] =
      init_random(direction ? EmbeddingFeature::Dir : EmbeddingFeature::Dist,
                  label_vocab.size(), config.label_dim, seed_for(kLabelTable));

  if (config.variant == Variant::Combined) {
    if (pretrained) {
      if (pretrained->dim != config.word_dim) {
        throw ConfigError("pretrained vectors have dimension " +
                          std::to_string(pretrained->dim) + ", word_dim is " +
                          std::to_string(config.word_dim));
      }
      p.tables[kWordTable] = from_vectors(EmbeddingFeature::Word, *pretrained,
                                          vocab.word, seed_for(kWordTable))
                                 .table;
    } else {
      p.tables[kWordTable] = init_random(EmbeddingFeature::Word, vocab.word.size(),
                                         config.word_dim, seed_for(kWordTable));
    }
  } else {
    p.tables[kWordTable].feature = EmbeddingFeature::Word;
    p.tables[kWordTable].matrix.resize(0, config.word_dim);
  }
  return p;
}

// ---------------------------------------------------------------------------
// Checkpoints

namespace {

constexpr std::string_view kMagic = "antsyn-checkpoint 1";

void write_block(std::ostream& out, std::string_view name,
                 const Eigen::Ref<const Eigen::MatrixXd>& m) {
  out << '[' << name << "] " << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c > 0) out << ' ';
      out << text::format_double(m(r, c));
    }
    out << '\n';
  }
}

}  // namespace

void write_checkpoint(std::ostream& out, const ModelParams& params) {
  const ModelConfig& c = params.config;
  out << kMagic << '\n';
  out << "config variant " << to_string(c.variant) << '\n'
      << "config feature_mode " << to_string(c.feature_mode) << '\n'
      << "config lemma_dim " << c.lemma_dim << '\n'
      << "config label_dim " << c.label_dim << '\n'
      << "config word_dim " << c.word_dim << '\n'
      << "config hidden_dim " << c.hidden_dim << '\n'
      << "config dropout " << text::format_double(c.dropout) << '\n'
      << "config epochs " << c.epochs << '\n'
      << "config batch_size " << c.batch_size << '\n'
      << "config seed " << c.seed << '\n'
      << "config adadelta_rho " << text::format_double(c.adadelta_rho) << '\n'
      << "config adadelta_eps " << text::format_double(c.adadelta_eps) << '\n'
      << "config max_path_len " << c.max_path_len << '\n';
  for (const auto& b : blocks(params.dense)) write_block(out, b.name, b.values);
  for (int t = 0; t < kNumTables; ++t) {
    if (t == kWordTable && c.variant != Variant::Combined) continue;
    write_block(out, table_block_name(static_cast<TableId>(t), c.feature_mode),
                params.tables[static_cast<std::size_t>(t)].matrix);
  }
}

namespace {

class LineReader {
 public:
  explicit LineReader(std::istream& in) : in_(in) {}

  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  }
  std::size_t line_no() const { return line_no_; }

 private:
  std::istream& in_;
  std::size_t line_no_ = 0;
};

template <typename T>
T config_number(const std::map<std::string, std::string>& cfg, const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) throw ParseError(0, "checkpoint lacks config '" + key + "'");
  const auto v = text::parse_number<T>(it->second);
  if (!v) throw ParseError(0, "bad checkpoint config value for '" + key + "'");
  return *v;
}

}  // namespace

ModelParams read_checkpoint(std::istream& in) {
  LineReader reader(in);
  std::string line;
  if (!reader.next(line) || line != kMagic) {
    throw ParseError(reader.line_no(), "not an antsyn checkpoint");
  }
  std::map<std::string, std::string> cfg;
  std::map<std::string, Eigen::MatrixXd> read_blocks;
  bool have_line = reader.next(line);
  while (have_line) {
    const auto fields = text::split_whitespace(line);
    if (fields.size() == 3 && fields[0] == "config") {
      cfg[std::string(fields[1])] = std::string(fields[2]);
      have_line = reader.next(line);
      continue;
    }
    if (fields.size() != 3 || fields[0].size() < 3 || fields[0].front() != '[' ||
        fields[0].back() != ']') {
      throw ParseError(reader.line_no(), "expected `[block] rows cols`");
    }
    const std::string name(fields[0].substr(1, fields[0].size() - 2));
    const auto rows = text::parse_number<long>(fields[1]);
    const auto cols = text::parse_number<long>(fields[2]);
    if (!rows || !cols || *rows < 0 || *cols < 0) {
      throw ParseError(reader.line_no(), "bad block shape");
    }
    Eigen::MatrixXd m(*rows, *cols);
    for (long r = 0; r < *rows; ++r) {
      if (!reader.next(line)) throw ParseError(reader.line_no(), "truncated block " + name);
      const auto values = text::split_whitespace(line);
      if (static_cast<long>(values.size()) != *cols) {
        throw ParseError(reader.line_no(), "block " + name + " row has " +
                                               std::to_string(values.size()) +
                                               " values, expected " +
                                               std::to_string(*cols));
      }
      for (long c = 0; c < *cols; ++c) {
        const auto v = text::parse_number<double>(values[static_cast<std::size_t>(c)]);
        if (!v) throw ParseError(reader.line_no(), "bad number in block " + name);
        m(r, c) = *v;
      }
    }
    if (!read_blocks.emplace(name, std::move(m)).second) {
      throw ParseError(reader.line_no(), "duplicate block " + name);
    }
    have_line = reader.next(line);
  }

  ModelParams p;
  ModelConfig& c = p.config;
  c.variant = variant_from_string(cfg["variant"]);
  c.feature_mode = feature_mode_from_string(cfg["feature_mode"]);
  c.lemma_dim = config_number<int>(cfg, "lemma_dim");
  c.label_dim = config_number<int>(cfg, "label_dim");
  c.word_dim = config_number<int>(cfg, "word_dim");
  c.hidden_dim = config_number<int>(cfg, "hidden_dim");
  c.dropout = config_number<double>(cfg, "dropout");
  c.epochs = config_number<int>(cfg, "epochs");
  c.batch_size = config_number<int>(cfg, "batch_size");
  c.seed = config_number<std::uint64_t>(cfg, "seed");
  c.adadelta_rho = config_number<double>(cfg, "adadelta_rho");
  c.adadelta_eps = config_number<double>(cfg, "adadelta_eps");
  c.max_path_len = config_number<int>(cfg, "max_path_len");
  c.validate();

  p.dense = DenseParams::zeros(c);
  auto take = [&](const std::string& name, long rows, long cols) {
    auto it = read_blocks.find(name);
    if (it == read_blocks.end()) throw ParseError(0, "checkpoint lacks block " + name);
    if (rows >= 0 && it->second.rows() != rows) {
      throw ParseError(0, "block " + name + " has wrong row count");
    }
    if (it->second.cols() != cols) {
      throw ParseError(0, "block " + name + " has wrong column count");
    }
    Eigen::MatrixXd m = std::move(it->second);
    read_blocks.erase(it);
    return m;
  };
  for (auto& b : blocks(p.dense)) {
    b.values = take(b.name, b.values.rows(), b.values.cols());
  }
  const std::array<EmbeddingFeature, kNumTables> features = {
      EmbeddingFeature::Lemma, EmbeddingFeature::Pos, EmbeddingFeature::Deprel,
      c.feature_mode == FeatureMode::Distance ? EmbeddingFeature::Dist
                                              : EmbeddingFeature::Dir,
      EmbeddingFeature::Word};
  const std::array<int, kNumTables> dims = {c.lemma_dim, c.label_dim, c.label_dim,
                                            c.label_dim, c.word_dim};
  for (int t = 0; t < kNumTables; ++t) {
    auto& table = p.tables[static_cast<std::size_t>(t)];
    table.feature = features[static_cast<std::size_t>(t)];
    if (t == kWordTable && c.variant != Variant::Combined) {
      table.matrix.resize(0, c.word_dim);
      continue;
    }
    table.matrix = take(table_block_name(static_cast<TableId>(t), c.feature_mode), -1,
                        dims[static_cast<std::size_t>(t)]);
  }
  if (!read_blocks.empty()) {
    throw ParseError(0, "unexpected checkpoint block " + read_blocks.begin()->first);
  }
  return p;
}

}  // namespace antsyn
