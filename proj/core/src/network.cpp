#include "antsyn/network.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "antsyn/error.hpp"

namespace antsyn {

EncodedExample encode_example(const PairExample& e, const Vocabulary& vocab,
                              FeatureMode mode) {
  EncodedExample out;
  out.x_word = vocab.word.lookup(e.x);
  out.y_word = vocab.word.lookup(e.y);
  out.target = e.label == Label::Antonym ? 1.0 : 0.0;
  const SymbolTable& labels = mode == FeatureMode::Distance ? vocab.dist : vocab.dir;
  out.patterns.reserve(e.patterns.size());
  for (const Pattern& p : e.patterns) {
    EncodedPattern ep;
    ep.count = static_cast<double>(p.count);
    ep.nodes.reserve(p.nodes.size());
    for (const PatternNode& n : p.nodes) {
      ep.nodes.push_back(NodeIndex{vocab.lemma_index(n.lemma_slot), vocab.pos.lookup(n.pos),
                                   vocab.deprel.lookup(n.deprel), labels.lookup(n.label())});
    }
    out.patterns.push_back(std::move(ep));
  }
  return out;
}

std::vector<EncodedExample> encode_examples(const std::vector<PairExample>& examples,
                                            const Vocabulary& vocab, FeatureMode mode) {
  std::vector<EncodedExample> out;
  out.reserve(examples.size());
  for (const auto& e : examples) out.push_back(encode_example(e, vocab, mode));
  return out;
}

namespace {

std::array<int, 4> component_rows(const NodeIndex& node) {
  return {node.lemma, node.pos, node.deprel, node.label};
}

constexpr std::array<TableId, 4> kNodeTables = {kLemmaTable, kPosTable, kDeprelTable,
                                                kLabelTable};

}  // namespace

Eigen::VectorXd node_vector(const ModelParams& params, const NodeIndex& node,
                            double dropout, std::mt19937_64* rng, NodeMasks* masks) {
  const auto rows = component_rows(node);
  Eigen::Index total = 0;
  for (TableId t : kNodeTables) total += params.tables[t].dim();
  Eigen::VectorXd x(total);

  const bool drop = rng != nullptr && dropout > 0.0;
  std::bernoulli_distribution keep(1.0 - dropout);
  const double scale = drop ? 1.0 / (1.0 - dropout) : 1.0;

  Eigen::Index offset = 0;
  for (std::size_t k = 0; k < kNodeTables.size(); ++k) {
    const auto& table = params.tables[kNodeTables[k]];
    const int dim = table.dim();
    auto segment = x.segment(offset, dim);
    segment = table.row(rows[k]).transpose();
    if (drop) {
      Eigen::VectorXd mask(dim);
      for (int j = 0; j < dim; ++j) mask(j) = keep(*rng) ? scale : 0.0;
      segment.array() *= mask.array();
      if (masks) masks->component[k] = std::move(mask);
    } else if (masks) {
      masks->component[k].resize(0);
    }
    offset += dim;
  }
  return x;
}

double sigmoid(double z) {
  if (z >= 0.0) return 1.0 / (1.0 + std::exp(-z));
  const double e = std::exp(z);
  return e / (1.0 + e);
}

namespace {

Eigen::VectorXd sigmoid(const Eigen::VectorXd& z) {
  return z.unaryExpr([](double v) { return antsyn::sigmoid(v); });
}

}  // namespace

LstmStep lstm_step(const LstmParams& lstm, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev) {
  auto pre = [&](int g) -> Eigen::VectorXd {
    return lstm.W[g] * x + lstm.U[g] * h_prev + lstm.b[g];
  };
  LstmStep s;
  s.i = sigmoid(pre(kInputGate));
  s.f = sigmoid(pre(kForgetGate));
  s.o = sigmoid(pre(kOutputGate));
  s.g = pre(kCellGate).array().tanh();
  s.c = s.i.cwiseProduct(s.g) + s.f.cwiseProduct(c_prev);
  s.tanh_c = s.c.array().tanh();
  s.h = s.o.cwiseProduct(s.tanh_c);
  return s;
}

Eigen::VectorXd encode_pattern(const LstmParams& lstm,
                               std::span<const Eigen::VectorXd> inputs,
                               std::vector<LstmStep>* steps) {
  if (inputs.empty()) throw Error("cannot encode an empty pattern");
  const int hidden = lstm.hidden_dim();
  Eigen::VectorXd h = Eigen::VectorXd::Zero(hidden);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(hidden);
  if (steps) {
    steps->clear();
    steps->reserve(inputs.size());
  }
  for (const auto& x : inputs) {
    LstmStep s = lstm_step(lstm, x, h, c);
    h = s.h;
    c = s.c;
    if (steps) steps->push_back(std::move(s));
  }
  return h;
}

Eigen::VectorXd pool_patterns(
    std::span<const std::pair<Eigen::VectorXd, double>> encoded) {
  if (encoded.empty()) throw Error("cannot pool an empty pattern list");
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(encoded.front().first.size());
  double total = 0.0;
  for (const auto& [v, c] : encoded) {
    if (!(c > 0.0)) throw Error("pattern counts must be positive");
    sum += v * c;
    total += c;
  }
  return sum / total;
}

Eigen::VectorXd combine(const Eigen::VectorXd& v_x, const Eigen::VectorXd& v_xy,
                        const Eigen::VectorXd& v_y) {
  Eigen::VectorXd out(v_x.size() + v_xy.size() + v_y.size());
  out << v_x, v_xy, v_y;
  return out;
}

Label decide(double probability) {
  return probability > 0.5 ? Label::Antonym : Label::Synonym;
}

Prediction predict(const Eigen::VectorXd& weights, double bias, const Eigen::VectorXd& v) {
  if (weights.size() != v.size()) throw Error("classifier input has the wrong length");
  const double z = weights.dot(v) + bias;
  return {sigmoid(z), z > 0.0 ? Label::Antonym : Label::Synonym};
}

double loss(double probability, double target) {
  const double p = std::clamp(probability, kProbabilityClamp, 1.0 - kProbabilityClamp);
  return -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
}

// ---------------------------------------------------------------------------

double forward(const ModelParams& params, const EncodedExample& example,
               std::mt19937_64* rng, ExampleTrace* trace) {
  const ModelConfig& cfg = params.config;
  ExampleTrace local;
  ExampleTrace& t = trace ? *trace : local;
  t.patterns.assign(example.patterns.size(), PatternTrace{});

  std::vector<std::pair<Eigen::VectorXd, double>> encoded;
  encoded.reserve(example.patterns.size());
  for (std::size_t p = 0; p < example.patterns.size(); ++p) {
    const EncodedPattern& pattern = example.patterns[p];
    PatternTrace& pt = t.patterns[p];
    pt.inputs.reserve(pattern.nodes.size());
    pt.masks.resize(pattern.nodes.size());
    for (std::size_t n = 0; n < pattern.nodes.size(); ++n) {
      pt.inputs.push_back(node_vector(params, pattern.nodes[n], cfg.dropout, rng, &pt.masks[n]));
    }
    encoded.emplace_back(encode_pattern(params.dense.lstm, pt.inputs, &pt.steps),
                         pattern.count);
  }
  t.v_xy = pool_patterns(encoded);
  if (cfg.variant == Variant::Combined) {
    const auto& words = params.tables[kWordTable];
    t.features = combine(words.row(example.x_word).transpose(), t.v_xy,
                         words.row(example.y_word).transpose());
  } else {
    t.features = t.v_xy;
  }
  t.logit = params.dense.lr_weights.dot(t.features) + params.dense.lr_bias;
  t.probability = sigmoid(t.logit);
  return loss(t.probability, example.target);
}

Prediction predict_example(const ModelParams& params, const EncodedExample& example) {
  ExampleTrace trace;
  forward(params, example, nullptr, &trace);
  return {trace.probability, trace.logit > 0.0 ? Label::Antonym : Label::Synonym};
}

void RowGradients::add(int row, const Eigen::Ref<const Eigen::VectorXd>& g) {
  auto [it, inserted] = rows.try_emplace(row);
  if (inserted) {
    it->second = g;
  } else {
    it->second += g;
  }
}

const Eigen::VectorXd* RowGradients::find(int row) const {
  const auto it = rows.find(row);
  return it == rows.end() ? nullptr : &it->second;
}

Gradients Gradients::zeros(const ModelConfig& config) {
  Gradients g;
  g.dense = DenseParams::zeros(config);
  return g;
}

Gradients& Gradients::operator+=(const Gradients& o) {
  auto mine = blocks(dense);
  const auto theirs = blocks(o.dense);
  for (std::size_t b = 0; b < mine.size(); ++b) mine[b].values += theirs[b].values;
  for (std::size_t t = 0; t < tables.size(); ++t) {
    for (const auto& [row, g] : o.tables[t].rows) tables[t].add(row, g);
  }
  return *this;
}

void backward(const ModelParams& params, const EncodedExample& example,
              const ExampleTrace& trace, double scale, Gradients& grads) {
  const ModelConfig& cfg = params.config;
  const LstmParams& lstm = params.dense.lstm;
  const int hidden = cfg.hidden_dim;

  const double dz = scale * (trace.probability - example.target);
  grads.dense.lr_weights += dz * trace.features;
  grads.dense.lr_bias += dz;
  const Eigen::VectorXd dfeatures = dz * params.dense.lr_weights;

  Eigen::VectorXd dv_xy;
  if (cfg.variant == Variant::Combined) {
    const int wd = cfg.word_dim;
    grads.tables[kWordTable].add(example.x_word, dfeatures.head(wd));
    grads.tables[kWordTable].add(example.y_word, dfeatures.tail(wd));
    dv_xy = dfeatures.segment(wd, hidden);
  } else {
    dv_xy = dfeatures;
  }

  double total = 0.0;
  for (const auto& p : example.patterns) total += p.count;

  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(hidden);
  std::array<Eigen::VectorXd, kNumGates> da;
  for (std::size_t p = 0; p < example.patterns.size(); ++p) {
    const EncodedPattern& pattern = example.patterns[p];
    const PatternTrace& pt = trace.patterns[p];
    Eigen::VectorXd dh = dv_xy * (pattern.count / total);
    Eigen::VectorXd dc_next = zero;

    for (std::size_t t = pt.steps.size(); t-- > 0;) {
      const LstmStep& s = pt.steps[t];
      const Eigen::VectorXd& h_prev = t > 0 ? pt.steps[t - 1].h : zero;
      const Eigen::VectorXd& c_prev = t > 0 ? pt.steps[t - 1].c : zero;

      const Eigen::VectorXd d_o = dh.cwiseProduct(s.tanh_c);
      const Eigen::VectorXd dc =
          dc_next + dh.cwiseProduct(s.o).cwiseProduct(
                        (1.0 - s.tanh_c.array().square()).matrix());
      da[kInputGate] = (dc.array() * s.g.array() * s.i.array() * (1.0 - s.i.array())).matrix();
      da[kForgetGate] = (dc.array() * c_prev.array() * s.f.array() * (1.0 - s.f.array())).matrix();
      da[kOutputGate] = (d_o.array() * s.o.array() * (1.0 - s.o.array())).matrix();
      da[kCellGate] = (dc.array() * s.i.array() * (1.0 - s.g.array().square())).matrix();
      dc_next = dc.cwiseProduct(s.f);

      const Eigen::VectorXd& x = pt.inputs[t];
      Eigen::VectorXd dx = Eigen::VectorXd::Zero(x.size());
      dh.setZero();
      for (int g = 0; g < kNumGates; ++g) {
        grads.dense.lstm.W[g].noalias() += da[g] * x.transpose();
        grads.dense.lstm.U[g].noalias() += da[g] * h_prev.transpose();
        grads.dense.lstm.b[g] += da[g];
        dx.noalias() += lstm.W[g].transpose() * da[g];
        dh.noalias() += lstm.U[g].transpose() * da[g];
      }

      const auto rows = component_rows(pattern.nodes[t]);
      const NodeMasks& masks = pt.masks[t];
      Eigen::Index offset = 0;
      for (std::size_t k = 0; k < kNodeTables.size(); ++k) {
        const int dim = params.tables[kNodeTables[k]].dim();
        if (masks.component[k].size() == dim) {
          grads.tables[kNodeTables[k]].add(
              rows[k], dx.segment(offset, dim).cwiseProduct(masks.component[k]));
        } else {
          grads.tables[kNodeTables[k]].add(rows[k], dx.segment(offset, dim));
        }
        offset += dim;
      }
    }
  }
}

std::uint64_t dropout_seed(std::uint64_t seed, std::uint64_t epoch, std::uint64_t position) {
  return derive_seed(derive_seed(seed, 1000 + epoch), position);
}

double batch_gradients(const ModelParams& params,
                       std::span<const EncodedExample* const> batch,
                       std::span<const std::uint64_t> seeds, Gradients& grads,
                       int threads) {
  if (batch.empty()) return 0.0;
  if (!seeds.empty() && seeds.size() != batch.size()) {
    throw Error("batch_gradients: one dropout seed per example required");
  }
  const std::size_t n = batch.size();
  const double scale = 1.0 / static_cast<double>(n);
  std::vector<Gradients> per_example(n);
  std::vector<double> losses(n, 0.0);

  auto run = [&](std::size_t lo, std::size_t hi) {
    for (std::size_t k = lo; k < hi; ++k) {
      per_example[k] = Gradients::zeros(params.config);
      ExampleTrace trace;
      if (seeds.empty()) {
        losses[k] = forward(params, *batch[k], nullptr, &trace);
      } else {
        std::mt19937_64 rng(seeds[k]);
        losses[k] = forward(params, *batch[k], &rng, &trace);
      }
      backward(params, *batch[k], trace, scale, per_example[k]);
    }
  };

  const auto workers = static_cast<std::size_t>(
      std::clamp<std::size_t>(static_cast<std::size_t>(std::max(threads, 1)), 1, n));
  if (workers == 1) {
    run(0, n);
  } else {
    std::vector<std::thread> pool;
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t lo = std::min(n, w * chunk);
      pool.emplace_back(run, lo, std::min(n, lo + chunk));
    }
    for (auto& t : pool) t.join();
  }

  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    grads += per_example[k];
    total += losses[k];
  }
  return total / static_cast<double>(n);
}

}  // namespace antsyn
