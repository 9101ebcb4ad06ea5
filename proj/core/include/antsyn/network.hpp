#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "antsyn/dataset.hpp"
#include "antsyn/model.hpp"

namespace antsyn {

// ---------------------------------------------------------------------------
// Vocabulary-resolved inputs

struct NodeIndex {
  int lemma = 0;
  int pos = 0;
  int deprel = 0;
  int label = 0;  // distance or direction row

  bool operator==(const NodeIndex&) const = default;
};

struct EncodedPattern {
  std::vector<NodeIndex> nodes;
  double count = 1.0;
};

struct EncodedExample {
  int x_word = 0;
  int y_word = 0;
  double target = 0.0;  // 1 = antonym
  std::vector<EncodedPattern> patterns;
};

EncodedExample encode_example(const PairExample& e, const Vocabulary& vocab,
                              FeatureMode mode);
std::vector<EncodedExample> encode_examples(const std::vector<PairExample>& examples,
                                            const Vocabulary& vocab, FeatureMode mode);

// ---------------------------------------------------------------------------
// Building blocks

// Inverted-dropout masks for the four components of one node; empty vectors
// mean no masking.
struct NodeMasks {
  std::array<Eigen::VectorXd, 4> component;
};

// [lemma ⊕ pos ⊕ dep ⊕ label]. With `rng` set and a positive dropout rate,
// each component is masked independently and survivors scaled by 1/(1-rate).
Eigen::VectorXd node_vector(const ModelParams& params, const NodeIndex& node,
                            double dropout, std::mt19937_64* rng,
                            NodeMasks* masks = nullptr);

struct LstmStep {
  Eigen::VectorXd i, f, o, g;  // gate activations
  Eigen::VectorXd c, h;
  Eigen::VectorXd tanh_c;
};

LstmStep lstm_step(const LstmParams& lstm, const Eigen::VectorXd& x,
                   const Eigen::VectorXd& h_prev, const Eigen::VectorXd& c_prev);

// Runs the LSTM from zero state over `inputs` and returns the last hidden state.
Eigen::VectorXd encode_pattern(const LstmParams& lstm,
                               std::span<const Eigen::VectorXd> inputs,
                               std::vector<LstmStep>* steps = nullptr);

// sum(v_p * c_p) / sum(c_p). Throws Error on an empty list or c_p <= 0.
Eigen::VectorXd pool_patterns(std::span<const std::pair<Eigen::VectorXd, double>> encoded);

Eigen::VectorXd combine(const Eigen::VectorXd& v_x, const Eigen::VectorXd& v_xy,
                        const Eigen::VectorXd& v_y);

double sigmoid(double z);

struct Prediction {
  double probability = 0.5;
  Label label = Label::Synonym;
};

// Antonym iff the probability is strictly larger than 0.5.
Label decide(double probability);

// p = sigmoid(w.v + b). The label is read off the logit (antonym iff
// w.v + b > 0), which agrees with decide(p) but is exact near 0.5.
Prediction predict(const Eigen::VectorXd& weights, double bias, const Eigen::VectorXd& v);

inline constexpr double kProbabilityClamp = 1e-12;

// Binary cross-entropy with p clamped to [1e-12, 1 - 1e-12].
double loss(double probability, double target);

// ---------------------------------------------------------------------------
// Whole-model forward and backward

struct PatternTrace {
  std::vector<Eigen::VectorXd> inputs;
  std::vector<NodeMasks> masks;
  std::vector<LstmStep> steps;
};

struct ExampleTrace {
  std::vector<PatternTrace> patterns;
  Eigen::VectorXd v_xy;
  Eigen::VectorXd features;  // classifier input
  double logit = 0.0;
  double probability = 0.5;
};

// Forward pass for one example. Dropout is applied when `rng` is non-null.
double forward(const ModelParams& params, const EncodedExample& example,
               std::mt19937_64* rng, ExampleTrace* trace = nullptr);

Prediction predict_example(const ModelParams& params, const EncodedExample& example);

// Sparse per-row gradient of one embedding table.
struct RowGradients {
  std::map<int, Eigen::VectorXd> rows;

  void add(int row, const Eigen::Ref<const Eigen::VectorXd>& g);
  const Eigen::VectorXd* find(int row) const;
};

struct Gradients {
  DenseParams dense;
  std::array<RowGradients, kNumTables> tables;

  static Gradients zeros(const ModelConfig& config);
  Gradients& operator+=(const Gradients& o);
};

// Adds scale * d(loss)/d(params) for one traced example into `grads`.
void backward(const ModelParams& params, const EncodedExample& example,
              const ExampleTrace& trace, double scale, Gradients& grads);

// Seed of the dropout stream for one example visit.
std::uint64_t dropout_seed(std::uint64_t seed, std::uint64_t epoch, std::uint64_t position);

// Mean loss over `batch` and its gradient. Example k of the batch draws its
// dropout masks from seeds[k]; pass an empty span to disable dropout.
// Per-example gradients are reduced in batch order, so the result does not
// depend on `threads`.
double batch_gradients(const ModelParams& params,
                       std::span<const EncodedExample* const> batch,
                       std::span<const std::uint64_t> seeds, Gradients& grads,
                       int threads = 1);

}  // namespace antsyn
