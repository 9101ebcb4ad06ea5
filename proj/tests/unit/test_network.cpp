#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "antsyn/error.hpp"
#include "antsyn/gradcheck.hpp"
#include "antsyn/network.hpp"
#include "fixtures.hpp"

using namespace antsyn;
using namespace antsyn::testing;

namespace {

LstmParams random_lstm(int hidden, int node, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  LstmParams p = LstmParams::zeros(hidden, node);
  for (int g = 0; g < kNumGates; ++g) {
    for (Eigen::Index i = 0; i < p.W[g].size(); ++i) p.W[g].data()[i] = u(rng);
    for (Eigen::Index i = 0; i < p.U[g].size(); ++i) p.U[g].data()[i] = u(rng);
    for (Eigen::Index i = 0; i < p.b[g].size(); ++i) p.b[g].data()[i] = u(rng);
  }
  return p;
}

Eigen::VectorXd random_vector(int n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

// Straight transcription of the gate equations with scalar loops.
void oracle_step(const LstmParams& p, const std::vector<double>& x, std::vector<double>& h,
                 std::vector<double>& c) {
  const std::size_t H = h.size();
  auto gate = [&](int g, std::size_t r) {
    double z = p.b[g](static_cast<Eigen::Index>(r));
    for (std::size_t j = 0; j < x.size(); ++j) {
      z += p.W[g](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) * x[j];
    }
    for (std::size_t j = 0; j < H; ++j) {
      z += p.U[g](static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(j)) * h[j];
    }
    return z;
  };
  std::vector<double> h_new(H), c_new(H);
  for (std::size_t r = 0; r < H; ++r) {
    const double i = 1.0 / (1.0 + std::exp(-gate(kInputGate, r)));
    const double f = 1.0 / (1.0 + std::exp(-gate(kForgetGate, r)));
    const double o = 1.0 / (1.0 + std::exp(-gate(kOutputGate, r)));
    const double g = std::tanh(gate(kCellGate, r));
    c_new[r] = i * g + f * c[r];
    h_new[r] = o * std::tanh(c_new[r]);
  }
  h = h_new;
  c = c_new;
}

std::vector<double> to_std(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

ModelParams golden_model(Variant variant = Variant::Pattern) {
  const PairExample e{"old", "new", Label::Antonym, to_patterns({{kGoldenKey, 1}})};
  ModelConfig cfg;
  cfg.variant = variant;
  return init_model(cfg, build_vocabulary({e}));
}

}  // namespace

TEST(Network, NodeVectorDimensions) {
  const ModelParams p = golden_model();
  const NodeIndex n{3, 1, 1, 1};
  const Eigen::VectorXd v = node_vector(p, n, 0.0, nullptr);
  EXPECT_EQ(v.size(), 130);
  // no dropout: plain concatenation
  EXPECT_EQ(v.head(100), p.tables[kLemmaTable].row(3).transpose());
  EXPECT_EQ(v.segment(100, 10), p.tables[kPosTable].row(1).transpose());
  EXPECT_EQ(v.tail(10), p.tables[kLabelTable].row(1).transpose());
  std::mt19937_64 rng(1);
  EXPECT_EQ(node_vector(p, n, 0.0, &rng), v);
}

TEST(Network, DropoutMaskReplays) {
  const ModelParams p = golden_model();
  const NodeIndex n{3, 1, 1, 1};
  std::mt19937_64 a(17), b(17);
  NodeMasks ma, mb;
  const Eigen::VectorXd va = node_vector(p, n, 0.5, &a, &ma);
  const Eigen::VectorXd vb = node_vector(p, n, 0.5, &b, &mb);
  EXPECT_EQ(va, vb);
  for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(ma.component[k], mb.component[k]);
  const Eigen::VectorXd plain = node_vector(p, n, 0.0, nullptr);
  int zeros = 0;
  for (Eigen::Index i = 0; i < va.size(); ++i) {
    if (va(i) == 0.0) {
      ++zeros;
    } else {
      EXPECT_DOUBLE_EQ(va(i), 2.0 * plain(i));  // survivors scaled by 1/(1-0.5)
    }
  }
  EXPECT_GT(zeros, 30);
  EXPECT_LT(zeros, 100);
}

TEST(Network, LstmStepZeroWeights) {
  const LstmParams p = LstmParams::zeros(2, 3);
  const auto s = lstm_step(p, Eigen::VectorXd::Constant(3, 0.7), Eigen::VectorXd::Zero(2),
                           Eigen::VectorXd::Zero(2));
  EXPECT_EQ(s.h.size(), 2);
  EXPECT_EQ(s.c, Eigen::VectorXd::Zero(2));
  EXPECT_EQ(s.h, Eigen::VectorXd::Zero(2));
  std::vector<Eigen::VectorXd> xs(4, Eigen::VectorXd::Constant(3, 2.0));
  EXPECT_EQ(encode_pattern(p, xs), Eigen::VectorXd::Zero(2));
}

TEST(Network, LstmStepMatchesOracle) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 50; ++trial) {
    const LstmParams p = random_lstm(3, 3, rng);
    const Eigen::VectorXd x = random_vector(3, rng);
    const Eigen::VectorXd h0 = random_vector(3, rng);
    const Eigen::VectorXd c0 = random_vector(3, rng);
    const auto s = lstm_step(p, x, h0, c0);
    std::vector<double> h = to_std(h0), c = to_std(c0);
    oracle_step(p, to_std(x), h, c);
    for (int r = 0; r < 3; ++r) {
      EXPECT_NEAR(s.h(r), h[static_cast<std::size_t>(r)], 1e-14);
      EXPECT_NEAR(s.c(r), c[static_cast<std::size_t>(r)], 1e-14);
      EXPECT_LE(std::abs(s.h(r)), 1.0);
    }
  }
}

TEST(Network, EncodePatternMatchesOracleLoop) {
  std::mt19937_64 rng(12);
  for (int k : {1, 3, 6}) {
    const LstmParams p = random_lstm(4, 5, rng);
    std::vector<Eigen::VectorXd> xs;
    for (int t = 0; t < k; ++t) xs.push_back(random_vector(5, rng));
    std::vector<double> h(4, 0.0), c(4, 0.0);
    for (const auto& x : xs) oracle_step(p, to_std(x), h, c);
    const Eigen::VectorXd v = encode_pattern(p, xs);
    for (int r = 0; r < 4; ++r) EXPECT_NEAR(v(r), h[static_cast<std::size_t>(r)], 1e-14);
  }
}

TEST(Network, PoolPatternsExamples) {
  using Item = std::pair<Eigen::VectorXd, double>;
  auto vec = [](double a, double b) { return (Eigen::VectorXd(2) << a, b).finished(); };
  std::vector<Item> one = {{vec(1, 2), 3}};
  EXPECT_EQ(pool_patterns(one), vec(1, 2));
  std::vector<Item> two = {{vec(0, 0), 1}, {vec(2, 2), 1}};
  EXPECT_EQ(pool_patterns(two), vec(1, 1));
  std::vector<Item> weighted = {{vec(1, 0), 1}, {vec(4, 0), 2}};
  EXPECT_EQ(pool_patterns(weighted), vec(3, 0));
  std::vector<Item> none;
  EXPECT_THROW(pool_patterns(none), Error);
  std::vector<Item> zero = {{vec(1, 0), 0}};
  EXPECT_THROW(pool_patterns(zero), Error);
}

TEST(Network, CombineLayout) {
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(100, 1.0);
  const Eigen::VectorXd b = Eigen::VectorXd::Constant(100, 2.0);
  const Eigen::VectorXd c = Eigen::VectorXd::Constant(100, 3.0);
  const Eigen::VectorXd v = combine(a, b, c);
  EXPECT_EQ(v.size(), 300);
  EXPECT_NE(combine(a, b, c), combine(c, b, a));
  const Eigen::VectorXd z = combine(Eigen::VectorXd::Zero(100), b, Eigen::VectorXd::Zero(100));
  EXPECT_EQ(z.segment(100, 100), b);
  EXPECT_EQ(z.head(100), Eigen::VectorXd::Zero(100));
  EXPECT_EQ(z.tail(100), Eigen::VectorXd::Zero(100));
}

TEST(Network, PredictThreshold) {
  EXPECT_EQ(decide(0.6), Label::Antonym);
  EXPECT_EQ(decide(0.5), Label::Synonym);
  const Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
  const auto p = predict(w, 0.0, Eigen::VectorXd::Ones(3));
  EXPECT_EQ(p.probability, 0.5);
  EXPECT_EQ(p.label, Label::Synonym);
  const auto q = predict(w, std::log(0.6 / 0.4), Eigen::VectorXd::Ones(3));
  EXPECT_NEAR(q.probability, 0.6, 1e-15);
  EXPECT_EQ(q.label, Label::Antonym);
  EXPECT_THROW(predict(w, 0.0, Eigen::VectorXd::Ones(2)), Error);
}

TEST(Network, PredictLabelFollowsLogitSign) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1e-9, 1e-9);
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(1);
  for (int i = 0; i < 1000; ++i) {
    const double z = u(rng);
    const auto p = predict(w, 0.0, Eigen::VectorXd::Constant(1, z));
    EXPECT_EQ(p.label, z > 0 ? Label::Antonym : Label::Synonym);
  }
}

TEST(Network, LossValues) {
  EXPECT_NEAR(loss(1.0 - 1e-12, 1.0), 0.0, 1e-11);
  EXPECT_NEAR(loss(0.5, 1.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(loss(0.5, 0.0), std::log(2.0), 1e-15);
  EXPECT_NEAR(loss(0.9, 0.0), -std::log(0.1), 1e-12);
  EXPECT_NEAR(loss(0.9, 0.0), 2.3026, 1e-4);
  EXPECT_TRUE(std::isfinite(loss(0.0, 1.0)));
  EXPECT_NEAR(loss(0.0, 1.0), -std::log(1e-12), 1e-9);
}

TEST(Network, UntouchedRowsGetNoGradient) {
  GradCheckConfig c;
  c.variant = Variant::Combined;
  const auto fx = make_gradcheck_fixture(c);
  Gradients g = Gradients::zeros(fx.params.config);
  std::vector<const EncodedExample*> batch = {&fx.examples[0]};
  batch_gradients(fx.params, batch, {}, g);
  std::set<int> used;
  for (const auto& p : fx.examples[0].patterns) {
    for (const auto& n : p.nodes) used.insert(n.lemma);
  }
  for (int r = 0; r < fx.params.tables[kLemmaTable].rows(); ++r) {
    EXPECT_EQ(g.tables[kLemmaTable].find(r) != nullptr, used.count(r) == 1) << r;
  }
  for (const auto& [row, grad] : g.tables[kWordTable].rows) {
    EXPECT_TRUE(row == fx.examples[0].x_word || row == fx.examples[0].y_word);
  }
}

TEST(Network, BiasGradientIsMeanResidual) {
  GradCheckConfig c;
  c.batch_size = 5;
  const auto fx = make_gradcheck_fixture(c);
  std::vector<const EncodedExample*> batch;
  for (const auto& e : fx.examples) batch.push_back(&e);
  Gradients g = Gradients::zeros(fx.params.config);
  batch_gradients(fx.params, batch, {}, g);
  double mean = 0.0;
  for (const auto& e : fx.examples) {
    mean += predict_example(fx.params, e).probability - e.target;
  }
  mean /= static_cast<double>(fx.examples.size());
  EXPECT_NEAR(g.dense.lr_bias, mean, 1e-14);
}

TEST(Network, BatchGradientsIndependentOfThreads) {
  GradCheckConfig c;
  c.batch_size = 9;
  const auto fx = make_gradcheck_fixture(c);
  std::vector<const EncodedExample*> batch;
  for (const auto& e : fx.examples) batch.push_back(&e);
  Gradients one = Gradients::zeros(fx.params.config);
  Gradients four = Gradients::zeros(fx.params.config);
  const double l1 = batch_gradients(fx.params, batch, fx.seeds, one, 1);
  const double l4 = batch_gradients(fx.params, batch, fx.seeds, four, 4);
  EXPECT_EQ(l1, l4);
  const auto a = blocks(one.dense);
  const auto b = blocks(four.dense);
  for (std::size_t k = 0; k < a.size(); ++k) EXPECT_EQ(a[k].values, b[k].values);
  for (int t = 0; t < kNumTables; ++t) {
    ASSERT_EQ(one.tables[t].rows.size(), four.tables[t].rows.size());
    for (const auto& [r, v] : one.tables[t].rows) EXPECT_EQ(v, *four.tables[t].find(r));
  }
}
