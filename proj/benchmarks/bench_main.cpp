#include <benchmark/benchmark.h>

#include <random>
#include <sstream>

#include "antsyn/extraction.hpp"
#include "antsyn/gradcheck.hpp"
#include "antsyn/network.hpp"
#include "antsyn/treebank.hpp"

using namespace antsyn;

namespace {

// Random trees of `n` tokens drawn from a small lemma pool.
std::vector<Sentence> random_corpus(int sentences, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Sentence> out;
  for (int k = 0; k < sentences; ++k) {
    Sentence s;
    s.root_id = 1;
    for (int i = 1; i <= n; ++i) {
      const std::string lemma = "w" + std::to_string(rng() % 50);
      const int head = i == 1 ? 0 : 1 + static_cast<int>(rng() % static_cast<std::uint64_t>(i - 1));
      s.tokens.push_back({i, lemma, lemma, "NN", head, i == 1 ? "ROOT" : "dep"});
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<WordPair> pair_grid() {
  std::vector<WordPair> pairs;
  for (int a = 0; a < 50; a += 3) {
    for (int b = 1; b < 50; b += 7) {
      if (a != b) pairs.push_back({"w" + std::to_string(a), "w" + std::to_string(b)});
    }
  }
  return pairs;
}

void BM_Extraction(benchmark::State& state) {
  const auto corpus = random_corpus(1000, static_cast<int>(state.range(0)), 1);
  const auto pairs = pair_grid();
  for (auto _ : state) {
    benchmark::DoNotOptimize(extract_corpus_patterns(corpus, pairs));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(corpus.size()));
}
BENCHMARK(BM_Extraction)->Arg(10)->Arg(30);

void BM_ConlluParse(benchmark::State& state) {
  std::ostringstream text;
  for (const auto& s : random_corpus(2000, 20, 2)) write_conllu(text, s);
  const std::string data = text.str();
  for (auto _ : state) {
    std::istringstream in(data);
    benchmark::DoNotOptimize(parse_conllu(in, ErrorMode::Strict));
  }
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(data.size()));
}
BENCHMARK(BM_ConlluParse);

void BM_LstmStep(benchmark::State& state) {
  const int hidden = static_cast<int>(state.range(0));
  const int node = 130;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-0.1, 0.1);
  LstmParams lstm = LstmParams::zeros(hidden, node);
  for (int g = 0; g < kNumGates; ++g) {
    lstm.W[g] = lstm.W[g].unaryExpr([&](double) { return u(rng); });
    lstm.U[g] = lstm.U[g].unaryExpr([&](double) { return u(rng); });
  }
  const Eigen::VectorXd x = Eigen::VectorXd::Constant(node, 0.01);
  const Eigen::VectorXd h = Eigen::VectorXd::Zero(hidden);
  const Eigen::VectorXd c = Eigen::VectorXd::Zero(hidden);
  for (auto _ : state) {
    benchmark::DoNotOptimize(lstm_step(lstm, x, h, c));
  }
}
BENCHMARK(BM_LstmStep)->Arg(10)->Arg(100);

// One example forward and backward at training dimensions.
void BM_ForwardBackward(benchmark::State& state) {
  GradCheckConfig g;
  g.lemma_dim = 100;
  g.label_dim = 10;
  g.word_dim = 100;
  g.hidden_dim = static_cast<int>(state.range(0));
  g.max_patterns = 5;
  g.max_pattern_len = 6;
  g.init_range = 0.05;
  g.variant = Variant::Combined;
  const auto fx = make_gradcheck_fixture(g);
  const EncodedExample& e = fx.examples.front();
  for (auto _ : state) {
    Gradients grads = Gradients::zeros(fx.params.config);
    std::mt19937_64 rng(1);
    ExampleTrace trace;
    benchmark::DoNotOptimize(forward(fx.params, e, &rng, &trace));
    backward(fx.params, e, trace, 1.0, grads);
    benchmark::DoNotOptimize(grads.dense.lr_bias);
  }
}
BENCHMARK(BM_ForwardBackward)->Arg(10)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
