#include "antsyn/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "antsyn/error.hpp"

namespace antsyn {

double relative_error(double analytic, double numeric, double floor) {
  const double denom = std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / denom;
}

namespace {

double mean_loss(const ModelParams& params, std::span<const EncodedExample> examples,
                 std::span<const std::uint64_t> seeds) {
  double total = 0.0;
  for (std::size_t k = 0; k < examples.size(); ++k) {
    if (seeds.empty()) {
      total += forward(params, examples[k], nullptr);
    } else {
      std::mt19937_64 rng(seeds[k]);
      total += forward(params, examples[k], &rng);
    }
  }
  return total / static_cast<double>(examples.size());
}

}  // namespace

GradCheckReport check_gradients(ModelParams params,
                                std::span<const EncodedExample> examples,
                                std::span<const std::uint64_t> seeds, double step,
                                double tolerance, const std::string& flip_block) {
  if (examples.empty()) throw Error("gradient check needs at least one example");
  std::vector<const EncodedExample*> batch;
  for (const auto& e : examples) batch.push_back(&e);
  Gradients grads = Gradients::zeros(params.config);
  batch_gradients(params, batch, seeds, grads);

  GradCheckReport report;
  auto compare = [&](double analytic, double& value, const std::string& name) {
    const double saved = value;
    value = saved + step;
    const double plus = mean_loss(params, examples, seeds);
    value = saved - step;
    const double minus = mean_loss(params, examples, seeds);
    value = saved;
    const double numeric = (plus - minus) / (2.0 * step);
    const double err = relative_error(analytic, numeric);
    ++report.checked;
    if (report.worst_parameter.empty() || err > report.max_relative_error) {
      report.max_relative_error = err;
      report.worst_parameter = name;
      report.worst_analytic = analytic;
      report.worst_numeric = numeric;
    }
  };

  auto param_blocks = blocks(params.dense);
  const auto grad_blocks = blocks(grads.dense);
  for (std::size_t b = 0; b < param_blocks.size(); ++b) {
    const double sign = param_blocks[b].name == flip_block ? -1.0 : 1.0;
    auto& values = param_blocks[b].values;
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
      for (Eigen::Index c = 0; c < values.cols(); ++c) {
        compare(sign * grad_blocks[b].values(r, c), values(r, c),
                param_blocks[b].name + "(" + std::to_string(r) + "," +
                    std::to_string(c) + ")");
      }
    }
  }
  for (int t = 0; t < kNumTables; ++t) {
    auto& matrix = params.tables[static_cast<std::size_t>(t)].matrix;
    const auto& rows = grads.tables[static_cast<std::size_t>(t)];
    const std::string name = table_block_name(static_cast<TableId>(t),
                                              params.config.feature_mode);
    for (Eigen::Index r = 0; r < matrix.rows(); ++r) {
      const Eigen::VectorXd* g = rows.find(static_cast<int>(r));
      for (Eigen::Index c = 0; c < matrix.cols(); ++c) {
        compare(g ? (*g)(c) : 0.0, matrix(r, c),
                name + "(" + std::to_string(r) + "," + std::to_string(c) + ")");
      }
    }
  }
  report.passed = report.max_relative_error < tolerance;
  return report;
}

GradCheckFixture make_gradcheck_fixture(const GradCheckConfig& gc) {
  ModelConfig cfg;
  cfg.variant = gc.variant;
  cfg.feature_mode = gc.feature_mode;
  cfg.lemma_dim = gc.lemma_dim;
  cfg.label_dim = gc.label_dim;
  cfg.word_dim = gc.word_dim;
  cfg.hidden_dim = gc.hidden_dim;
  cfg.dropout = gc.dropout;
  cfg.seed = gc.seed;
  cfg.validate();

  constexpr int kLemmas = 6, kPos = 4, kDeprels = 4, kLabels = 5, kWords = 6;
  std::mt19937_64 rng(derive_seed(gc.seed, 77));
  std::uniform_real_distribution<double> value(-gc.init_range, gc.init_range);
  auto fill = [&](auto& m) {
    for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = gc.zero_params ? 0.0 : value(rng);
  };

  GradCheckFixture fx;
  ModelParams& p = fx.params;
  p.config = cfg;
  p.dense = DenseParams::zeros(cfg);
  for (auto& b : blocks(p.dense)) fill(b.values);
  const std::array<int, kNumTables> rows = {kLemmas, kPos, kDeprels, kLabels,
                                            cfg.variant == Variant::Combined ? kWords : 0};
  const std::array<int, kNumTables> dims = {cfg.lemma_dim, cfg.label_dim, cfg.label_dim,
                                            cfg.label_dim, cfg.word_dim};
  for (int t = 0; t < kNumTables; ++t) {
    auto& table = p.tables[static_cast<std::size_t>(t)];
    table.matrix.resize(rows[static_cast<std::size_t>(t)], dims[static_cast<std::size_t>(t)]);
    fill(table.matrix);
  }

  auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
  for (int k = 0; k < gc.batch_size; ++k) {
    EncodedExample e;
    e.target = k % 2 == 0 ? 1.0 : 0.0;
    e.x_word = pick(kWords);
    e.y_word = pick(kWords);
    const int n_patterns = 1 + pick(gc.max_patterns);
    for (int q = 0; q < n_patterns; ++q) {
      EncodedPattern ep;
      ep.count = 1 + pick(5);
      const int len = 2 + pick(std::max(1, gc.max_pattern_len - 1));
      for (int t = 0; t < len; ++t) {
        ep.nodes.push_back({pick(kLemmas), pick(kPos), pick(kDeprels), pick(kLabels)});
      }
      e.patterns.push_back(std::move(ep));
    }
    fx.examples.push_back(std::move(e));
    fx.seeds.push_back(derive_seed(gc.seed, 5000 + static_cast<std::uint64_t>(k)));
  }
  return fx;
}

GradCheckReport gradient_check(const GradCheckConfig& config) {
  const GradCheckFixture fx = make_gradcheck_fixture(config);
  const bool dropout = config.dropout > 0.0;
  return check_gradients(fx.params, fx.examples,
                         dropout ? std::span<const std::uint64_t>(fx.seeds)
                                 : std::span<const std::uint64_t>(),
                         config.step, config.tolerance, config.flip_block);
}

}  // namespace antsyn
