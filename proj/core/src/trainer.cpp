#include "antsyn/trainer.hpp"

#include <algorithm>
#include <numeric>
#include <ostream>
#include <random>

#include "antsyn/adadelta.hpp"
#include "antsyn/error.hpp"
#include "antsyn/log.hpp"
#include "antsyn/text.hpp"

namespace antsyn {

std::vector<LabeledPrediction> predict_all(const ModelParams& params,
                                           const std::vector<EncodedExample>& examples) {
  std::vector<LabeledPrediction> out;
  out.reserve(examples.size());
  for (const auto& e : examples) {
    out.push_back({predict_example(params, e).label,
                   e.target > 0.5 ? Label::Antonym : Label::Synonym});
  }
  return out;
}

EvalReport evaluate(const ModelParams& params, const std::vector<PairExample>& examples,
                    const Vocabulary& vocab) {
  const auto encoded = encode_examples(examples, vocab, params.config.feature_mode);
  EvalReport r = score(predict_all(params, encoded));
  r.model = std::string(to_string(params.config.variant));
  return r;
}

namespace {

void check_feature_mode(const SplitDataset& data, FeatureMode mode) {
  for (Split s : {Split::Train, Split::Test, Split::Validation}) {
    for (const auto& e : data.split(s)) {
      for (const auto& p : e.patterns) {
        if (key_feature_mode(p.key) != mode) {
          throw ConfigError("patterns were extracted in " +
                            std::string(to_string(key_feature_mode(p.key))) +
                            " mode but the model uses " + std::string(to_string(mode)));
        }
      }
    }
  }
}

}  // namespace

TrainResult train(const ModelParams& initial, const SplitDataset& data,
                  const Vocabulary& vocab) {
  const ModelConfig& cfg = initial.config;
  cfg.validate();
  if (data.train.empty()) throw ConfigError("empty train split");
  check_feature_mode(data, cfg.feature_mode);

  const auto train_set = encode_examples(data.train, vocab, cfg.feature_mode);
  const auto val_set = encode_examples(data.validation, vocab, cfg.feature_mode);
  if (val_set.empty()) {
    log::warn("validation split is empty; keeping the parameters of the last epoch");
  }

  TrainResult result;
  result.params = initial;
  ModelParams params = initial;
  AdadeltaState state = AdadeltaState::zeros(params);

  std::vector<std::size_t> order(train_set.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best_f1 = -1.0;
  double best_loss = 0.0;

  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    std::mt19937_64 shuffle_rng(derive_seed(cfg.seed, 2000 + static_cast<std::uint64_t>(epoch)));
    std::shuffle(order.begin(), order.end(), shuffle_rng);

    double loss_sum = 0.0;
    const auto batch_size = static_cast<std::size_t>(cfg.batch_size);
    std::vector<const EncodedExample*> batch;
    std::vector<std::uint64_t> seeds;
    for (std::size_t start = 0; start < order.size(); start += batch_size) {
      const std::size_t end = std::min(order.size(), start + batch_size);
      batch.clear();
      seeds.clear();
      for (std::size_t k = start; k < end; ++k) {
        batch.push_back(&train_set[order[k]]);
        seeds.push_back(dropout_seed(cfg.seed, static_cast<std::uint64_t>(epoch), k));
      }
      Gradients grads = Gradients::zeros(cfg);
      const double mean = batch_gradients(
          params, batch,
          cfg.dropout > 0.0 ? std::span<const std::uint64_t>(seeds)
                            : std::span<const std::uint64_t>(),
          grads, cfg.threads);
      loss_sum += mean * static_cast<double>(end - start);
      adadelta_step(params, state, grads, cfg.adadelta_rho, cfg.adadelta_eps);
    }
    if (!params.all_finite()) {
      throw Error("training produced non-finite parameters in epoch " + std::to_string(epoch));
    }

    EpochLog entry;
    entry.epoch = epoch;
    entry.train_loss = loss_sum / static_cast<double>(train_set.size());
    if (!val_set.empty()) {
      const EvalReport r = score(predict_all(params, val_set));
      double val_loss = 0.0;
      for (const auto& e : val_set) val_loss += forward(params, e, nullptr);
      entry.val_loss = val_loss / static_cast<double>(val_set.size());
      entry.val_precision = r.precision;
      entry.val_recall = r.recall;
      entry.val_f1 = r.f1;
    }
    result.log.push_back(entry);
    log::info("epoch " + std::to_string(epoch) + " loss " +
              text::format_fixed(entry.train_loss, 6) + " val F1 " +
              text::format_fixed(entry.val_f1, 4));

    const bool better = entry.val_f1 > best_f1 ||
                        (entry.val_f1 == best_f1 && entry.val_loss < best_loss);
    if (val_set.empty() || better) {
      best_f1 = entry.val_f1;
      best_loss = entry.val_loss;
      result.best_epoch = epoch;
      result.params = params;
    }
  }
  return result;
}

void write_epoch_log(std::ostream& out, const std::vector<EpochLog>& log) {
  out << "epoch\ttrain_loss\tval_P\tval_R\tval_F1\tval_loss\n";
  for (const auto& e : log) {
    out << e.epoch << '\t' << text::format_double(e.train_loss) << '\t'
        << text::format_double(e.val_precision) << '\t'
        << text::format_double(e.val_recall) << '\t' << text::format_double(e.val_f1)
        << '\t' << text::format_double(e.val_loss) << '\n';
  }
}

}  // namespace antsyn
