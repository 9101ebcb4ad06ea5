#pragma once

#include <iosfwd>
#include <vector>

#include "antsyn/dataset.hpp"
#include "antsyn/evaluation.hpp"
#include "antsyn/model.hpp"
#include "antsyn/network.hpp"

namespace antsyn {

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_precision = 0.0;
  double val_recall = 0.0;
  double val_f1 = 0.0;
  double val_loss = 0.0;

  bool operator==(const EpochLog&) const = default;
};

struct TrainResult {
  ModelParams params;  // best validation F1, ties to the lower validation loss
  std::vector<EpochLog> log;
  int best_epoch = 0;  // 0 when no epoch ran
};

// Mini-batch Adadelta on the mean cross-entropy of each batch, for
// initial.config.epochs epochs. Deterministic given the config seed; the
// thread count does not change the result.
TrainResult train(const ModelParams& initial, const SplitDataset& data,
                  const Vocabulary& vocab);

std::vector<LabeledPrediction> predict_all(const ModelParams& params,
                                           const std::vector<EncodedExample>& examples);

EvalReport evaluate(const ModelParams& params, const std::vector<PairExample>& examples,
                    const Vocabulary& vocab);

void write_epoch_log(std::ostream& out, const std::vector<EpochLog>& log);

}  // namespace antsyn
