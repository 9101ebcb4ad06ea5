#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Core>

#include "antsyn/dataset.hpp"
#include "antsyn/embeddings.hpp"
#include "antsyn/evaluation.hpp"

namespace antsyn {

// u.v / (|u| |v|). Throws Error on a zero vector or a length mismatch.
double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v);

struct CosineFeature {
  WordPair pair;
  std::optional<double> cosine;  // missing when a word has no vector
  Label label = Label::Synonym;

  // Missing cosines count as 0, the uninformative midpoint.
  double value() const { return cosine.value_or(0.0); }
};

std::vector<CosineFeature> cosine_features(const std::vector<PairExample>& examples,
                                           const VectorFile& vectors);

struct BaselineResult {
  EvalReport test;
  double weight = 0.0;
  double bias = 0.0;
  double threshold = 0.5;  // on the classifier probability
  std::int64_t missing = 0;  // pairs over all splits scored with cosine 0
};

// Fits p = sigmoid(w * cos + b) on train by Newton's method (with a small
// ridge on w so separable data stays finite), picks the probability threshold
// with the best validation F1, and scores test. Throws Error if every
// feature is missing.
BaselineResult baseline_classify(const std::vector<CosineFeature>& train,
                                 const std::vector<CosineFeature>& validation,
                                 const std::vector<CosineFeature>& test);

}  // namespace antsyn
