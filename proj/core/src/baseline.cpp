#include "antsyn/baseline.hpp"

#include <algorithm>
#include <cmath>

#include "antsyn/error.hpp"
#include "antsyn/network.hpp"

namespace antsyn {

double cosine(const Eigen::VectorXd& u, const Eigen::VectorXd& v) {
  if (u.size() != v.size()) throw Error("cosine of vectors with different lengths");
  const double nu = u.norm();
  const double nv = v.norm();
  if (nu == 0.0 || nv == 0.0) throw Error("cosine of a zero vector");
  return std::clamp(u.dot(v) / (nu * nv), -1.0, 1.0);
}

std::vector<CosineFeature> cosine_features(const std::vector<PairExample>& examples,
                                           const VectorFile& vectors) {
  std::vector<CosineFeature> out;
  out.reserve(examples.size());
  auto lookup = [&](const std::string& w) -> std::optional<Eigen::VectorXd> {
    const auto it = vectors.vectors.find(w);
    if (it == vectors.vectors.end()) return std::nullopt;
    Eigen::VectorXd v = Eigen::Map<const Eigen::VectorXd>(
        it->second.data(), static_cast<Eigen::Index>(it->second.size()));
    if (v.norm() == 0.0) return std::nullopt;
    return v;
  };
  for (const auto& e : examples) {
    CosineFeature f;
    f.pair = {e.x, e.y};
    f.label = e.label;
    const auto vx = lookup(e.x);
    const auto vy = lookup(e.y);
    if (vx && vy) f.cosine = cosine(*vx, *vy);
    out.push_back(std::move(f));
  }
  return out;
}

namespace {

constexpr double kRidge = 1e-4;
constexpr int kNewtonIterations = 100;

void fit_logistic(const std::vector<CosineFeature>& train, double& w, double& b) {
  w = 0.0;
  b = 0.0;
  const double n = static_cast<double>(train.size());
  for (int it = 0; it < kNewtonIterations; ++it) {
    double gw = kRidge * w, gb = 0.0;
    double hww = kRidge, hwb = 0.0, hbb = 0.0;
    for (const auto& f : train) {
      const double x = f.value();
      const double y = f.label == Label::Antonym ? 1.0 : 0.0;
      const double p = sigmoid(w * x + b);
      const double s = p * (1.0 - p);
      gw += (p - y) * x / n;
      gb += (p - y) / n;
      hww += s * x * x / n;
      hwb += s * x / n;
      hbb += s / n;
    }
    const double det = hww * hbb - hwb * hwb;
    if (!(det > 1e-300)) {
      // only the bias is identifiable
      if (hbb > 0.0) b -= gb / hbb;
      break;
    }
    const double dw = (hbb * gw - hwb * gb) / det;
    const double db = (hww * gb - hwb * gw) / det;
    w -= dw;
    b -= db;
    if (std::abs(dw) + std::abs(db) < 1e-12) break;
  }
}

std::vector<LabeledPrediction> classify(const std::vector<CosineFeature>& features,
                                        double w, double b, double threshold) {
  std::vector<LabeledPrediction> out;
  out.reserve(features.size());
  for (const auto& f : features) {
    const double p = sigmoid(w * f.value() + b);
    out.push_back({p > threshold ? Label::Antonym : Label::Synonym, f.label});
  }
  return out;
}

}  // namespace

BaselineResult baseline_classify(const std::vector<CosineFeature>& train,
                                 const std::vector<CosineFeature>& validation,
                                 const std::vector<CosineFeature>& test) {
  BaselineResult result;
  std::int64_t total = 0;
  for (const auto* split : {&train, &validation, &test}) {
    for (const auto& f : *split) {
      ++total;
      if (!f.cosine) ++result.missing;
    }
  }
  if (total == 0 || result.missing == total) {
    throw Error("baseline: no pair has vectors for both words");
  }
  if (train.empty()) throw Error("baseline: empty train split");
  if (test.empty()) throw Error("baseline: empty test split");

  fit_logistic(train, result.weight, result.bias);

  // candidate thresholds: the default plus midpoints between distinct
  // validation probabilities; ties keep the earlier candidate
  std::vector<double> probs;
  for (const auto& f : validation) probs.push_back(sigmoid(result.weight * f.value() + result.bias));
  std::sort(probs.begin(), probs.end());
  probs.erase(std::unique(probs.begin(), probs.end()), probs.end());
  std::vector<double> candidates = {0.5};
  for (std::size_t i = 1; i < probs.size(); ++i) {
    candidates.push_back(0.5 * (probs[i - 1] + probs[i]));
  }
  if (!validation.empty()) {
    double best = -1.0;
    for (double t : candidates) {
      const double f1 = score(classify(validation, result.weight, result.bias, t)).f1;
      if (f1 > best) {
        best = f1;
        result.threshold = t;
      }
    }
  }

  result.test = score(classify(test, result.weight, result.bias, result.threshold));
  result.test.model = "sp-baseline";
  return result;
}

}  // namespace antsyn
