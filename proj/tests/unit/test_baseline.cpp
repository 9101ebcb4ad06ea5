#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "antsyn/baseline.hpp"
#include "antsyn/error.hpp"

using namespace antsyn;

namespace {

Eigen::VectorXd v2(double a, double b) { return (Eigen::VectorXd(2) << a, b).finished(); }

std::vector<CosineFeature> features(const std::vector<double>& cosines, Label label) {
  std::vector<CosineFeature> out;
  for (std::size_t i = 0; i < cosines.size(); ++i) {
    out.push_back({{"x" + std::to_string(i), "y"}, cosines[i], label});
  }
  return out;
}

std::vector<CosineFeature> join(std::vector<CosineFeature> a, const std::vector<CosineFeature>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace

TEST(Baseline, CosineExamples) {
  EXPECT_DOUBLE_EQ(cosine(v2(1, 0), v2(1, 0)), 1.0);
  EXPECT_DOUBLE_EQ(cosine(v2(1, 0), v2(0, 1)), 0.0);
  EXPECT_DOUBLE_EQ(cosine(v2(1, 0), v2(-1, 0)), -1.0);
  EXPECT_THROW(cosine(v2(0, 0), v2(1, 0)), Error);
  EXPECT_THROW(cosine(v2(1, 0), Eigen::VectorXd::Ones(3)), Error);
}

TEST(Baseline, CosineSymmetricAndScaleInvariant) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-1, 1), s(0.1, 10);
  for (int i = 0; i < 100; ++i) {
    Eigen::VectorXd a(5), b(5);
    for (int k = 0; k < 5; ++k) {
      a(k) = u(rng);
      b(k) = u(rng);
    }
    EXPECT_NEAR(cosine(a, b), cosine(b, a), 1e-15);
    EXPECT_NEAR(cosine(s(rng) * a, s(rng) * b), cosine(a, b), 1e-14);
  }
}

TEST(Baseline, SeparableEitherOrientation) {
  // antonyms low, synonyms high
  const auto train = join(features({-0.9, -0.7, -0.5, -0.3}, Label::Antonym),
                          features({0.3, 0.5, 0.7, 0.9}, Label::Synonym));
  const auto val = join(features({-0.6}, Label::Antonym), features({0.6}, Label::Synonym));
  const auto test = join(features({-0.8, -0.2}, Label::Antonym), features({0.2, 0.8}, Label::Synonym));
  EXPECT_EQ(baseline_classify(train, val, test).test.f1, 1.0);

  // the opposite convention
  auto flip = [](std::vector<CosineFeature> v) {
    for (auto& f : v) f.cosine = -*f.cosine;
    return v;
  };
  const auto r = baseline_classify(flip(train), flip(val), flip(test));
  EXPECT_EQ(r.test.f1, 1.0);
  EXPECT_GT(r.weight, 0.0);
}

TEST(Baseline, ConstantFeaturePredictsOneClass) {
  const auto train = join(features({0.4, 0.4, 0.4}, Label::Antonym), features({0.4, 0.4}, Label::Synonym));
  const auto test = join(features({0.4, 0.4}, Label::Antonym), features({0.4, 0.4}, Label::Synonym));
  const auto r = baseline_classify(train, {}, test);
  // majority (antonym) everywhere: P = 0.5, R = 1
  EXPECT_EQ(r.test.tp + r.test.fp, 4);
  EXPECT_DOUBLE_EQ(r.test.f1, 2.0 / 3.0);
}

TEST(Baseline, MissingVectorsCountedAndScoredAsZero) {
  VectorFile vf;
  vf.dim = 2;
  vf.vectors["a"] = {1, 0};
  vf.vectors["b"] = {1, 0.1};
  vf.vectors["c"] = {-1, 0};
  const std::vector<PairExample> ex = {{"a", "b", Label::Synonym, {}},
                                       {"a", "c", Label::Antonym, {}},
                                       {"a", "zz", Label::Antonym, {}}};
  const auto f = cosine_features(ex, vf);
  ASSERT_EQ(f.size(), 3u);
  EXPECT_TRUE(f[0].cosine);
  EXPECT_FALSE(f[2].cosine);
  EXPECT_EQ(f[2].value(), 0.0);
  const auto r = baseline_classify(f, {}, f);
  EXPECT_EQ(r.missing, 2);  // the same pair counted in train and test
  std::vector<CosineFeature> all_missing = {f[2]};
  EXPECT_THROW(baseline_classify(all_missing, {}, all_missing), Error);
}

TEST(Baseline, Deterministic) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n(0, 0.4);
  std::vector<double> a, s;
  for (int i = 0; i < 40; ++i) {
    a.push_back(std::tanh(n(rng) - 0.3));
    s.push_back(std::tanh(n(rng) + 0.3));
  }
  const auto train = join(features(a, Label::Antonym), features(s, Label::Synonym));
  const auto r1 = baseline_classify(train, train, train);
  const auto r2 = baseline_classify(train, train, train);
  EXPECT_EQ(r1.test.f1, r2.test.f1);
  EXPECT_EQ(r1.threshold, r2.threshold);
  EXPECT_EQ(r1.weight, r2.weight);
}
