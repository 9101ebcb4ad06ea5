#include <gtest/gtest.h>

#include "antsyn/gradcheck.hpp"

using namespace antsyn;

TEST(GradCheck, PassesAcrossSeedsVariantsAndModes) {
  for (Variant v : {Variant::Pattern, Variant::Combined}) {
    for (FeatureMode m : {FeatureMode::Distance, FeatureMode::Direction}) {
      for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        GradCheckConfig c;
        c.variant = v;
        c.feature_mode = m;
        c.seed = seed;
        const auto r = gradient_check(c);
        EXPECT_TRUE(r.passed) << "seed " << seed << " worst " << r.worst_parameter << " "
                              << r.max_relative_error;
        EXPECT_LT(r.max_relative_error, 1e-4);
      }
    }
  }
}

TEST(GradCheck, CoversEveryParameter) {
  GradCheckConfig c;
  const auto fx = make_gradcheck_fixture(c);
  std::size_t n = 0;
  for (const auto& b : blocks(fx.params.dense)) n += static_cast<std::size_t>(b.values.size());
  for (const auto& t : fx.params.tables) n += static_cast<std::size_t>(t.matrix.size());
  EXPECT_EQ(gradient_check(c).checked, n);
}

TEST(GradCheck, WithoutDropout) {
  GradCheckConfig c;
  c.dropout = 0.0;
  c.hidden_dim = 8;
  EXPECT_TRUE(gradient_check(c).passed);
}

TEST(GradCheck, SignFlipFails) {
  for (const char* block : {"lstm.U_f", "lstm.W_c", "lr.w", "lr.b"}) {
    GradCheckConfig c;
    c.flip_block = block;
    const auto r = gradient_check(c);
    EXPECT_FALSE(r.passed) << block;
    EXPECT_GT(r.max_relative_error, 1.0);
  }
}

TEST(GradCheck, ZeroParametersPass) {
  GradCheckConfig c;
  c.zero_params = true;
  EXPECT_TRUE(gradient_check(c).passed);
}

TEST(GradCheck, RelativeErrorFloor) {
  EXPECT_EQ(relative_error(1.0, 1.0), 0.0);
  EXPECT_DOUBLE_EQ(relative_error(1.0, -1.0), 2.0);
  EXPECT_DOUBLE_EQ(relative_error(0.0, 1e-12), 1e-12 / kGradCheckFloor);
}
