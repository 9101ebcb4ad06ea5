#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "antsyn/model.hpp"
#include "antsyn/network.hpp"

namespace antsyn {

// Relative error |a - n| / max(|a|, |n|, floor). Central differences at step
// 1e-5 carry about 2e-11 of absolute round-off, so gradients below the floor
// are compared in absolute terms instead.
inline constexpr double kGradCheckFloor = 1e-6;

double relative_error(double analytic, double numeric, double floor = kGradCheckFloor);

struct GradCheckReport {
  double max_relative_error = 0.0;
  std::string worst_parameter;
  double worst_analytic = 0.0;
  double worst_numeric = 0.0;
  std::size_t checked = 0;
  bool passed = false;
};

// Compares batch_gradients() against central differences of the mean batch
// loss over every scalar parameter, embedding rows included. Dropout masks are
// replayed from `seeds` so the loss is a fixed function of the parameters.
// `flip_block` names a dense block whose analytic gradient is negated before
// comparing (a negative control); empty means none.
GradCheckReport check_gradients(ModelParams params,
                                std::span<const EncodedExample> examples,
                                std::span<const std::uint64_t> seeds, double step,
                                double tolerance, const std::string& flip_block = {});

// A tiny random model and batch for check_gradients.
struct GradCheckConfig {
  Variant variant = Variant::Pattern;
  FeatureMode feature_mode = FeatureMode::Distance;
  int lemma_dim = 2;
  int label_dim = 2;  // node_dim = 2 + 3 * 2 = 8
  int word_dim = 3;
  int hidden_dim = 5;
  int max_patterns = 3;
  int max_pattern_len = 6;
  int batch_size = 2;
  double dropout = 0.5;
  double init_range = 0.5;
  double step = 1e-5;
  double tolerance = 1e-4;
  std::uint64_t seed = 1;
  bool zero_params = false;
  std::string flip_block;
};

struct GradCheckFixture {
  ModelParams params;
  std::vector<EncodedExample> examples;
  std::vector<std::uint64_t> seeds;
};

GradCheckFixture make_gradcheck_fixture(const GradCheckConfig& config);

GradCheckReport gradient_check(const GradCheckConfig& config);

}  // namespace antsyn
