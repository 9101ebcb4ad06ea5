#pragma once

#include <array>

#include <Eigen/Core>

#include "antsyn/model.hpp"
#include "antsyn/network.hpp"

namespace antsyn {

// Running averages E[g^2] and E[dx^2], shaped like the parameters.
struct AdadeltaState {
  DenseParams mean_sq_grad;
  DenseParams mean_sq_delta;
  std::array<Eigen::MatrixXd, kNumTables> table_sq_grad;
  std::array<Eigen::MatrixXd, kNumTables> table_sq_delta;

  static AdadeltaState zeros(const ModelParams& params);
};

// One scalar Adadelta update; returns the applied delta. A gradient of
// exactly zero leaves x and both accumulators untouched, which keeps the
// sparse embedding update equivalent to the dense one on untouched rows.
double adadelta_update(double& x, double& mean_sq_grad, double& mean_sq_delta, double g,
                       double rho, double eps);

void adadelta_step(ModelParams& params, AdadeltaState& state, const Gradients& grads,
                   double rho, double eps);

}  // namespace antsyn
