#include "antsyn/adadelta.hpp"

#include <cmath>

namespace antsyn {

AdadeltaState AdadeltaState::zeros(const ModelParams& params) {
  AdadeltaState s;
  s.mean_sq_grad = DenseParams::zeros(params.config);
  s.mean_sq_delta = DenseParams::zeros(params.config);
  for (int t = 0; t < kNumTables; ++t) {
    const auto& m = params.tables[static_cast<std::size_t>(t)].matrix;
    s.table_sq_grad[static_cast<std::size_t>(t)] = Eigen::MatrixXd::Zero(m.rows(), m.cols());
    s.table_sq_delta[static_cast<std::size_t>(t)] = Eigen::MatrixXd::Zero(m.rows(), m.cols());
  }
  return s;
}

double adadelta_update(double& x, double& mean_sq_grad, double& mean_sq_delta, double g,
                       double rho, double eps) {
  if (g == 0.0) return 0.0;
  mean_sq_grad = rho * mean_sq_grad + (1.0 - rho) * g * g;
  const double delta = -std::sqrt(mean_sq_delta + eps) / std::sqrt(mean_sq_grad + eps) * g;
  mean_sq_delta = rho * mean_sq_delta + (1.0 - rho) * delta * delta;
  x += delta;
  return delta;
}

void adadelta_step(ModelParams& params, AdadeltaState& state, const Gradients& grads,
                   double rho, double eps) {
  auto p = blocks(params.dense);
  auto eg = blocks(state.mean_sq_grad);
  auto ed = blocks(state.mean_sq_delta);
  const auto g = blocks(grads.dense);
  for (std::size_t b = 0; b < p.size(); ++b) {
    const Eigen::Index n = p[b].values.size();
    double* x = p[b].values.data();
    double* sg = eg[b].values.data();
    double* sd = ed[b].values.data();
    const double* gv = g[b].values.data();
    for (Eigen::Index i = 0; i < n; ++i) adadelta_update(x[i], sg[i], sd[i], gv[i], rho, eps);
  }
  for (std::size_t t = 0; t < static_cast<std::size_t>(kNumTables); ++t) {
    auto& table = params.tables[t];
    if (!table.trainable) continue;
    for (const auto& [row, gr] : grads.tables[t].rows) {
      for (Eigen::Index c = 0; c < gr.size(); ++c) {
        adadelta_update(table.matrix(row, c), state.table_sq_grad[t](row, c),
                        state.table_sq_delta[t](row, c), gr(c), rho, eps);
      }
    }
  }
}

}  // namespace antsyn
