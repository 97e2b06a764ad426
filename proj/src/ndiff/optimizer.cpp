#include "morpi/ndiff/optimizer.hpp"

#include <cmath>
#include <string>

#include "morpi/errors.hpp"

namespace morpi::ndiff {

OptimizerState OptimizerState::create(const AdamConfig& adam, const SchedulerConfig& sched,
                                      std::size_t param_count) {
  OptimizerState s;
  s.adam = adam;
  s.sched = sched;
  s.m = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(param_count));
  s.v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(param_count));
  s.lr = adam.lr;
  return s;
}

void adam_step(OptimizerState& state, Params& params, const Params& grads) {
  for (std::size_t l = 0; l < grads.layers.size(); ++l)
    if (!grads.layers[l].W.allFinite() || !grads.layers[l].b.allFinite())
      throw NumericError("adam_step: non-finite gradient in layer " + std::to_string(l));
  for (std::size_t l = 0; l < grads.norms.size(); ++l)
    if (!grads.norms[l].gamma.allFinite() || !grads.norms[l].beta.allFinite())
      throw NumericError("adam_step: non-finite gradient in layer-norm " + std::to_string(l));

  Eigen::VectorXd p = params.flatten();
  const Eigen::VectorXd g = grads.flatten();
  if (p.size() != g.size() || p.size() != state.m.size())
    throw DataError("adam_step: parameter/gradient/state shapes disagree");

  state.step += 1;
  const auto& a = state.adam;
  state.m = a.beta1 * state.m + (1.0 - a.beta1) * g;
  state.v = a.beta2 * state.v + (1.0 - a.beta2) * g.cwiseProduct(g);
  const double mc = 1.0 - std::pow(a.beta1, static_cast<double>(state.step));
  const double vc = 1.0 - std::pow(a.beta2, static_cast<double>(state.step));
  const Eigen::VectorXd m_hat = state.m / mc;
  const Eigen::VectorXd v_hat = state.v / vc;
  p -= state.lr * (m_hat.array() / (v_hat.array().sqrt() + a.eps)).matrix();
  if (a.weight_decay != 0.0) p *= (1.0 - state.lr * a.weight_decay);

  params = Params::unflatten(params.spec, p);
}

void scheduler_step(OptimizerState& state, double validation_loss) {
  if (!std::isfinite(validation_loss))
    throw NumericError("scheduler_step: non-finite validation loss");
  const bool improved =
      validation_loss < state.best_val * (1.0 - state.sched.rel_threshold) ||
      state.best_val == std::numeric_limits<double>::infinity();
  if (improved) {
    state.best_val = validation_loss;
    state.plateau_count = 0;
    state.stop_count = 0;
    return;
  }
  state.plateau_count += 1;
  state.stop_count += 1;
  if (state.plateau_count >= state.sched.patience) {
    state.lr *= state.sched.factor;
    state.plateau_count = 0;
  }
  if (state.stop_count >= state.sched.early_stop_patience) state.early_stop = true;
}

}  // namespace morpi::ndiff
