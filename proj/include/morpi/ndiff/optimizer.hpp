#pragma once

#include <Eigen/Core>
#include <limits>

#include "morpi/ndiff/network.hpp"

namespace morpi::ndiff {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  double weight_decay = 1e-4;  ///< decoupled: params *= (1 - lr * wd) after the update
};

struct SchedulerConfig {
  double factor = 0.5;            ///< learning-rate multiplier on plateau
  int patience = 50;              ///< stagnant epochs before a reduction
  double rel_threshold = 1e-4;    ///< improvement = val < best * (1 - rel_threshold)
  int early_stop_patience = 100;  ///< stagnant epochs before the stop flag
};

/// Adam moments, step counter, current learning rate, plateau/early-stop
/// bookkeeping. Moment vectors are shaped like the flattened parameters.
struct OptimizerState {
  AdamConfig adam;
  SchedulerConfig sched;

  Eigen::VectorXd m;
  Eigen::VectorXd v;
  long step = 0;
  double lr = 1e-3;

  double best_val = std::numeric_limits<double>::infinity();
  int plateau_count = 0;
  int stop_count = 0;
  bool early_stop = false;

  static OptimizerState create(const AdamConfig& adam, const SchedulerConfig& sched,
                               std::size_t param_count);
};

/// Standard Adam with bias correction at the state's current learning rate,
/// followed by decoupled weight decay. Throws NumericError (naming the layer)
/// on non-finite gradients.
void adam_step(OptimizerState& state, Params& params, const Params& grads);

/// Plateau scheduler + early stopping driven by a validation loss. Halves lr
/// once `patience` consecutive stagnant epochs accumulate (then resets the
/// plateau counter); raises `early_stop` after `early_stop_patience` stagnant
/// epochs. An improvement resets both counters.
void scheduler_step(OptimizerState& state, double validation_loss);

}  // namespace morpi::ndiff
