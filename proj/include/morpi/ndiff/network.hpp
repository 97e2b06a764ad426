#pragma once

#include <Eigen/Core>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "morpi/ndiff/tape.hpp"

namespace morpi::ndiff {

/// SinTanh activation: sin(z) * tanh(z). Even, bounded, smooth.
inline double sintanh(double z) { return std::sin(z) * std::tanh(z); }

/// d/dz sintanh = cos(z)tanh(z) + sin(z)(1 - tanh(z)^2).
inline double sintanh_deriv(double z) {
  const double th = std::tanh(z);
  return std::cos(z) * th + std::sin(z) * (1.0 - th * th);
}

/// Architecture descriptor: fully connected SinTanh network with layer
/// normalization on every hidden layer and a linear head.
struct MlpSpec {
  int input_width = 4;
  int output_width = 5;
  int hidden_layers = 10;
  int hidden_width = 128;
  double dropout_rate = 0.2;
  double layer_norm_eps = 1e-5;

  bool operator==(const MlpSpec&) const = default;
};

struct LayerParams {
  Mat W;
  Eigen::VectorXd b;
};

struct NormParams {
  Eigen::VectorXd gamma;
  Eigen::VectorXd beta;
};

/// Trainable parameters: hidden_layers+1 affine layers and one normalization
/// pair per hidden layer. flatten() and unflatten() round-trip exactly in a
/// fixed canonical order.
struct Params {
  MlpSpec spec;
  std::vector<LayerParams> layers;
  std::vector<NormParams> norms;

  static Params zeros(const MlpSpec& spec);
  /// Uniform +-sqrt(6/(fan_in+fan_out)) weights, zero biases, unit gains.
  static Params init(const MlpSpec& spec, std::uint64_t seed);

  std::size_t count() const;
  Eigen::VectorXd flatten() const;
  static Params unflatten(const MlpSpec& spec, const Eigen::VectorXd& flat);
  bool all_finite() const;
};

/// A batch of activations paired with the same-shape batch of their time
/// derivatives. Columns are samples. An empty tangents matrix means the
/// tangent channel is not propagated.
struct DualBatch {
  Mat values;
  Mat tangents;

  bool has_tangent() const { return tangents.size() != 0; }
};

/// Input tangent seed: 1 for the time row, 0 for the sensor rows.
Mat input_tangent_seed(int input_width, Eigen::Index batch, int time_row = 0);

/// Tape node ids of staged parameters.
struct StagedParams {
  std::vector<int> w;
  std::vector<int> b;
  std::vector<int> gamma;
  std::vector<int> beta;
};

StagedParams stage_params(Tape& tape, const Params& params);

struct ForwardOptions {
  bool training = false;        ///< dropout active when true (and enabled)
  bool with_tangent = false;    ///< propagate the time-tangent channel
  bool dropout_enabled = true;  ///< pass-level dropout switch
  std::mt19937_64* rng = nullptr;  ///< required when dropout is active
};

/// Tape node ids of the network head output (values and, when requested,
/// tangents). Dropout applies the identical mask to value and tangent.
struct ForwardIds {
  int values = -1;
  int tangents = -1;
};

/// Records the full forward computation on the tape. Throws DataError on a
/// shape mismatch and UsageError when dropout is active without an RNG.
ForwardIds forward_on_tape(Tape& tape, const MlpSpec& spec, const StagedParams& staged,
                           const DualBatch& input, const ForwardOptions& options);

/// One-shot forward pass (builds a private tape). Returns the 5-wide output
/// batch; tangents are filled when the input carries a tangent seed.
DualBatch forward(const Params& params, const DualBatch& input, bool training,
                  std::mt19937_64* rng = nullptr);

/// Reverse pass from a recorded scalar loss: returns the exact gradient of
/// the scalar with respect to every parameter, including paths through the
/// tangent channel. Throws when no graph has been recorded.
Params backward(Tape& tape, int loss_id, const MlpSpec& spec, const StagedParams& staged);

}  // namespace morpi::ndiff
