#include "morpi/ndiff/network.hpp"

#include <string>

#include "morpi/errors.hpp"

namespace morpi::ndiff {

namespace {

void check_spec(const MlpSpec& s) {
  if (s.input_width < 1 || s.output_width < 1 || s.hidden_layers < 1 || s.hidden_width < 1)
    throw DataError("network spec: widths and depth must be positive");
  if (s.dropout_rate < 0.0 || s.dropout_rate >= 1.0)
    throw DataError("network spec: dropout rate must be in [0, 1)");
}

}  // namespace

Params Params::zeros(const MlpSpec& spec) {
  check_spec(spec);
  Params p;
  p.spec = spec;
  int fan_in = spec.input_width;
  for (int l = 0; l < spec.hidden_layers; ++l) {
    p.layers.push_back({Mat::Zero(spec.hidden_width, fan_in),
                        Eigen::VectorXd::Zero(spec.hidden_width)});
    p.norms.push_back({Eigen::VectorXd::Ones(spec.hidden_width),
                       Eigen::VectorXd::Zero(spec.hidden_width)});
    fan_in = spec.hidden_width;
  }
  p.layers.push_back({Mat::Zero(spec.output_width, fan_in),
                      Eigen::VectorXd::Zero(spec.output_width)});
  return p;
}

Params Params::init(const MlpSpec& spec, std::uint64_t seed) {
  Params p = zeros(spec);
  std::mt19937_64 rng(seed);
  for (LayerParams& layer : p.layers) {
    const double fan_in = static_cast<double>(layer.W.cols());
    const double fan_out = static_cast<double>(layer.W.rows());
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    std::uniform_real_distribution<double> uniform(-limit, limit);
    for (Eigen::Index i = 0; i < layer.W.size(); ++i) layer.W.data()[i] = uniform(rng);
  }
  return p;
}

std::size_t Params::count() const {
  std::size_t n = 0;
  for (const auto& l : layers) n += static_cast<std::size_t>(l.W.size() + l.b.size());
  for (const auto& nm : norms) n += static_cast<std::size_t>(nm.gamma.size() + nm.beta.size());
  return n;
}

Eigen::VectorXd Params::flatten() const {
  Eigen::VectorXd flat(static_cast<Eigen::Index>(count()));
  Eigen::Index at = 0;
  auto put = [&](const auto& block) {
    flat.segment(at, block.size()) = Eigen::Map<const Eigen::VectorXd>(block.data(), block.size());
    at += block.size();
  };
  for (std::size_t l = 0; l < layers.size(); ++l) {
    put(layers[l].W);
    put(layers[l].b);
    if (l < norms.size()) {
      put(norms[l].gamma);
      put(norms[l].beta);
    }
  }
  return flat;
}

Params Params::unflatten(const MlpSpec& spec, const Eigen::VectorXd& flat) {
  Params p = zeros(spec);
  if (flat.size() != static_cast<Eigen::Index>(p.count()))
    throw DataError("unflatten: expected " + std::to_string(p.count()) + " values, got " +
                    std::to_string(flat.size()));
  Eigen::Index at = 0;
  auto take = [&](auto& block) {
    Eigen::Map<Eigen::VectorXd>(block.data(), block.size()) = flat.segment(at, block.size());
    at += block.size();
  };
  for (std::size_t l = 0; l < p.layers.size(); ++l) {
    take(p.layers[l].W);
    take(p.layers[l].b);
    if (l < p.norms.size()) {
      take(p.norms[l].gamma);
      take(p.norms[l].beta);
    }
  }
  return p;
}

bool Params::all_finite() const {
  for (const auto& l : layers)
    if (!l.W.allFinite() || !l.b.allFinite()) return false;
  for (const auto& n : norms)
    if (!n.gamma.allFinite() || !n.beta.allFinite()) return false;
  return true;
}

Mat input_tangent_seed(int input_width, Eigen::Index batch, int time_row) {
  Mat seed = Mat::Zero(input_width, batch);
  seed.row(time_row).setOnes();
  return seed;
}

StagedParams stage_params(Tape& tape, const Params& params) {
  StagedParams ids;
  for (const auto& l : params.layers) {
    ids.w.push_back(tape.leaf(l.W));
    ids.b.push_back(tape.leaf(l.b));
  }
  for (const auto& n : params.norms) {
    ids.gamma.push_back(tape.leaf(n.gamma));
    ids.beta.push_back(tape.leaf(n.beta));
  }
  return ids;
}

namespace {

struct DualIds {
  int value;
  int tangent;  // -1 when the channel is off
};

// Layer normalization over features (rows) per sample (column), with the
// tangent channel built from the same primitives so reverse mode sees it.
DualIds layer_norm(Tape& t, const MlpSpec& spec, DualIds z, int gamma, int beta,
                   Eigen::Index width) {
  const int m = t.row_mean(z.value);
  const int c = t.sub(z.value, t.tile_rows(m, width));
  const int var = t.row_mean(t.hadamard(c, c));
  const int sdev = t.sqrt(t.add_scalar(var, spec.layer_norm_eps));
  const int xhat = t.div(c, t.tile_rows(sdev, width));
  const int out = t.add_col(t.scale_rows(xhat, gamma), beta);

  int out_tan = -1;
  if (z.tangent >= 0) {
    const int m_dot = t.row_mean(z.tangent);
    const int c_dot = t.sub(z.tangent, t.tile_rows(m_dot, width));
    const int var_dot = t.scalar_mul(t.row_mean(t.hadamard(c, c_dot)), 2.0);
    const int s_dot = t.div(var_dot, t.scalar_mul(sdev, 2.0));
    const int term1 = t.div(c_dot, t.tile_rows(sdev, width));
    const int term2 = t.hadamard(xhat, t.tile_rows(t.div(s_dot, sdev), width));
    out_tan = t.scale_rows(t.sub(term1, term2), gamma);
  }
  return {out, out_tan};
}

DualIds sintanh_on_tape(Tape& t, DualIds u) {
  const int su = t.sin(u.value);
  const int tu = t.tanh(u.value);
  const int out = t.hadamard(su, tu);
  int out_tan = -1;
  if (u.tangent >= 0) {
    const int cu = t.cos(u.value);
    const int one_minus_tu2 = t.add_scalar(t.scalar_mul(t.hadamard(tu, tu), -1.0), 1.0);
    const int phi_prime = t.add(t.hadamard(cu, tu), t.hadamard(su, one_minus_tu2));
    out_tan = t.hadamard(phi_prime, u.tangent);
  }
  return {out, out_tan};
}

}  // namespace

ForwardIds forward_on_tape(Tape& tape, const MlpSpec& spec, const StagedParams& staged,
                           const DualBatch& input, const ForwardOptions& options) {
  check_spec(spec);
  if (input.values.rows() != spec.input_width)
    throw DataError("forward: input has " + std::to_string(input.values.rows()) +
                    " rows, spec expects " + std::to_string(spec.input_width));
  if (input.has_tangent() && (input.tangents.rows() != input.values.rows() ||
                              input.tangents.cols() != input.values.cols()))
    throw DataError("forward: tangent shape does not match values");
  if (options.with_tangent && !input.has_tangent())
    throw DataError("forward: tangent channel requested but input carries no tangent seed");

  const bool dropout_active =
      options.training && options.dropout_enabled && spec.dropout_rate > 0.0;
  if (dropout_active && options.rng == nullptr)
    throw UsageError("forward: dropout is active but no RNG was provided");

  const Eigen::Index batch = input.values.cols();
  DualIds a{tape.constant(input.values),
            options.with_tangent ? tape.constant(input.tangents) : -1};

  for (int l = 0; l < spec.hidden_layers; ++l) {
    DualIds z{tape.add_col(tape.matmul(staged.w[static_cast<std::size_t>(l)], a.value),
                           staged.b[static_cast<std::size_t>(l)]),
              -1};
    if (a.tangent >= 0) z.tangent = tape.matmul(staged.w[static_cast<std::size_t>(l)], a.tangent);

    DualIds u = layer_norm(tape, spec, z, staged.gamma[static_cast<std::size_t>(l)],
                           staged.beta[static_cast<std::size_t>(l)], spec.hidden_width);
    DualIds h = sintanh_on_tape(tape, u);

    if (dropout_active) {
      const double keep = 1.0 - spec.dropout_rate;
      Mat mask(spec.hidden_width, batch);
      std::uniform_real_distribution<double> uni(0.0, 1.0);
      for (Eigen::Index i = 0; i < mask.size(); ++i)
        mask.data()[i] = uni(*options.rng) < keep ? 1.0 / keep : 0.0;
      const int mask_id = tape.constant(mask);
      h.value = tape.hadamard(h.value, mask_id);
      if (h.tangent >= 0) h.tangent = tape.hadamard(h.tangent, mask_id);
    }
    a = h;
  }

  const std::size_t head = static_cast<std::size_t>(spec.hidden_layers);
  ForwardIds out;
  out.values = tape.add_col(tape.matmul(staged.w[head], a.value), staged.b[head]);
  if (a.tangent >= 0) out.tangents = tape.matmul(staged.w[head], a.tangent);
  return out;
}

DualBatch forward(const Params& params, const DualBatch& input, bool training,
                  std::mt19937_64* rng) {
  Tape tape;
  StagedParams staged = stage_params(tape, params);
  ForwardOptions options;
  options.training = training;
  options.with_tangent = input.has_tangent();
  options.rng = rng;
  ForwardIds ids = forward_on_tape(tape, params.spec, staged, input, options);
  DualBatch out;
  out.values = tape.value(ids.values);
  if (ids.tangents >= 0) out.tangents = tape.value(ids.tangents);
  return out;
}

Params backward(Tape& tape, int loss_id, const MlpSpec& spec, const StagedParams& staged) {
  if (tape.size() == 0) throw NumericError("backward: no recorded graph");
  tape.backward(loss_id);
  Params grads = Params::zeros(spec);
  for (std::size_t l = 0; l < grads.layers.size(); ++l) {
    grads.layers[l].W = tape.grad_value(staged.w[l]);
    grads.layers[l].b = tape.grad_value(staged.b[l]).col(0);
  }
  for (std::size_t l = 0; l < grads.norms.size(); ++l) {
    grads.norms[l].gamma = tape.grad_value(staged.gamma[l]).col(0);
    grads.norms[l].beta = tape.grad_value(staged.beta[l]).col(0);
  }
  return grads;
}

}  // namespace morpi::ndiff
