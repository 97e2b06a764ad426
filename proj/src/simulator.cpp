#include "morpi/simulator.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "morpi/errors.hpp"

namespace morpi::sim {

namespace {

// Quintic smoothstep: C^2 at both ends (s''(0) = s''(1) = 0).
double smooth5(double u) {
  if (u <= 0.0) return 0.0;
  if (u >= 1.0) return 1.0;
  return u * u * u * (10.0 + u * (-15.0 + 6.0 * u));
}

double smooth5_deriv(double u) {
  if (u <= 0.0 || u >= 1.0) return 0.0;
  return 30.0 * u * u * (1.0 - u) * (1.0 - u);
}

struct Ramp {
  double value;
  double deriv;
};

// Activation from 0 to 1 over [prefix, prefix + ramp_s]; a step when ramp_s == 0.
Ramp activation(const MotionProfile& p, double t) {
  if (t <= p.stationary_prefix_s) return {0.0, 0.0};
  if (p.speed_ramp_s <= 0.0) return {1.0, 0.0};
  const double u = (t - p.stationary_prefix_s) / p.speed_ramp_s;
  return {smooth5(u), smooth5_deriv(u) / p.speed_ramp_s};
}

// Heading deviation from base_heading as a function of motion time tau.
Ramp heading_deviation(const MotionProfile& p, double tau) {
  switch (p.kind) {
    case MotionKind::kStraight:
      return {0.0, 0.0};
    case MotionKind::kSnake: {
      const double w = 2.0 * std::numbers::pi / p.heading_period;
      return {p.heading_amp * std::sin(w * tau), p.heading_amp * w * std::cos(w * tau)};
    }
    case MotionKind::kLTurn: {
      const double u = (tau - (p.turn_time - 0.5 * p.turn_blend_s)) / p.turn_blend_s;
      return {p.turn_angle * smooth5(u), p.turn_angle * smooth5_deriv(u) / p.turn_blend_s};
    }
  }
  return {0.0, 0.0};
}

}  // namespace

void validate_profile(const MotionProfile& p) {
  if (!(p.duration > 0.0)) throw DataError("profile: duration must be positive");
  if (!(p.rate_hz > 0.0)) throw DataError("profile: rate_hz must be positive");
  if (!(p.speed >= 0.0)) throw DataError("profile: speed must be non-negative");
  if (!(p.heading_period > 0.0)) throw DataError("profile: heading_period must be positive");
  if (p.stationary_prefix_s < 0.0 || p.speed_ramp_s < 0.0)
    throw DataError("profile: prefix and ramp must be non-negative");
  if (p.kind == MotionKind::kLTurn && !(p.turn_blend_s > 0.0))
    throw DataError("profile: turn_blend_s must be positive");
}

KinematicPoint profile_kinematics(const MotionProfile& p, double t) {
  const Ramp r = activation(p, t);
  const double tau = std::max(0.0, t - p.stationary_prefix_s);
  const Ramp dev = heading_deviation(p, tau);

  KinematicPoint k;
  k.psi = p.base_heading + r.value * dev.value;
  k.psi_dot = r.deriv * dev.value + r.value * dev.deriv;

  const double s = p.speed * r.value;
  const double s_dot = p.speed * r.deriv;
  const double c = std::cos(k.psi), sn = std::sin(k.psi);
  k.velocity = {s * c, s * sn};
  k.accel = {s_dot * c - s * k.psi_dot * sn, s_dot * sn + s * k.psi_dot * c};
  return k;
}

Trajectory generate_truth(const MotionProfile& p) {
  validate_profile(p);
  const double total = p.stationary_prefix_s + p.duration;
  const auto n = static_cast<std::size_t>(std::llround(total * p.rate_hz)) + 1;
  const double dt = 1.0 / p.rate_hz;

  Trajectory traj;
  traj.rate_hz = p.rate_hz;
  traj.states.reserve(n);

  Vec2 pos{0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const KinematicPoint k = profile_kinematics(p, t);
    traj.states.push_back({t, pos.x, pos.y, k.velocity.x, k.velocity.y, k.psi});
    if (i + 1 < n) {
      // composite Simpson over [t, t+dt], 10 subintervals
      constexpr int kSub = 10;
      const double h = dt / kSub;
      Vec2 acc{0.0, 0.0};
      for (int j = 0; j <= kSub; ++j) {
        const Vec2 v = profile_kinematics(p, t + j * h).velocity;
        const double w = (j == 0 || j == kSub) ? 1.0 : (j % 2 == 1 ? 4.0 : 2.0);
        acc = acc + v * w;
      }
      pos = pos + acc * (h / 3.0);
    }
  }
  return traj;
}

std::vector<ImuSample> ideal_imu(const MotionProfile& p, strapdown::GravityPlanar gravity) {
  validate_profile(p);
  const double total = p.stationary_prefix_s + p.duration;
  const auto n = static_cast<std::size_t>(std::llround(total * p.rate_hz)) + 1;
  const double dt = 1.0 / p.rate_hz;

  std::vector<ImuSample> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) * dt;
    const KinematicPoint k = profile_kinematics(p, t);
    const Vec2 f = strapdown::RotationYaw{k.psi}.apply_inverse(
        {k.accel.x - gravity.gx, k.accel.y - gravity.gy});
    out.push_back({t, f.x, f.y, k.psi_dot});
  }
  return out;
}

std::vector<ImuSample> ideal_imu(const Trajectory& truth, strapdown::GravityPlanar gravity) {
  if (truth.states.size() < 3)
    throw DataError("ideal_imu: need at least 3 samples for differencing");
  validate_trajectory(truth);
  const auto& s = truth.states;
  const double dt = 1.0 / truth.rate_hz;

  std::vector<ImuSample> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    double ax, ay, wz;
    if (i == 0) {
      ax = (s[1].vx - s[0].vx) / dt;
      ay = (s[1].vy - s[0].vy) / dt;
      wz = (s[1].psi - s[0].psi) / dt;
    } else if (i + 1 == s.size()) {
      ax = (s[i].vx - s[i - 1].vx) / dt;
      ay = (s[i].vy - s[i - 1].vy) / dt;
      wz = (s[i].psi - s[i - 1].psi) / dt;
    } else {
      ax = (s[i + 1].vx - s[i - 1].vx) / (2.0 * dt);
      ay = (s[i + 1].vy - s[i - 1].vy) / (2.0 * dt);
      wz = (s[i + 1].psi - s[i - 1].psi) / (2.0 * dt);
    }
    const Vec2 f =
        strapdown::RotationYaw{s[i].psi}.apply_inverse({ax - gravity.gx, ay - gravity.gy});
    out.push_back({s[i].t, f.x, f.y, wz});
  }
  return out;
}

std::vector<ImuSample> corrupt(const std::vector<ImuSample>& ideal, const ImuErrorSpec& spec) {
  if (spec.gyro_bias < 0.0 || spec.accel_bias < 0.0 || spec.gyro_noise_density < 0.0 ||
      spec.accel_noise_density < 0.0 || !(spec.sample_rate_hz > 0.0))
    throw DataError("corrupt: invalid error spec");

  const double sa = spec.accel_sigma();
  const double sg = spec.gyro_sigma();
  std::mt19937_64 rng(spec.seed);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<ImuSample> out;
  out.reserve(ideal.size());
  for (const ImuSample& s : ideal) {
    ImuSample m = s;
    m.fx += spec.accel_bias;
    m.fy += spec.accel_bias;
    m.omega_z += spec.gyro_bias;
    if (sa > 0.0) {
      m.fx += sa * gauss(rng);
      m.fy += sa * gauss(rng);
    }
    if (sg > 0.0) m.omega_z += sg * gauss(rng);
    out.push_back(m);
  }
  return out;
}

}  // namespace morpi::sim
