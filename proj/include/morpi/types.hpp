#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

#include "morpi/errors.hpp"

namespace morpi {

/// One timestamped planar inertial measurement: specific force along the body
/// x/y axes [m/s^2] and angular rate about the body z axis [rad/s].
struct ImuSample {
  double t = 0.0;        ///< time [s]
  double fx = 0.0;       ///< specific force, body x [m/s^2]
  double fy = 0.0;       ///< specific force, body y [m/s^2]
  double omega_z = 0.0;  ///< angular rate about body z [rad/s]
};

/// Planar navigation state. Yaw is stored unwrapped; wrap only for reporting.
struct NavState {
  double t = 0.0;    ///< time [s]
  double x = 0.0;    ///< north position [m]
  double y = 0.0;    ///< east position [m]
  double vx = 0.0;   ///< north velocity [m/s]
  double vy = 0.0;   ///< east velocity [m/s]
  double psi = 0.0;  ///< yaw [rad], unwrapped
};

/// Minimal 2D vector for planar kinematics.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double norm() const { return std::hypot(x, y); }
};

/// Time-ordered, uniformly sampled sequence of navigation states.
struct Trajectory {
  std::vector<NavState> states;
  double rate_hz = 0.0;  ///< nominal sample rate [Hz]
};

/// Canonical wrap to (-pi, pi]. Applied only at reporting boundaries.
inline double wrap_pi(double angle) {
  double w = std::remainder(angle, 2.0 * std::numbers::pi);
  if (w <= -std::numbers::pi) w += 2.0 * std::numbers::pi;
  return w;
}

/// Checks strictly increasing timestamps and uniform spacing of 1/rate_hz
/// within 1e-9 s. Throws DataError on violation.
inline void validate_trajectory(const Trajectory& traj) {
  if (traj.states.empty()) throw DataError("trajectory is empty");
  if (!(traj.rate_hz > 0.0)) throw DataError("trajectory rate_hz must be positive");
  const double dt = 1.0 / traj.rate_hz;
  for (std::size_t i = 1; i < traj.states.size(); ++i) {
    const double step = traj.states[i].t - traj.states[i - 1].t;
    if (!(step > 0.0)) throw DataError("trajectory timestamps not strictly increasing");
    if (std::abs(step - dt) > 1e-9)
      throw DataError("trajectory sampling is not uniform at the nominal rate");
  }
}

/// Linear interpolation of a trajectory state at time t (yaw interpolated
/// unwrapped). t must lie within the trajectory's time span.
NavState interpolate_state(const Trajectory& traj, double t);

}  // namespace morpi
