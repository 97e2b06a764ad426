#include "morpi/strapdown.hpp"

#include <cmath>
#include <string>

#include "morpi/errors.hpp"

namespace morpi::strapdown {

namespace {

double uniform_dt(std::span<const ImuSample> imu) {
  if (imu.size() < 2) throw DataError("need at least 2 IMU samples");
  const double dt = imu[1].t - imu[0].t;
  if (!(dt > 0.0)) throw DataError("IMU timestamps not strictly increasing");
  for (std::size_t i = 1; i < imu.size(); ++i) {
    const double step = imu[i].t - imu[i - 1].t;
    if (std::abs(step - dt) > 1e-9) throw DataError("IMU sampling is not uniform");
  }
  return dt;
}

}  // namespace

Trajectory mechanize(const NavState& initial, std::span<const ImuSample> imu, GravityPlanar gravity,
                     IntegrationScheme scheme) {
  if (imu.empty()) throw DataError("mechanize: empty IMU input");
  if (std::abs(initial.t - imu[0].t) > 1e-9)
    throw DataError("mechanize: initial state time does not match first IMU sample");

  Trajectory out;
  out.states.reserve(imu.size());
  out.states.push_back(initial);
  if (imu.size() == 1) {
    out.rate_hz = 0.0;
    return out;
  }
  const double dt = uniform_dt(imu);
  out.rate_hz = 1.0 / dt;

  const Vec2 g{gravity.gx, gravity.gy};
  for (std::size_t k = 0; k + 1 < imu.size(); ++k) {
    const NavState& cur = out.states.back();
    NavState next;
    next.t = imu[k + 1].t;
    if (scheme == IntegrationScheme::kTrapezoidal) {
      next.psi = cur.psi + 0.5 * dt * (imu[k].omega_z + imu[k + 1].omega_z);
      const double psi_mid = 0.5 * (cur.psi + next.psi);
      const Vec2 f_mean{0.5 * (imu[k].fx + imu[k + 1].fx), 0.5 * (imu[k].fy + imu[k + 1].fy)};
      const Vec2 accel = rotate_body_to_nav(psi_mid, f_mean) + g;
      next.vx = cur.vx + dt * accel.x;
      next.vy = cur.vy + dt * accel.y;
      next.x = cur.x + 0.5 * dt * (cur.vx + next.vx);
      next.y = cur.y + 0.5 * dt * (cur.vy + next.vy);
    } else {
      const Vec2 accel = rotate_body_to_nav(cur.psi, {imu[k].fx, imu[k].fy}) + g;
      next.psi = cur.psi + dt * imu[k].omega_z;
      next.vx = cur.vx + dt * accel.x;
      next.vy = cur.vy + dt * accel.y;
      next.x = cur.x + dt * cur.vx;
      next.y = cur.y + dt * cur.vy;
    }
    out.states.push_back(next);
  }
  return out;
}

BiasEstimate zero_order_calibrate(std::span<const ImuSample> imu, double stationary_duration_s) {
  if (imu.size() < 2) throw DataError("calibration: need at least 2 samples");
  const double dt = imu[1].t - imu[0].t;
  if (!(dt > 0.0)) throw DataError("calibration: timestamps not strictly increasing");
  const auto n = static_cast<std::size_t>(std::llround(stationary_duration_s / dt));
  if (n < 1) throw DataError("calibration: stationary prefix is empty");
  if (n > imu.size())
    throw DataError("calibration: stationary prefix of " + std::to_string(stationary_duration_s) +
                    " s exceeds the " + std::to_string(imu.size()) + " available samples");
  BiasEstimate bias;
  for (std::size_t i = 0; i < n; ++i) {
    bias.fx += imu[i].fx;
    bias.fy += imu[i].fy;
    bias.omega_z += imu[i].omega_z;
  }
  const double inv = 1.0 / static_cast<double>(n);
  bias.fx *= inv;
  bias.fy *= inv;
  bias.omega_z *= inv;
  return bias;
}

std::vector<ImuSample> subtract_bias(std::span<const ImuSample> imu, const BiasEstimate& bias) {
  std::vector<ImuSample> out(imu.begin(), imu.end());
  for (ImuSample& s : out) {
    s.fx -= bias.fx;
    s.fy -= bias.fy;
    s.omega_z -= bias.omega_z;
  }
  return out;
}

std::vector<double> heading_by_gyro_integration(double psi0, std::span<const ImuSample> imu) {
  if (imu.empty()) throw DataError("heading integration: empty IMU input");
  std::vector<double> psi(imu.size());
  psi[0] = psi0;
  if (imu.size() > 1) uniform_dt(imu);
  for (std::size_t k = 0; k + 1 < imu.size(); ++k) {
    const double dt = imu[k + 1].t - imu[k].t;
    psi[k + 1] = psi[k] + 0.5 * dt * (imu[k].omega_z + imu[k + 1].omega_z);
  }
  return psi;
}

std::vector<Vec2> dead_reckon_path(Vec2 start, std::span<const double> distances,
                                   std::span<const double> headings) {
  if (headings.empty()) throw DataError("dead_reckon_path: no headings");
  if (distances.size() + 1 != headings.size())
    throw DataError("dead_reckon_path: need one distance per step (headings - 1)");
  std::vector<Vec2> path;
  path.reserve(headings.size());
  path.push_back(start);
  for (std::size_t k = 0; k < distances.size(); ++k)
    path.push_back(dead_reckon_update(path.back(), distances[k], headings[k]));
  return path;
}

}  // namespace morpi::strapdown
