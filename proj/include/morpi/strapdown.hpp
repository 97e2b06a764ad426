#pragma once

#include <span>
#include <vector>

#include "morpi/types.hpp"

namespace morpi::strapdown {

/// Body-to-navigation rotation restricted to yaw. The induced 2x2 matrix
/// [cos psi, -sin psi; sin psi, cos psi] is orthonormal.
struct RotationYaw {
  double psi = 0.0;

  Vec2 apply(Vec2 body) const {
    const double c = std::cos(psi), s = std::sin(psi);
    return {c * body.x - s * body.y, s * body.x + c * body.y};
  }
  Vec2 apply_inverse(Vec2 nav) const {
    const double c = std::cos(psi), s = std::sin(psi);
    return {c * nav.x + s * nav.y, -s * nav.x + c * nav.y};
  }
};

/// Horizontal gravity components, constant over a run. (0, 0) on level ground.
struct GravityPlanar {
  double gx = 0.0;  ///< [m/s^2]
  double gy = 0.0;  ///< [m/s^2]
};

/// Rotates a body-frame specific force into the navigation frame.
inline Vec2 rotate_body_to_nav(double psi, Vec2 f_body) { return RotationYaw{psi}.apply(f_body); }

enum class IntegrationScheme {
  kTrapezoidal,  ///< trapezoidal heading, midpoint-heading rotation, trapezoidal v/p (2nd order)
  kRectangular,  ///< explicit Euler throughout (1st order, kept for drift studies)
};

/// Per-channel constant bias estimates from a stationary prefix.
struct BiasEstimate {
  double fx = 0.0;       ///< [m/s^2]
  double fy = 0.0;       ///< [m/s^2]
  double omega_z = 0.0;  ///< [rad/s]
};

/// Dead-reckons the planar strapdown equations from `initial` through the IMU
/// stream with no aiding. Timestamps must be uniform and initial.t must equal
/// the first sample time. Output has one state per sample.
Trajectory mechanize(const NavState& initial, std::span<const ImuSample> imu, GravityPlanar gravity,
                     IntegrationScheme scheme = IntegrationScheme::kTrapezoidal);

/// Mean sensor readings over the first stationary_duration_s of samples.
/// The caller subtracts these from all subsequent samples.
BiasEstimate zero_order_calibrate(std::span<const ImuSample> imu, double stationary_duration_s);

/// Subtracts constant channel biases from every sample.
std::vector<ImuSample> subtract_bias(std::span<const ImuSample> imu, const BiasEstimate& bias);

/// One distance-plus-heading position update: (x + s*cos psi, y + s*sin psi).
inline Vec2 dead_reckon_update(Vec2 pos, double distance, double psi) {
  return {pos.x + distance * std::cos(psi), pos.y + distance * std::sin(psi)};
}

/// Trapezoidal integral of omega_z accumulated from psi0; one heading per sample.
std::vector<double> heading_by_gyro_integration(double psi0, std::span<const ImuSample> imu);

/// Folds dead_reckon_update over per-step distances using the heading at each
/// step start. distances.size() must equal headings.size() - 1; returns
/// headings.size() positions starting at `start`.
std::vector<Vec2> dead_reckon_path(Vec2 start, std::span<const double> distances,
                                   std::span<const double> headings);

}  // namespace morpi::strapdown
