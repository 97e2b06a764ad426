#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace morpi {

/// Standard gravity, exact by definition [m/s^2].
inline constexpr double kStandardGravity = 9.80665;

/// deg/hour -> rad/s.
inline double deg_per_hour_to_rad_per_s(double deg_per_hour) {
  return deg_per_hour * std::numbers::pi / (180.0 * 3600.0);
}

/// milli-g -> m/s^2.
inline double milli_g_to_mps2(double milli_g) {
  return milli_g * 1e-3 * kStandardGravity;
}

/// deg/s -> rad/s.
inline double deg_to_rad(double deg) { return deg * std::numbers::pi / 180.0; }

/// Per-sample white-noise standard deviation implied by a continuous noise
/// density sampled at rate_hz: sigma = density * sqrt(rate).
inline double noise_sigma_per_sample(double density, double rate_hz) {
  return density * std::sqrt(rate_hz);
}

/// Sensor error magnitudes in SI units, plus the sampling rate and RNG seed
/// that fully determine a corruption run.
struct ImuErrorSpec {
  double gyro_bias = 0.0;             ///< [rad/s]
  double accel_bias = 0.0;            ///< [m/s^2]
  double gyro_noise_density = 0.0;    ///< [rad/s/sqrt(Hz)]
  double accel_noise_density = 0.0;   ///< [m/s^2/sqrt(Hz)]
  double sample_rate_hz = 120.0;      ///< [Hz]
  std::uint64_t seed = 0;

  double gyro_sigma() const { return noise_sigma_per_sample(gyro_noise_density, sample_rate_hz); }
  double accel_sigma() const { return noise_sigma_per_sample(accel_noise_density, sample_rate_hz); }
};

}  // namespace morpi
