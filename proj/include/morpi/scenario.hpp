#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "morpi/simulator.hpp"
#include "morpi/units.hpp"

namespace morpi::sim {

/// One trajectory entry of a scenario: a motion profile plus its role in the
/// train/test split and the GT decimation written to disk (12 reproduces the
/// RTK 10 Hz vs IMU 120 Hz ratio; 1 writes full-rate GT).
struct ScenarioTrajectory {
  std::string name;
  std::string role = "test";  ///< "train" or "test"
  MotionProfile profile;
  int gt_decimation = 1;
};

/// Sensor error magnitudes in datasheet units plus a global scale multiplier.
struct SensorErrorConfig {
  double gyro_bias_deg_per_hour = 10.0;
  double accel_bias_mg = 0.03;
  double gyro_noise_density_deg_per_s_sqrt_hz = 0.007;
  double accel_noise_density_ug_sqrt_hz = 120.0;
  double error_scale = 1.0;

  /// SI-unit spec for one run.
  ImuErrorSpec to_spec(double rate_hz, std::uint64_t seed) const;
};

struct Scenario {
  std::uint64_t seed = 1;
  SensorErrorConfig errors;
  std::vector<ScenarioTrajectory> trajectories;

  /// Deterministic per-trajectory RNG seed.
  std::uint64_t trajectory_seed(std::size_t index) const { return seed + 7919 * index; }
};

/// One long training snake plus four short test paths (straight, two snakes,
/// L-turn), datasheet-grade errors.
Scenario default_scenario();

Scenario load_scenario(const std::filesystem::path& path);
void save_scenario(const std::filesystem::path& path, const Scenario& scenario);

/// Validation shared by load and the CLI. Throws DataError.
void validate_scenario(const Scenario& scenario);

}  // namespace morpi::sim
