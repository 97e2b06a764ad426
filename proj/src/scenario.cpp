#include "morpi/scenario.hpp"

#include <fstream>

#include <json.hpp>

#include "morpi/errors.hpp"

namespace morpi::sim {

using nlohmann::json;

ImuErrorSpec SensorErrorConfig::to_spec(double rate_hz, std::uint64_t seed) const {
  ImuErrorSpec spec;
  spec.gyro_bias = deg_per_hour_to_rad_per_s(gyro_bias_deg_per_hour) * error_scale;
  spec.accel_bias = milli_g_to_mps2(accel_bias_mg) * error_scale;
  spec.gyro_noise_density = deg_to_rad(gyro_noise_density_deg_per_s_sqrt_hz) * error_scale;
  spec.accel_noise_density = milli_g_to_mps2(accel_noise_density_ug_sqrt_hz * 1e-3) * error_scale;
  spec.sample_rate_hz = rate_hz;
  spec.seed = seed;
  return spec;
}

namespace {

MotionKind kind_from_string(const std::string& s) {
  if (s == "straight") return MotionKind::kStraight;
  if (s == "snake") return MotionKind::kSnake;
  if (s == "l_turn") return MotionKind::kLTurn;
  throw DataError("scenario: unknown motion kind '" + s + "'");
}

std::string kind_to_string(MotionKind k) {
  switch (k) {
    case MotionKind::kStraight: return "straight";
    case MotionKind::kSnake: return "snake";
    case MotionKind::kLTurn: return "l_turn";
  }
  return "straight";
}

json profile_to_json(const MotionProfile& p) {
  return json{{"kind", kind_to_string(p.kind)},
              {"speed", p.speed},
              {"heading_amp", p.heading_amp},
              {"heading_period", p.heading_period},
              {"base_heading", p.base_heading},
              {"turn_time", p.turn_time},
              {"turn_angle", p.turn_angle},
              {"turn_blend_s", p.turn_blend_s},
              {"duration", p.duration},
              {"rate_hz", p.rate_hz},
              {"stationary_prefix_s", p.stationary_prefix_s},
              {"speed_ramp_s", p.speed_ramp_s}};
}

MotionProfile profile_from_json(const json& j) {
  MotionProfile p;
  p.kind = kind_from_string(j.value("kind", "straight"));
  p.speed = j.value("speed", p.speed);
  p.heading_amp = j.value("heading_amp", p.heading_amp);
  p.heading_period = j.value("heading_period", p.heading_period);
  p.base_heading = j.value("base_heading", p.base_heading);
  p.turn_time = j.value("turn_time", p.turn_time);
  p.turn_angle = j.value("turn_angle", p.turn_angle);
  p.turn_blend_s = j.value("turn_blend_s", p.turn_blend_s);
  p.duration = j.value("duration", p.duration);
  p.rate_hz = j.value("rate_hz", p.rate_hz);
  p.stationary_prefix_s = j.value("stationary_prefix_s", p.stationary_prefix_s);
  p.speed_ramp_s = j.value("speed_ramp_s", p.speed_ramp_s);
  return p;
}

}  // namespace

Scenario default_scenario() {
  Scenario sc;
  sc.seed = 20240117;

  MotionProfile train;
  train.kind = MotionKind::kSnake;
  train.speed = 1.0;
  train.heading_amp = 0.5;
  train.heading_period = 5.0;
  train.duration = 120.0;
  train.stationary_prefix_s = 60.0;
  train.speed_ramp_s = 2.0;
  sc.trajectories.push_back({"train_snake", "train", train, 1});

  MotionProfile straight;
  straight.kind = MotionKind::kStraight;
  straight.duration = 30.0;
  straight.stationary_prefix_s = 5.0;
  straight.speed_ramp_s = 2.0;
  sc.trajectories.push_back({"test_straight", "test", straight, 1});

  MotionProfile snake_a;
  snake_a.kind = MotionKind::kSnake;
  snake_a.heading_amp = 0.45;
  snake_a.heading_period = 4.0;
  snake_a.duration = 45.0;
  snake_a.stationary_prefix_s = 5.0;
  snake_a.speed_ramp_s = 2.0;
  sc.trajectories.push_back({"test_snake_a", "test", snake_a, 1});

  MotionProfile snake_b;
  snake_b.kind = MotionKind::kSnake;
  snake_b.heading_amp = 0.6;
  snake_b.heading_period = 6.0;
  snake_b.duration = 60.0;
  snake_b.stationary_prefix_s = 5.0;
  snake_b.speed_ramp_s = 2.0;
  sc.trajectories.push_back({"test_snake_b", "test", snake_b, 1});

  MotionProfile l_turn;
  l_turn.kind = MotionKind::kLTurn;
  l_turn.turn_time = 20.0;
  l_turn.turn_angle = 1.5707963267948966;
  l_turn.turn_blend_s = 3.0;
  l_turn.duration = 40.0;
  l_turn.stationary_prefix_s = 5.0;
  l_turn.speed_ramp_s = 2.0;
  sc.trajectories.push_back({"test_l_turn", "test", l_turn, 1});

  return sc;
}

void validate_scenario(const Scenario& sc) {
  if (sc.trajectories.empty()) throw DataError("scenario: no trajectories");
  for (const auto& t : sc.trajectories) {
    if (t.name.empty()) throw DataError("scenario: trajectory without a name");
    if (t.role != "train" && t.role != "test")
      throw DataError("scenario: trajectory '" + t.name + "' role must be train or test");
    if (t.gt_decimation < 1)
      throw DataError("scenario: trajectory '" + t.name + "' gt_decimation must be >= 1");
    try {
      validate_profile(t.profile);
    } catch (const DataError& e) {
      throw DataError("scenario: trajectory '" + t.name + "': " + e.what());
    }
  }
  const auto& e = sc.errors;
  if (e.gyro_bias_deg_per_hour < 0 || e.accel_bias_mg < 0 ||
      e.gyro_noise_density_deg_per_s_sqrt_hz < 0 || e.accel_noise_density_ug_sqrt_hz < 0 ||
      e.error_scale < 0)
    throw DataError("scenario: sensor error magnitudes must be non-negative");
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open scenario file " + path.string());
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw DataError("scenario " + path.string() + ": " + e.what());
  }
  Scenario sc;
  try {
    sc.seed = j.value("seed", sc.seed);
    if (j.contains("imu")) {
      const json& je = j["imu"];
      auto& e = sc.errors;
      e.gyro_bias_deg_per_hour = je.value("gyro_bias_deg_per_hour", e.gyro_bias_deg_per_hour);
      e.accel_bias_mg = je.value("accel_bias_mg", e.accel_bias_mg);
      e.gyro_noise_density_deg_per_s_sqrt_hz =
          je.value("gyro_noise_density_deg_per_s_sqrt_hz", e.gyro_noise_density_deg_per_s_sqrt_hz);
      e.accel_noise_density_ug_sqrt_hz =
          je.value("accel_noise_density_ug_sqrt_hz", e.accel_noise_density_ug_sqrt_hz);
      e.error_scale = je.value("error_scale", e.error_scale);
    }
    for (const json& jt : j.value("trajectories", json::array())) {
      ScenarioTrajectory t;
      t.name = jt.value("name", "");
      t.role = jt.value("role", "test");
      t.gt_decimation = jt.value("gt_decimation", 1);
      t.profile = profile_from_json(jt);
      sc.trajectories.push_back(std::move(t));
    }
  } catch (const json::exception& e) {
    throw DataError("scenario " + path.string() + ": " + e.what());
  }
  validate_scenario(sc);
  return sc;
}

void save_scenario(const std::filesystem::path& path, const Scenario& sc) {
  json j;
  j["seed"] = sc.seed;
  j["imu"] = json{{"gyro_bias_deg_per_hour", sc.errors.gyro_bias_deg_per_hour},
                  {"accel_bias_mg", sc.errors.accel_bias_mg},
                  {"gyro_noise_density_deg_per_s_sqrt_hz", sc.errors.gyro_noise_density_deg_per_s_sqrt_hz},
                  {"accel_noise_density_ug_sqrt_hz", sc.errors.accel_noise_density_ug_sqrt_hz},
                  {"error_scale", sc.errors.error_scale}};
  j["trajectories"] = json::array();
  for (const auto& t : sc.trajectories) {
    json jt = profile_to_json(t.profile);
    jt["name"] = t.name;
    jt["role"] = t.role;
    jt["gt_decimation"] = t.gt_decimation;
    j["trajectories"].push_back(jt);
  }
  std::ofstream out(path);
  if (!out) throw DataError("cannot write scenario file " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace morpi::sim
