#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "morpi/ndiff/optimizer.hpp"
#include "morpi/normalize.hpp"

namespace morpi::ndiff {

inline constexpr const char* kCheckpointMagic = "MORPIPINN-CKPT-1";

/// Self-describing training snapshot: architecture, flattened parameters,
/// per-axis normalization statistics, optimizer state, RNG seeds and the
/// epoch counter. `meta` carries consumer-specific keys (window geometry).
struct Checkpoint {
  MlpSpec arch;
  Eigen::VectorXd flat_params;
  std::vector<AxisStats> input_stats;
  std::vector<AxisStats> output_stats;
  OptimizerState opt;
  std::uint64_t init_seed = 0;
  std::uint64_t train_seed = 0;
  long epoch = 0;
  nlohmann::json meta = nlohmann::json::object();
  std::string created_at;  ///< empty under --reproducible

  Params params() const { return Params::unflatten(arch, flat_params); }
};

void save_checkpoint(const std::filesystem::path& path, const Checkpoint& ckpt);

/// Throws DataError on a missing/mismatched magic string or malformed file.
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace morpi::ndiff
