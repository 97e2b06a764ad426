#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "morpi/types.hpp"

namespace morpi {

// CSV schemas (header row mandatory, UTF-8, '.' decimal separator):
//   imu.csv: t,fx,fy,wz            [s, m/s^2, m/s^2, rad/s]
//   gt.csv:  t,x,y,vx,vy,psi       [s, m, m, m/s, m/s, rad]
// Schema violations raise DataError naming the file, line number and the
// expected columns.

std::vector<ImuSample> read_imu_csv(const std::filesystem::path& path);
Trajectory read_gt_csv(const std::filesystem::path& path);

void write_imu_csv(const std::filesystem::path& path, const std::vector<ImuSample>& samples);
void write_gt_csv(const std::filesystem::path& path, const Trajectory& traj);

/// Shortest-round-trip-safe formatting used for every CSV number ("%.17g").
std::string format_double(double v);

}  // namespace morpi
