#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace morpi {

/// Per-axis normalization statistics. Population standard deviation; a
/// constant axis records std = 1 so the transform stays invertible.
struct AxisStats {
  double mean = 0.0;
  double std = 1.0;
};

/// Statistics of one axis (population convention, constant axis -> std 1).
AxisStats axis_stats(std::span<const double> axis);

inline double normalize_value(double v, const AxisStats& s) { return (v - s.mean) / s.std; }
inline double denormalize_value(double v, const AxisStats& s) { return v * s.std + s.mean; }

/// Normalizes each axis independently with its own statistics.
/// Returns the normalized axes and the statistics needed for exact inversion.
/// Throws DataError on an empty axis.
std::pair<std::vector<std::vector<double>>, std::vector<AxisStats>> normalize_axes(
    const std::vector<std::vector<double>>& axes);

/// Exact inverse of normalize_axes given the recorded statistics.
std::vector<std::vector<double>> denormalize_axes(
    const std::vector<std::vector<double>>& normalized, const std::vector<AxisStats>& stats);

}  // namespace morpi
