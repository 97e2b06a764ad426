#include "morpi/normalize.hpp"

#include <cmath>

#include "morpi/errors.hpp"

namespace morpi {

AxisStats axis_stats(std::span<const double> axis) {
  if (axis.empty()) throw DataError("cannot normalize an empty axis");
  double sum = 0.0;
  for (double v : axis) sum += v;
  const double mean = sum / static_cast<double>(axis.size());
  double sq = 0.0;
  for (double v : axis) sq += (v - mean) * (v - mean);
  double std_dev = std::sqrt(sq / static_cast<double>(axis.size()));
  if (std_dev == 0.0) std_dev = 1.0;  // constant axis: keep the map invertible
  return {mean, std_dev};
}

std::pair<std::vector<std::vector<double>>, std::vector<AxisStats>> normalize_axes(
    const std::vector<std::vector<double>>& axes) {
  std::vector<std::vector<double>> out(axes.size());
  std::vector<AxisStats> stats(axes.size());
  for (std::size_t a = 0; a < axes.size(); ++a) {
    stats[a] = axis_stats(axes[a]);
    out[a].reserve(axes[a].size());
    for (double v : axes[a]) out[a].push_back(normalize_value(v, stats[a]));
  }
  return {std::move(out), std::move(stats)};
}

std::vector<std::vector<double>> denormalize_axes(const std::vector<std::vector<double>>& normalized,
                                                  const std::vector<AxisStats>& stats) {
  if (normalized.size() != stats.size())
    throw DataError("denormalize_axes: axis count does not match statistics");
  std::vector<std::vector<double>> out(normalized.size());
  for (std::size_t a = 0; a < normalized.size(); ++a) {
    out[a].reserve(normalized[a].size());
    for (double v : normalized[a]) out[a].push_back(denormalize_value(v, stats[a]));
  }
  return out;
}

}  // namespace morpi
