#pragma once

#include <cstddef>
#include <vector>

#include "morpi/types.hpp"

namespace morpi {

/// A contiguous run of IMU samples with the ground-truth state at its first
/// timestamp. Windows may overlap.
struct Window {
  std::vector<ImuSample> samples;
  NavState anchor;
};

/// Cuts overlapping windows starting at indices 0, stride, 2*stride, ...;
/// the trailing partial window is dropped. The anchor is the GT state at the
/// window's first timestamp (linearly interpolated when GT is sparser than
/// the IMU stream, e.g. the 12:1 RTK-to-IMU ratio).
///
/// Preconditions checked: window_len >= 2, stride >= 1, GT timestamps are a
/// subset of IMU timestamps (1e-9 s) and GT spans all window-start times.
/// Throws DataError when the data is shorter than one window.
std::vector<Window> make_windows(const std::vector<ImuSample>& imu, const Trajectory& gt,
                                 std::size_t window_len, std::size_t stride);

}  // namespace morpi
