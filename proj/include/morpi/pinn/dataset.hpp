#pragma once

#include <cstddef>
#include <vector>

#include "morpi/ndiff/tape.hpp"
#include "morpi/normalize.hpp"
#include "morpi/types.hpp"

namespace morpi::pinn {

using ndiff::Mat;

/// How window targets are expressed relative to the window anchor state.
/// kSe2 subtracts the anchor position AND rotates into the anchor-yaw frame
/// (heading-equivariant); kTranslate subtracts the position only.
enum class WindowFrame { kSe2, kTranslate };

WindowFrame window_frame_from_string(const std::string& s);
std::string to_string(WindowFrame frame);

/// Trims the first trim_s seconds and re-zeros the time axis of both streams.
struct PreprocessedRun {
  std::vector<ImuSample> imu;
  Trajectory gt;
};
PreprocessedRun preprocess_run(const std::vector<ImuSample>& imu, const Trajectory& gt,
                               double trim_s);
std::vector<ImuSample> preprocess_imu(const std::vector<ImuSample>& imu, double trim_s);

/// Flattened per-window-sample training tensors. Columns are samples; the
/// samples of window w occupy columns [w*window_len, (w+1)*window_len).
///   inputs : 4 x N physical units (t_rel, fx, fy, wz)
///   targets: 4 x N physical units, window frame (x_rel, y_rel, vx_rel, vy_rel)
struct SupervisedData {
  Mat inputs;
  Mat targets;
  std::size_t window_len = 0;
  std::size_t n_windows = 0;
  WindowFrame frame = WindowFrame::kSe2;

  bool empty() const { return n_windows == 0; }
};

/// Cuts windows (anchors from GT) and assembles the supervised tensors.
/// Per-sample targets are interpolated from GT and re-expressed in each
/// window's anchor frame; the time input is window-relative.
SupervisedData build_supervised(const std::vector<ImuSample>& imu, const Trajectory& gt,
                                std::size_t window_len, std::size_t stride, WindowFrame frame);

/// Splits off the last `val_fraction` of windows by time (no shuffling).
std::pair<SupervisedData, SupervisedData> split_validation(const SupervisedData& data,
                                                           double val_fraction);

/// Normalization statistics: 4 input axes from the training inputs, 4 output
/// axes from the training targets, identity stats for the yaw output (it has
/// no supervision, so no data-derived scale).
struct NormStats {
  std::vector<AxisStats> input;   // t, fx, fy, wz
  std::vector<AxisStats> output;  // x, y, vx, vy, psi
};
NormStats compute_stats(const SupervisedData& train);

/// Applies per-row statistics to a column-sample matrix.
Mat normalize_rows(const Mat& raw, const std::vector<AxisStats>& stats);
Mat denormalize_rows(const Mat& normalized, const std::vector<AxisStats>& stats);

}  // namespace morpi::pinn
