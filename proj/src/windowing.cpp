#include "morpi/windowing.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "morpi/errors.hpp"

namespace morpi {

namespace {
constexpr double kTimeTol = 1e-9;
}

NavState interpolate_state(const Trajectory& traj, double t) {
  const auto& s = traj.states;
  if (s.empty()) throw DataError("cannot interpolate an empty trajectory");
  if (t < s.front().t - kTimeTol || t > s.back().t + kTimeTol)
    throw DataError("interpolation time " + std::to_string(t) + " outside trajectory span");
  auto it = std::lower_bound(s.begin(), s.end(), t,
                             [](const NavState& a, double tt) { return a.t < tt; });
  if (it == s.end()) return s.back();
  if (it == s.begin() || std::abs(it->t - t) <= kTimeTol) return *it;
  const NavState& hi = *it;
  const NavState& lo = *(it - 1);
  const double a = (t - lo.t) / (hi.t - lo.t);
  NavState out;
  out.t = t;
  out.x = lo.x + a * (hi.x - lo.x);
  out.y = lo.y + a * (hi.y - lo.y);
  out.vx = lo.vx + a * (hi.vx - lo.vx);
  out.vy = lo.vy + a * (hi.vy - lo.vy);
  out.psi = lo.psi + a * (hi.psi - lo.psi);  // yaw is stored unwrapped
  return out;
}

std::vector<Window> make_windows(const std::vector<ImuSample>& imu, const Trajectory& gt,
                                 std::size_t window_len, std::size_t stride) {
  if (window_len < 2) throw DataError("window_len must be >= 2");
  if (stride < 1) throw DataError("stride must be >= 1");
  if (imu.size() < window_len)
    throw DataError("insufficient data: " + std::to_string(imu.size()) + " samples for window of " +
                    std::to_string(window_len));
  if (gt.states.empty()) throw DataError("ground truth trajectory is empty");

  // Every GT timestamp must coincide with one IMU timestamp.
  std::size_t j = 0;
  for (const NavState& s : gt.states) {
    while (j < imu.size() && imu[j].t < s.t - kTimeTol) ++j;
    if (j == imu.size() || std::abs(imu[j].t - s.t) > kTimeTol)
      throw DataError("GT timestamp " + std::to_string(s.t) + " has no coinciding IMU sample");
  }

  const std::size_t count = (imu.size() - window_len) / stride + 1;
  std::vector<Window> windows;
  windows.reserve(count);
  for (std::size_t w = 0; w < count; ++w) {
    const std::size_t start = w * stride;
    Window win;
    win.samples.assign(imu.begin() + static_cast<std::ptrdiff_t>(start),
                       imu.begin() + static_cast<std::ptrdiff_t>(start + window_len));
    win.anchor = interpolate_state(gt, imu[start].t);
    windows.push_back(std::move(win));
  }
  return windows;
}

}  // namespace morpi
