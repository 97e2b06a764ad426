#include "morpi/csv.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "morpi/errors.hpp"

namespace morpi {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(field);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_field(const std::string& field, const std::filesystem::path& path, std::size_t line_no,
                   const char* column) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  while (begin != end && (*begin == ' ' || *begin == '\t')) ++begin;
  while (end != begin && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) --end;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end)
    throw DataError(path.string() + ":" + std::to_string(line_no) + ": cannot parse '" + field +
                    "' as number for column " + column);
  return value;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

void check_header(const std::filesystem::path& path, std::ifstream& in, const std::string& expected) {
  std::string header;
  if (!std::getline(in, header))
    throw DataError(path.string() + ":1: empty file, expected header '" + expected + "'");
  if (strip_cr(header) != expected)
    throw DataError(path.string() + ":1: bad header '" + header + "', expected '" + expected + "'");
}

}  // namespace

std::vector<ImuSample> read_imu_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  check_header(path, in, "t,fx,fy,wz");
  std::vector<ImuSample> out;
  std::string line;
  std::size_t line_no = 1;
  static const char* cols[] = {"t", "fx", "fy", "wz"};
  while (std::getline(in, line)) {
    ++line_no;
    if (strip_cr(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 4)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": expected 4 fields (t,fx,fy,wz), got " +
                      std::to_string(fields.size()));
    double v[4];
    for (int i = 0; i < 4; ++i) v[i] = parse_field(fields[i], path, line_no, cols[i]);
    for (int i = 0; i < 4; ++i)
      if (!std::isfinite(v[i]))
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-finite value in column " + cols[i]);
    if (v[0] < 0.0)
      throw DataError(path.string() + ":" + std::to_string(line_no) + ": negative timestamp");
    out.push_back({v[0], v[1], v[2], v[3]});
  }
  return out;
}

Trajectory read_gt_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open " + path.string());
  check_header(path, in, "t,x,y,vx,vy,psi");
  Trajectory traj;
  std::string line;
  std::size_t line_no = 1;
  static const char* cols[] = {"t", "x", "y", "vx", "vy", "psi"};
  while (std::getline(in, line)) {
    ++line_no;
    if (strip_cr(line).empty()) continue;
    auto fields = split_fields(line);
    if (fields.size() != 6)
      throw DataError(path.string() + ":" + std::to_string(line_no) +
                      ": expected 6 fields (t,x,y,vx,vy,psi), got " + std::to_string(fields.size()));
    double v[6];
    for (int i = 0; i < 6; ++i) v[i] = parse_field(fields[i], path, line_no, cols[i]);
    for (int i = 0; i < 6; ++i)
      if (!std::isfinite(v[i]))
        throw DataError(path.string() + ":" + std::to_string(line_no) + ": non-finite value in column " + cols[i]);
    traj.states.push_back({v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  if (traj.states.size() >= 2) {
    const double dt = traj.states[1].t - traj.states[0].t;
    if (!(dt > 0.0)) throw DataError(path.string() + ": timestamps not strictly increasing");
    traj.rate_hz = 1.0 / dt;
    validate_trajectory(traj);
  } else if (traj.states.size() == 1) {
    traj.rate_hz = 0.0;
  }
  return traj;
}

void write_imu_csv(const std::filesystem::path& path, const std::vector<ImuSample>& samples) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "t,fx,fy,wz\n";
  for (const ImuSample& s : samples)
    out << format_double(s.t) << ',' << format_double(s.fx) << ',' << format_double(s.fy) << ','
        << format_double(s.omega_z) << '\n';
}

void write_gt_csv(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path.string());
  out << "t,x,y,vx,vy,psi\n";
  for (const NavState& s : traj.states)
    out << format_double(s.t) << ',' << format_double(s.x) << ',' << format_double(s.y) << ','
        << format_double(s.vx) << ',' << format_double(s.vy) << ',' << format_double(s.psi) << '\n';
}

}  // namespace morpi
