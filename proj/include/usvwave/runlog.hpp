#ifndef USVWAVE_RUNLOG_HPP
#define USVWAVE_RUNLOG_HPP

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "usvwave/types.hpp"

namespace usvwave {

/// One row per simulation tick. Poses are world-frame, velocities body-frame.
/// Prediction columns are NaN except on ticks where a fresh horizon was
/// computed; they carry the horizon endpoint and its target time. Setpoint
/// columns are NaN while no plan is active; phase is -1 then.
struct RunLogRow {
  double t = 0.0;
  Vector6d truth_pose = Vector6d::Zero();
  Vector6d truth_vel = Vector6d::Zero();
  Vector6d est_pose = Vector6d::Zero();
  Vector6d est_vel = Vector6d::Zero();
  double pred_target_t = 0.0;
  Vector6d pred_pose = Vector6d::Zero();
  Eigen::Vector3d uav_pos = Eigen::Vector3d::Zero();
  Eigen::Vector3d uav_vel = Eigen::Vector3d::Zero();
  Eigen::Vector3d sp_pos = Eigen::Vector3d::Zero();
  Eigen::Vector3d sp_vel = Eigen::Vector3d::Zero();
  int phase = -1;
  std::array<long, 4> accepted{};       // gps, imu, uvdar, apriltag (cumulative)
  std::array<long, 4> gated{};
  std::array<long, 4> dropped_stale{};
  double touchdown_rel_speed = 0.0;     // NaN except on the contact tick
};

struct RunLog {
  unsigned long seed = 0;
  double dt = 0.0;
  std::vector<RunLogRow> rows;
};

/// Version tag written as the first line of every log CSV.
extern const char* const kLogSchema;

/// Column names of the log CSV, in order.
const std::vector<std::string>& log_columns();

/// Write the log as CSV. Doubles use shortest round-trip formatting so a
/// parsed log reproduces the in-memory values exactly.
void write_runlog_csv(const RunLog& log, std::ostream& os);
void write_runlog_csv(const RunLog& log, const std::string& path);

/// Parse a log CSV produced by write_runlog_csv. Throws std::runtime_error
/// on schema mismatch or malformed rows.
RunLog read_runlog_csv(std::istream& is);
RunLog read_runlog_csv(const std::string& path);

}  // namespace usvwave

#endif  // USVWAVE_RUNLOG_HPP
