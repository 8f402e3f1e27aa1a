#ifndef USVWAVE_ESTIMATION_HPP
#define USVWAVE_ESTIMATION_HPP

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "usvwave/model.hpp"
#include "usvwave/types.hpp"

namespace usvwave {

/// Estimator belief: state mean, covariance, and time stamp.
struct VesselBelief {
  Eigen::VectorXd x;
  Eigen::MatrixXd P;
  double stamp = 0.0;
};

enum class SensorKind { Gps, Imu, Uvdar, AprilTag };

inline constexpr std::array<SensorKind, 4> kAllSensors = {SensorKind::Gps, SensorKind::Imu,
                                                          SensorKind::Uvdar, SensorKind::AprilTag};

const char* sensor_name(SensorKind kind);

/// Timestamped observation. Relative sensors (Uvdar, AprilTag) carry the
/// world-frame pose of the observing UAV; value is then the target pose
/// relative to the observer (position in observer body frame, orientation as
/// relative roll/pitch/yaw).
struct Measurement {
  double stamp = 0.0;
  SensorKind kind = SensorKind::Gps;
  Eigen::VectorXd value;
  Eigen::MatrixXd noise;
  std::optional<EulerPose> observer_pose;
};

/// Observation matrix, measurement noise, and Mahalanobis gate of one sensor.
/// angle_rows marks rows observing Euler angles (innovation is wrapped there).
struct SensorModel {
  Eigen::MatrixXd C;
  Eigen::MatrixXd base_noise;
  double gate_threshold = 0.0;  // squared Mahalanobis gate; <= 0 disables gating
  std::vector<bool> angle_rows;
};

struct ProcessNoise {
  Eigen::MatrixXd Q;
};

/// Block-diagonal process noise: per-step variances on pose, velocity, and the
/// velocity-like state of each wave component (position-like wave states get
/// none, which keeps the oscillators excitable without inflating them).
ProcessNoise make_process_noise(int n_components, double q_pos, double q_vel, double q_wave);

/// Per-sensor settings consumed by sensor_model_for.
struct SensorConfig {
  Eigen::VectorXd noise_std;     // one entry per observed axis
  double gate_threshold = 0.0;   // 0: chi-square 99.9% for the sensor dim; < 0: gating off
};

/// 99.9% chi-square quantile for dim degrees of freedom (dim 1..6).
double chi_square_gate_999(int dim);

/// Build the observation model of a sensor for state dimension n.
/// Gps observes (x, y, z); Imu observes (phi, theta, psi, p, q, r);
/// Uvdar and AprilTag observe the full 6-DOF pose. Wave states are never
/// observed directly.
SensorModel sensor_model_for(SensorKind kind, const SensorConfig& config, int n);

/// LKF prediction: x <- A_d x, P <- A_d P A_d' + Q, re-symmetrized; pose
/// angles wrapped; stamp advanced by model.dt.
VesselBelief predict_step(const VesselBelief& belief, const DiscreteModel& model,
                          const ProcessNoise& q);

/// LKF correction with Mahalanobis gating. Returns the posterior and whether
/// the measurement was accepted; a gated measurement leaves the belief
/// bit-identical. The measurement must already be in vessel-parallel/body
/// coordinates (see transform_measurement).
std::pair<VesselBelief, bool> correct_step(const VesselBelief& belief, const Measurement& meas,
                                           const SensorModel& sm);

/// Re-express a raw measurement in the estimator's frame using the current
/// yaw estimate: world positions rotate into the vessel-parallel frame,
/// relative poses are first composed with the observer pose.
Measurement transform_measurement(const Measurement& meas, double current_yaw);

struct SensorCounters {
  long accepted = 0;
  long gated = 0;
  long dropped_stale = 0;
};

/// Fixed-cadence estimator loop fusing asynchronous measurements.
/// Measurements are applied in non-decreasing stamp order between predict
/// steps (ties broken in kind order Gps, Imu, Uvdar, AprilTag); measurements
/// older than one estimator period are dropped and counted.
class MeasurementPipeline {
 public:
  MeasurementPipeline(VesselBelief initial, DiscreteModel model, ProcessNoise q,
                      std::map<SensorKind, SensorModel> sensors);

  void enqueue(const Measurement& meas) { queue_.push_back(meas); }

  /// Advance one estimator period: predict, then apply all queued
  /// measurements stamped within the period just covered.
  const VesselBelief& step();

  const VesselBelief& belief() const { return belief_; }
  const std::map<SensorKind, SensorCounters>& counters() const { return counters_; }
  double period() const { return model_.dt; }

 private:
  VesselBelief belief_;
  DiscreteModel model_;
  ProcessNoise q_;
  std::map<SensorKind, SensorModel> sensors_;
  std::vector<Measurement> queue_;
  std::map<SensorKind, SensorCounters> counters_;
  double base_stamp_ = 0.0;
  long steps_ = 0;
};

/// Run the pipeline for n_steps periods over a pre-recorded measurement
/// stream and return the final belief.
VesselBelief process_in_order(const VesselBelief& initial, const DiscreteModel& model,
                              const ProcessNoise& q,
                              const std::map<SensorKind, SensorModel>& sensors,
                              const std::vector<Measurement>& measurements, int n_steps,
                              std::map<SensorKind, SensorCounters>* counters_out = nullptr);

}  // namespace usvwave

#endif  // USVWAVE_ESTIMATION_HPP
