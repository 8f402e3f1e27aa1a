#ifndef USVWAVE_SIM_HPP
#define USVWAVE_SIM_HPP

#include <array>
#include <random>
#include <vector>

#include "usvwave/estimation.hpp"
#include "usvwave/model.hpp"
#include "usvwave/planner.hpp"
#include "usvwave/types.hpp"

namespace usvwave {

/// One truth wave oscillator: frequency, damping, and the output amplitude
/// (an acceleration, m/s^2 or rad/s^2) it is initialized to.
struct TruthWaveComponent {
  double omega0 = 1.0;
  double lambda = 0.0;
  double amplitude = 0.0;
};

/// Piecewise-constant forcing: surge thrust (N) and commanded yaw rate
/// (rad/s, tracked by a proportional yaw moment) from time t onward.
struct ForcingSegment {
  double t = 0.0;
  double surge_thrust = 0.0;
  double yaw_rate = 0.0;
};

struct ObserverNoise {
  double position_std = 0.05;
  double orientation_std = 0.01;
};

/// Synthetic sensor specification. max_range and dropout apply to the vision
/// sensors only; delay shifts delivery to the estimator.
struct SensorSpec {
  bool enabled = true;
  double rate_hz = 10.0;
  Eigen::VectorXd noise_std;
  double delay = 0.0;
  double gate_threshold = 0.0;
  double max_range = 0.0;  // 0: unlimited
  double dropout = 0.0;
};

/// Ground-truth world configuration. In linear mode the truth propagates the
/// estimator's discrete model exactly (the degenerate consistency case); the
/// wave spectrum then only seeds the initial oscillator states. In the
/// default nonlinear mode the truth integrates the full Euler-angle
/// kinematics with its own (typically richer) wave spectrum via RK4.
struct TruthConfig {
  double dt = 0.005;
  bool linear = false;
  RigidBodyParams rigid;
  Vector6d initial_pose = Vector6d::Zero();
  Vector6d initial_velocity = Vector6d::Zero();
  std::array<std::vector<TruthWaveComponent>, 6> wave_spectrum;  // per nu channel
  std::vector<ForcingSegment> forcing;
  double yaw_gain = 400.0;
  ObserverNoise observer_noise;
};

/// Ground-truth state: USV world pose, body velocities, wave oscillator
/// states per channel, UAV state, and the simulation clock.
struct TruthState {
  EulerPose pose;
  BodyVelocity velocity;
  std::array<std::vector<Eigen::Vector2d>, 6> wave_states;
  UavState uav;
  double clock = 0.0;
};

/// Initialize the truth from the config; wave oscillator phases are drawn
/// uniformly from the given engine so that every component starts at its
/// configured output amplitude.
TruthState init_truth(const TruthConfig& cfg, std::mt19937_64& rng);

/// Advance the USV truth by dt (RK4 over the pose kinematics, rigid-body
/// dynamics with wave and forcing inputs, and the wave oscillators). Throws
/// GimbalSingularityError when |pitch| reaches pi/2. The UAV state is not
/// touched here; the scenario loop owns it.
TruthState step_truth(const TruthState& state, const TruthConfig& cfg, double dt);

/// Summed wave output (an acceleration) currently injected into channel ch.
double wave_output(const TruthState& state, int ch);

/// World-frame linear velocity of the USV (deck velocity).
Eigen::Vector3d deck_world_velocity(const TruthState& state);

/// Sample one measurement of the given kind from the truth. Vision sensors
/// report the pose of the USV relative to the UAV plus an observer pose
/// perturbed by the configured self-localization noise. Gaussian measurement
/// noise is drawn per axis from spec.noise_std.
Measurement make_sensor_measurement(SensorKind kind, const TruthState& truth,
                                    const SensorSpec& spec, const ObserverNoise& observer,
                                    std::mt19937_64& rng);

/// Fixed-rate sensor schedule with range gating and dropout. Each sensor owns
/// an independent RNG substream so that disabling one sensor does not perturb
/// the others (paired-seed comparisons rely on this).
class SensorScheduler {
 public:
  SensorScheduler(const std::array<SensorSpec, 4>& specs, const ObserverNoise& observer,
                  unsigned long seed);

  /// Emit all measurements due in (t_prev, t_now], sampled from the truth.
  std::vector<Measurement> collect(const TruthState& truth, double t_prev, double t_now);

  long emitted(SensorKind kind) const { return emitted_[static_cast<int>(kind)]; }
  long dropped(SensorKind kind) const { return dropped_[static_cast<int>(kind)]; }

 private:
  std::array<SensorSpec, 4> specs_;
  ObserverNoise observer_;
  std::array<std::mt19937_64, 4> rngs_;
  std::array<long, 4> next_index_{};
  std::array<long, 4> emitted_{};
  std::array<long, 4> dropped_{};
};

/// Derive an independent RNG substream from a master seed.
std::mt19937_64 substream(unsigned long seed, unsigned long stream_id);

}  // namespace usvwave

#endif  // USVWAVE_SIM_HPP
