#ifndef USVWAVE_CONFIG_HPP
#define USVWAVE_CONFIG_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "usvwave/estimation.hpp"
#include "usvwave/model.hpp"
#include "usvwave/planner.hpp"
#include "usvwave/sim.hpp"

namespace usvwave {

enum class Task { EstimateOnly, Follow, Land };
enum class Variant { FullFusion, GpsOnly, ImuOnly, UvdarOnly, AprilTagOnly, NoWaveModel, SotaProxy };

const char* task_name(Task task);
const char* variant_name(Variant variant);
Task task_from_name(const std::string& name);
Variant variant_from_name(const std::string& name);

struct EstimatorConfig {
  double q_position = 1e-8;
  double q_velocity = 2e-5;
  double q_wave = 5e-5;
  double init_std_position = 2.0;
  double init_std_orientation = 0.5;
  double init_std_velocity = 1.0;
  double init_std_wave = 0.5;
  bool init_from_truth = false;
};

struct PredictorConfig {
  int steps = 200;
  double rate_hz = 20.0;
};

struct PlannerSettings {
  double rate_hz = 50.0;
  FollowConfig follow;
  LandingConfig landing;
  double align_at = 3.0;
};

struct MetricsConfig {
  double warmup_s = 5.0;
};

/// Fully-resolved scenario: every module's configuration plus run metadata.
/// Built by load_scenario_config from the JSON schema documented in the
/// README; unknown keys are hard errors.
struct ScenarioConfig {
  double duration = 60.0;
  unsigned long seed = 1;
  Task task = Task::EstimateOnly;
  Variant variant = Variant::FullFusion;

  double model_dt = 0.01;  // estimator/predictor cadence
  Vector6d mass = (Vector6d() << 300, 350, 450, 60, 300, 320).finished();
  Vector6d damping = (Vector6d() << 60, 120, 250, 30, 90, 80).finished();
  Vector6d restoring = (Vector6d() << 0, 0, 800, 300, 600, 0).finished();
  WaveBank wave_bank;

  EstimatorConfig estimator;
  std::array<SensorSpec, 4> sensors;  // gps, imu, uvdar, apriltag
  TruthConfig truth;
  PredictorConfig predictor;
  PlannerSettings planner;
  Eigen::Vector3d uav_initial{0.0, 0.0, 3.0};
  MetricsConfig metrics;

  RigidBodyParams rigid_params() const {
    return RigidBodyParams::diagonal(mass, damping, restoring);
  }
};

/// Default configuration: the wavy scenario (waves in heave/roll/pitch with
/// small surge/sway/yaw components, drifting USV, all sensors on).
ScenarioConfig default_scenario();

/// Parse a scenario from JSON text. Missing keys keep defaults; unknown keys
/// throw ConfigError naming the full key path.
ScenarioConfig parse_scenario_config(const std::string& json_text, const std::string& origin);

/// Load and validate a scenario file with optional `key.path=value` overrides.
ScenarioConfig load_scenario_config(const std::string& path,
                                    const std::vector<std::string>& overrides = {});

/// Cross-field validation (rates divisible by the sim step, horizon covers
/// the MPC window, positive masses, ...). Throws ConfigError.
void validate_scenario_config(const ScenarioConfig& cfg);

/// Apply the estimator-side variant: single-sensor variants disable the other
/// sensors, no-wave-model clears the estimator bank, sota-proxy combines
/// apriltag-only with no-wave-model. Truth is never touched.
void apply_variant(ScenarioConfig& cfg);

}  // namespace usvwave

#endif  // USVWAVE_CONFIG_HPP
