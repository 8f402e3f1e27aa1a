#ifndef USVWAVE_PLANNER_HPP
#define USVWAVE_PLANNER_HPP

#include <optional>
#include <vector>

#include "usvwave/estimation.hpp"
#include "usvwave/prediction.hpp"
#include "usvwave/types.hpp"

namespace usvwave {

/// Point-mass UAV state in the world frame.
struct UavState {
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
};

/// Follow-task tracking configuration: hover offset above the deck, MPC
/// window, tracking weights, and per-axis kinematic limits.
struct FollowConfig {
  double hover_height = 2.5;
  int horizon_steps = 90;  // N_m
  double dt = 0.02;        // dt_m
  double w_position = 40.0;
  double w_velocity = 20.0;
  double w_accel = 1.0;
  double v_max = 4.0;
  double a_max = 6.0;
};

/// Landing-task configuration: descent rate relative to the deck, touchdown
/// detection, and the safe-landing predicate thresholds.
struct LandingConfig {
  double descent_rate = 0.12;        // v_d, m/s relative to the deck
  double touchdown_height = 0.10;    // declare contact below this est. height
  double max_tilt = 0.15;            // |phi|, |theta| bound, rad
  double max_horizontal_error = 0.3; // m
  double max_heave_rate = 0.3;       // predicted |w| bound, m/s
  double dwell = 1.0;                // required continuous predicate time, s
  double heave_window = 0.8;         // lookahead for the heave-rate check, s
  double contact_speed_bound = 0.3;  // |relative vertical speed| at contact
  double abort_tilt = 0.25;          // Descend abort thresholds
  double abort_horizontal_error = 0.5;
  double final_approach_height = 0.5;  // below this, contact-phase rules apply
  double max_contact_updraft = 0.10;   // descend only onto a flat or falling deck
  double abort_heave_rate = 0.45;      // predicted updraft that forces a climb-out
};

enum class LandingPhase { Follow, Align, Descend, Touchdown, Aborted };

const char* phase_name(LandingPhase phase);

struct Setpoint {
  double stamp = 0.0;
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
};

/// Planner output: feasible setpoint sequence plus the landing phase.
struct PlanOutput {
  std::vector<Setpoint> setpoints;
  LandingPhase phase = LandingPhase::Follow;
};

struct ReferencePoint {
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  Eigen::Vector3d velocity{Eigen::Vector3d::Zero()};
};

/// Reference trajectory of cfg.horizon_steps points at cfg.dt, starting one
/// step after t0. Follow/Align hold the hover offset above the predicted
/// deck; Descend ramps the offset down at the descent rate (frozen when
/// hold_descent is set); Touchdown keeps descending to the deck plane.
std::vector<ReferencePoint> reference_from_horizon(const PredictionHorizon& horizon,
                                                   const FollowConfig& cfg, double t0,
                                                   LandingPhase phase,
                                                   const LandingConfig* landing = nullptr,
                                                   double rel_height = 0.0,
                                                   bool hold_descent = false);

/// Linear MPC on a per-axis double integrator: exact unconstrained solve of
/// the tracking QP followed by a feasibility clamp of accelerations and
/// velocities. Deterministic; setpoints respect the limits by construction.
class MpcPlanner {
 public:
  explicit MpcPlanner(const FollowConfig& cfg);

  PlanOutput solve(const UavState& uav, const std::vector<ReferencePoint>& reference,
                   double t0, LandingPhase phase) const;

  const FollowConfig& config() const { return cfg_; }

 private:
  FollowConfig cfg_;
  Eigen::MatrixXd accel_to_pos_;  // maps accelerations to positions at k=1..N
  Eigen::MatrixXd accel_to_vel_;
  Eigen::LLT<Eigen::MatrixXd> hessian_llt_;
};

/// One-shot convenience wrapper around MpcPlanner::solve.
PlanOutput mpc_solve(const UavState& uav, const std::vector<ReferencePoint>& reference,
                     const FollowConfig& cfg, double t0 = 0.0,
                     LandingPhase phase = LandingPhase::Follow);

/// Landing phase transition logic. Align -> Descend requires the safe-landing
/// predicate to hold continuously for cfg.dwell (tracked via dwell_accum);
/// tilt or horizontal-error violations during Descend abort, as does a
/// predicted heave-rate violation once inside the final approach (higher up
/// it merely pauses the ramp); Aborted falls back to Follow on the next
/// tick. Touchdown is terminal.
LandingPhase landing_fsm(LandingPhase phase, const VesselBelief& belief,
                         const PredictionHorizon& horizon, const UavState& uav,
                         const LandingConfig& cfg, bool align_commanded, double dt,
                         double& dwell_accum);

/// World pose of the deck according to the belief mean.
EulerPose belief_world_pose(const VesselBelief& belief);

/// Largest predicted |heave rate| over the next window seconds of the horizon.
double predicted_heave_rate(const PredictionHorizon& horizon, double t, double window);

/// Largest predicted upward deck velocity (signed heave rate) over the window.
double predicted_updraft(const PredictionHorizon& horizon, double t, double window);

/// Stateful follow/land planner driven at a fixed rate; owns the MPC solver
/// and the landing state machine.
class FollowLandPlanner {
 public:
  FollowLandPlanner(const FollowConfig& follow, std::optional<LandingConfig> landing,
                    double align_at);

  /// Plan from the current UAV state, belief, and freshest horizon at time t.
  PlanOutput tick(double t, double dt, const UavState& uav, const VesselBelief& belief,
                  const PredictionHorizon& horizon);

  LandingPhase phase() const { return phase_; }
  int aborts() const { return aborts_; }
  double descent_offset() const { return rel_height_; }

 private:
  MpcPlanner mpc_;
  std::optional<LandingConfig> landing_;
  double align_at_ = 0.0;
  LandingPhase phase_ = LandingPhase::Follow;
  double dwell_accum_ = 0.0;
  double rel_height_ = 0.0;
  int aborts_ = 0;
};

}  // namespace usvwave

#endif  // USVWAVE_PLANNER_HPP
