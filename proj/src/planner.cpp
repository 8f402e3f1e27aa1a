#include "usvwave/planner.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace usvwave {

const char* phase_name(LandingPhase phase) {
  switch (phase) {
    case LandingPhase::Follow:
      return "follow";
    case LandingPhase::Align:
      return "align";
    case LandingPhase::Descend:
      return "descend";
    case LandingPhase::Touchdown:
      return "touchdown";
    case LandingPhase::Aborted:
      return "aborted";
  }
  return "unknown";
}

EulerPose belief_world_pose(const VesselBelief& belief) {
  const EulerPose eta_L(belief.x.head<3>(), belief.x.segment<3>(3));
  return to_world(eta_L, belief.x[5]);
}

namespace {

double heave_window_peak(const PredictionHorizon& horizon, double t, double window,
                         bool signed_up) {
  const int first =
      entry_index_at(horizon, std::clamp(t, horizon.start_stamp, horizon.end_stamp()));
  const int last =
      entry_index_at(horizon, std::clamp(t + window, horizon.start_stamp, horizon.end_stamp()));
  double peak = signed_up ? -std::numeric_limits<double>::infinity() : 0.0;
  for (int i = first; i <= last; ++i) {
    const double w = horizon.means[i][8];  // body heave rate
    peak = std::max(peak, signed_up ? w : std::abs(w));
  }
  return peak;
}

}  // namespace

double predicted_heave_rate(const PredictionHorizon& horizon, double t, double window) {
  return heave_window_peak(horizon, t, window, false);
}

double predicted_updraft(const PredictionHorizon& horizon, double t, double window) {
  return heave_window_peak(horizon, t, window, true);
}

std::vector<ReferencePoint> reference_from_horizon(const PredictionHorizon& horizon,
                                                   const FollowConfig& cfg, double t0,
                                                   LandingPhase phase,
                                                   const LandingConfig* landing,
                                                   double rel_height, bool hold_descent) {
  const double window_end = t0 + cfg.horizon_steps * cfg.dt;
  if (window_end > horizon.end_stamp() + 1e-9 || t0 < horizon.start_stamp - 1e-9) {
    throw std::range_error("reference_from_horizon: horizon shorter than the MPC window");
  }
  const bool descending =
      landing != nullptr &&
      (phase == LandingPhase::Descend || phase == LandingPhase::Touchdown) && !hold_descent;

  std::vector<ReferencePoint> reference(cfg.horizon_steps);
  for (int k = 0; k < cfg.horizon_steps; ++k) {
    const double tk = t0 + (k + 1) * cfg.dt;
    const int idx = entry_index_at(horizon, tk);
    const Eigen::VectorXd& x = horizon.means[idx];
    const EulerPose deck = pose_at(horizon, tk);
    const Eigen::Vector3d deck_vel =
        rotation_from_euler(deck.orientation) * x.segment<3>(6);

    ReferencePoint& r = reference[k];
    r.position = deck.position;
    r.velocity = deck_vel;
    if (phase == LandingPhase::Follow || phase == LandingPhase::Align ||
        phase == LandingPhase::Aborted || landing == nullptr) {
      r.position.z() += cfg.hover_height;
    } else if (descending) {
      const double offset = std::max(rel_height - landing->descent_rate * (k + 1) * cfg.dt, 0.0);
      r.position.z() += offset;
      if (offset > 0.0) {
        r.velocity.z() -= landing->descent_rate;
      }
    } else {
      r.position.z() += rel_height;  // descent paused: hold the current offset
    }
  }
  return reference;
}

MpcPlanner::MpcPlanner(const FollowConfig& cfg) : cfg_(cfg) {
  if (cfg.horizon_steps < 1 || cfg.dt <= 0.0) {
    throw std::invalid_argument("MpcPlanner: horizon_steps and dt must be positive");
  }
  const int n = cfg.horizon_steps;
  const double dt = cfg.dt;
  // Double-integrator chain p_{k+1} = p_k + v_k dt, v_{k+1} = v_k + a_k dt:
  // p_k = p_0 + k dt v_0 + dt^2 sum_{i<k-1} (k-1-i) a_i, v_k = v_0 + dt sum a_i.
  accel_to_pos_ = Eigen::MatrixXd::Zero(n, n);
  accel_to_vel_ = Eigen::MatrixXd::Zero(n, n);
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i <= k - 2; ++i) {
      accel_to_pos_(k - 1, i) = dt * dt * (k - 1 - i);
    }
    for (int i = 0; i <= k - 1; ++i) {
      accel_to_vel_(k - 1, i) = dt;
    }
  }
  const Eigen::MatrixXd hessian =
      cfg.w_position * accel_to_pos_.transpose() * accel_to_pos_ +
      cfg.w_velocity * accel_to_vel_.transpose() * accel_to_vel_ +
      cfg.w_accel * Eigen::MatrixXd::Identity(n, n);
  hessian_llt_.compute(hessian);
  if (hessian_llt_.info() != Eigen::Success) {
    throw std::invalid_argument("MpcPlanner: tracking weights yield a non-PD Hessian");
  }
}

PlanOutput MpcPlanner::solve(const UavState& uav, const std::vector<ReferencePoint>& reference,
                             double t0, LandingPhase phase) const {
  const int n = cfg_.horizon_steps;
  if (static_cast<int>(reference.size()) != n) {
    throw std::invalid_argument("MpcPlanner: reference length must equal horizon_steps");
  }
  if (!uav.position.allFinite() || !uav.velocity.allFinite()) {
    throw std::invalid_argument("MpcPlanner: non-finite UAV state");
  }

  PlanOutput plan;
  plan.phase = phase;
  plan.setpoints.resize(n + 1);
  plan.setpoints[0] = Setpoint{t0, uav.position, uav.velocity};
  for (int k = 1; k <= n; ++k) {
    plan.setpoints[k].stamp = t0 + k * cfg_.dt;
  }

  for (int axis = 0; axis < 3; ++axis) {
    const double p0 = uav.position[axis];
    const double v0 = uav.velocity[axis];
    Eigen::VectorXd err_p(n), err_v(n);
    for (int k = 1; k <= n; ++k) {
      err_p[k - 1] = reference[k - 1].position[axis] - (p0 + k * cfg_.dt * v0);
      err_v[k - 1] = reference[k - 1].velocity[axis] - v0;
    }
    const Eigen::VectorXd gradient = cfg_.w_position * accel_to_pos_.transpose() * err_p +
                                     cfg_.w_velocity * accel_to_vel_.transpose() * err_v;
    Eigen::VectorXd accel = hessian_llt_.solve(gradient);

    // Feasibility clamp, then an exact forward rollout of the clamped inputs.
    double p = p0;
    double v = v0;
    for (int k = 0; k < n; ++k) {
      p += v * cfg_.dt;
      const double a = std::clamp(accel[k], -cfg_.a_max, cfg_.a_max);
      v = std::clamp(v + a * cfg_.dt, -cfg_.v_max, cfg_.v_max);
      plan.setpoints[k + 1].position[axis] = p;
      plan.setpoints[k + 1].velocity[axis] = v;
    }
  }
  return plan;
}

PlanOutput mpc_solve(const UavState& uav, const std::vector<ReferencePoint>& reference,
                     const FollowConfig& cfg, double t0, LandingPhase phase) {
  return MpcPlanner(cfg).solve(uav, reference, t0, phase);
}

LandingPhase landing_fsm(LandingPhase phase, const VesselBelief& belief,
                         const PredictionHorizon& horizon, const UavState& uav,
                         const LandingConfig& cfg, bool align_commanded, double dt,
                         double& dwell_accum) {
  const EulerPose deck = belief_world_pose(belief);
  const double tilt_roll = std::abs(belief.x[3]);
  const double tilt_pitch = std::abs(belief.x[4]);
  const double horizontal_error =
      (uav.position.head<2>() - deck.position.head<2>()).norm();
  const double heave_rate = predicted_heave_rate(horizon, belief.stamp, cfg.heave_window);
  const double rel_height = uav.position.z() - deck.position.z();

  switch (phase) {
    case LandingPhase::Follow:
      dwell_accum = 0.0;
      return align_commanded ? LandingPhase::Align : LandingPhase::Follow;
    case LandingPhase::Align: {
      const bool ok = tilt_roll <= cfg.max_tilt && tilt_pitch <= cfg.max_tilt &&
                      horizontal_error <= cfg.max_horizontal_error &&
                      heave_rate <= cfg.max_heave_rate;
      dwell_accum = ok ? dwell_accum + dt : 0.0;
      return dwell_accum >= cfg.dwell - 1e-9 ? LandingPhase::Descend : LandingPhase::Align;
    }
    case LandingPhase::Descend:
      if (rel_height <= cfg.touchdown_height) {
        return LandingPhase::Touchdown;
      }
      if (tilt_roll > cfg.abort_tilt || tilt_pitch > cfg.abort_tilt ||
          horizontal_error > cfg.abort_horizontal_error) {
        return LandingPhase::Aborted;
      }
      // So close to the deck that pausing cannot keep a rising deck away:
      // climb out and retry instead of waiting under a predicted slam.
      if (rel_height < cfg.final_approach_height &&
          predicted_updraft(horizon, belief.stamp, cfg.heave_window) > cfg.abort_heave_rate) {
        return LandingPhase::Aborted;
      }
      return LandingPhase::Descend;
    case LandingPhase::Aborted:
      dwell_accum = 0.0;
      return LandingPhase::Follow;
    case LandingPhase::Touchdown:
      return LandingPhase::Touchdown;
  }
  return phase;
}

FollowLandPlanner::FollowLandPlanner(const FollowConfig& follow,
                                     std::optional<LandingConfig> landing, double align_at)
    : mpc_(follow), landing_(std::move(landing)), align_at_(align_at) {}

PlanOutput FollowLandPlanner::tick(double t, double dt, const UavState& uav,
                                   const VesselBelief& belief,
                                   const PredictionHorizon& horizon) {
  bool hold_descent = false;
  if (landing_.has_value()) {
    const LandingPhase previous = phase_;
    phase_ = landing_fsm(phase_, belief, horizon, uav, *landing_, t >= align_at_, dt,
                         dwell_accum_);
    if (phase_ == LandingPhase::Aborted && previous != LandingPhase::Aborted) {
      ++aborts_;
    }
    if (phase_ == LandingPhase::Descend) {
      if (previous != LandingPhase::Descend) {
        rel_height_ = uav.position.z() - belief_world_pose(belief).position.z();
      }
      hold_descent =
          predicted_heave_rate(horizon, t, landing_->heave_window) > landing_->max_heave_rate;
      // Touch down on a flat or falling deck only.
      if (!hold_descent && rel_height_ < landing_->final_approach_height) {
        hold_descent = predicted_updraft(horizon, t, landing_->heave_window) >
                       landing_->max_contact_updraft;
      }
      if (!hold_descent) {
        rel_height_ = std::max(rel_height_ - landing_->descent_rate * dt, 0.0);
      }
    }
  }
  const auto reference =
      reference_from_horizon(horizon, mpc_.config(), t, phase_,
                             landing_.has_value() ? &*landing_ : nullptr, rel_height_,
                             hold_descent);
  return mpc_.solve(uav, reference, t, phase_);
}

}  // namespace usvwave
