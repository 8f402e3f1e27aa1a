#include "usvwave/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

#include "usvwave/prediction.hpp"

namespace usvwave {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

Eigen::VectorXd initial_linear_state(const ScenarioConfig& cfg, int n, std::mt19937_64& rng) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x.head<6>() = cfg.truth.initial_pose;
  x.segment<6>(6) = cfg.truth.initial_velocity;
  const int nc = cfg.wave_bank.size();
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  for (int ch = 0; ch < 6; ++ch) {
    for (int j = 0; j < nc; ++j) {
      // Frequencies come from the model bank in linear mode; the truth
      // spectrum only supplies output amplitudes.
      const double amplitude = j < static_cast<int>(cfg.truth.wave_spectrum[ch].size())
                                   ? cfg.truth.wave_spectrum[ch][j].amplitude
                                   : 0.0;
      const double omega0 = cfg.wave_bank.components[j].omega0;
      const double ph = phase(rng);
      x[wave_state_index(ch, j, 0, nc)] = amplitude / omega0 * std::cos(ph);
      x[wave_state_index(ch, j, 1, nc)] = -amplitude * std::sin(ph);
    }
  }
  return x;
}

void mirror_linear_state(const Eigen::VectorXd& x, TruthState& truth) {
  const EulerPose eta_L(x.head<3>(), x.segment<3>(3));
  const EulerPose world = to_world(eta_L, x[5]);
  truth.pose = world;
  truth.velocity.linear = x.segment<3>(6);
  truth.velocity.angular = x.segment<3>(9);
}

}  // namespace

EstimatorSetup build_estimator(const ScenarioConfig& cfg) {
  EstimatorSetup setup;
  const ContinuousModel cmodel = assemble_usv_model(cfg.rigid_params(), cfg.wave_bank);
  setup.model = discretize(cmodel, cfg.model_dt);
  const int n = cmodel.dim();
  const int nc = cfg.wave_bank.size();
  setup.q = make_process_noise(nc, cfg.estimator.q_position, cfg.estimator.q_velocity,
                               cfg.estimator.q_wave);

  setup.initial.x = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd d(n);
  d.segment<3>(0).setConstant(cfg.estimator.init_std_position * cfg.estimator.init_std_position);
  d.segment<3>(3).setConstant(cfg.estimator.init_std_orientation *
                              cfg.estimator.init_std_orientation);
  d.segment<6>(6).setConstant(cfg.estimator.init_std_velocity * cfg.estimator.init_std_velocity);
  if (n > 12) {
    d.tail(n - 12).setConstant(cfg.estimator.init_std_wave * cfg.estimator.init_std_wave);
  }
  setup.initial.P = d.asDiagonal();
  setup.initial.stamp = 0.0;

  for (int i = 0; i < 4; ++i) {
    const SensorSpec& spec = cfg.sensors[i];
    if (!spec.enabled) {
      continue;
    }
    SensorConfig sc;
    sc.noise_std = spec.noise_std.cwiseMax(1e-9);
    const SensorKind kind = static_cast<SensorKind>(i);
    if (kind == SensorKind::Uvdar || kind == SensorKind::AprilTag) {
      for (int r = 0; r < 3; ++r) {
        sc.noise_std[r] = std::hypot(sc.noise_std[r], cfg.truth.observer_noise.position_std);
        sc.noise_std[3 + r] =
            std::hypot(sc.noise_std[3 + r], cfg.truth.observer_noise.orientation_std);
      }
    }
    sc.gate_threshold = spec.gate_threshold;
    setup.sensors.emplace(kind, sensor_model_for(kind, sc, n));
  }
  return setup;
}

RunLog run_scenario(const ScenarioConfig& cfg_in) {
  ScenarioConfig cfg = cfg_in;
  apply_variant(cfg);
  validate_scenario_config(cfg);

  EstimatorSetup est = build_estimator(cfg);
  const int n = est.model.dim();

  auto truth_rng = substream(cfg.seed, 0);
  TruthState truth = init_truth(cfg.truth, truth_rng);
  UavState uav;
  uav.position = cfg.uav_initial;
  truth.uav = uav;

  Eigen::VectorXd linear_state;
  Eigen::MatrixXd linear_step;
  if (cfg.truth.linear) {
    const ContinuousModel cmodel = assemble_usv_model(cfg.rigid_params(), cfg.wave_bank);
    linear_step = expm(cmodel.A * cfg.truth.dt);
    linear_state = initial_linear_state(cfg, n, truth_rng);
    mirror_linear_state(linear_state, truth);
  }

  if (cfg.estimator.init_from_truth) {
    if (cfg.truth.linear) {
      est.initial.x = linear_state;
    } else {
      const EulerPose eta_L =
          to_vessel_parallel(truth.pose, truth.pose.orientation[2]);
      est.initial.x.head<6>() = eta_L.to_vector();
      est.initial.x.segment<6>(6) = truth.velocity.to_vector();
    }
  }

  MeasurementPipeline pipeline(est.initial, est.model, est.q, est.sensors);
  SensorScheduler scheduler(cfg.sensors, cfg.truth.observer_noise, cfg.seed);

  const bool planning = cfg.task != Task::EstimateOnly;
  FollowLandPlanner planner(cfg.planner.follow,
                            cfg.task == Task::Land
                                ? std::optional<LandingConfig>(cfg.planner.landing)
                                : std::nullopt,
                            cfg.planner.align_at);

  const double dt = cfg.truth.dt;
  const long n_ticks = std::lround(cfg.duration / dt);
  const long est_every = std::lround(cfg.model_dt / dt);
  const long pred_every = std::lround(1.0 / cfg.predictor.rate_hz / dt);
  const long plan_every = std::lround(1.0 / cfg.planner.rate_hz / dt);
  const double plan_period = 1.0 / cfg.planner.rate_hz;

  RunLog log;
  log.seed = cfg.seed;
  log.dt = dt;
  log.rows.reserve(n_ticks);

  PredictionHorizon horizon;
  bool have_horizon = false;
  std::deque<std::pair<double, Measurement>> in_flight;  // (delivery time, measurement)
  Setpoint current_sp;
  bool sp_valid = false;
  bool touched_down = false;
  double touchdown_speed = kNan;
  double touchdown_time = 0.0;

  for (long i = 1; i <= n_ticks; ++i) {
    const double t_prev = (i - 1) * dt;
    const double t = i * dt;

    if (cfg.truth.linear) {
      linear_state = linear_step * linear_state;
      for (int a = 3; a < 6; ++a) {
        linear_state[a] = wrap_angle(linear_state[a]);
      }
      mirror_linear_state(linear_state, truth);
      truth.clock = t;
    } else {
      truth = step_truth(truth, cfg.truth, dt);
      truth.clock = t;  // keep sensor stamps on the exact tick grid
    }
    truth.uav = uav;

    for (Measurement& meas : scheduler.collect(truth, t_prev, t)) {
      const double delay = cfg.sensors[static_cast<int>(meas.kind)].delay;
      if (delay > 0.0) {
        in_flight.emplace_back(meas.stamp + delay, std::move(meas));
      } else {
        pipeline.enqueue(meas);
      }
    }
    while (!in_flight.empty() && in_flight.front().first <= t + 1e-12) {
      pipeline.enqueue(in_flight.front().second);
      in_flight.pop_front();
    }

    if (i % est_every == 0) {
      pipeline.step();
    }

    bool fresh_horizon = false;
    if (i % pred_every == 0) {
      horizon = predict_horizon(pipeline.belief(), est.model, est.q, cfg.predictor.steps,
                                /*with_covariance=*/false);
      have_horizon = true;
      fresh_horizon = true;
    }

    double contact_speed_now = kNan;
    if (planning && have_horizon && !touched_down && i % plan_every == 0) {
      const PlanOutput plan = planner.tick(t, plan_period, uav, pipeline.belief(), horizon);
      if (plan.phase == LandingPhase::Touchdown) {
        touched_down = true;
        touchdown_time = t;
        touchdown_speed = uav.velocity.z() - deck_world_velocity(truth).z();
        contact_speed_now = touchdown_speed;
      } else {
        current_sp = plan.setpoints[1];
        sp_valid = true;
        uav.position = current_sp.position;
        uav.velocity = current_sp.velocity;
      }
    }
    if (touched_down) {
      // The landed UAV rides the deck.
      uav.position = truth.pose.position;
      uav.velocity = deck_world_velocity(truth);
      sp_valid = false;
    }

    RunLogRow row;
    row.t = t;
    row.truth_pose = truth.pose.to_vector();
    row.truth_vel = truth.velocity.to_vector();
    const EulerPose est_world = belief_world_pose(pipeline.belief());
    row.est_pose = est_world.to_vector();
    row.est_vel = pipeline.belief().x.segment<6>(6);
    if (fresh_horizon) {
      row.pred_target_t = horizon.end_stamp();
      const EulerPose pred = pose_at(horizon, horizon.end_stamp());
      row.pred_pose = pred.to_vector();
    } else {
      row.pred_target_t = kNan;
      row.pred_pose.setConstant(kNan);
    }
    row.uav_pos = uav.position;
    row.uav_vel = uav.velocity;
    if (sp_valid) {
      row.sp_pos = current_sp.position;
      row.sp_vel = current_sp.velocity;
    } else {
      row.sp_pos.setConstant(kNan);
      row.sp_vel.setConstant(kNan);
    }
    row.phase = planning ? static_cast<int>(planner.phase()) : -1;
    for (int s = 0; s < 4; ++s) {
      const auto it = pipeline.counters().find(static_cast<SensorKind>(s));
      if (it != pipeline.counters().end()) {
        row.accepted[s] = it->second.accepted;
        row.gated[s] = it->second.gated;
        row.dropped_stale[s] = it->second.dropped_stale;
      }
    }
    row.touchdown_rel_speed = contact_speed_now;
    log.rows.push_back(row);

    if (touched_down && t >= touchdown_time + 2.0) {
      break;
    }
  }
  return log;
}

}  // namespace usvwave
