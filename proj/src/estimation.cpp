#include "usvwave/estimation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "usvwave/errors.hpp"

namespace usvwave {

namespace {

// 99.9% chi-square quantiles for 1..6 degrees of freedom.
constexpr double kChi2Gate999[6] = {10.827566, 13.815511, 16.266236,
                                    18.466827, 20.515006, 22.457744};

void wrap_pose_angles(Eigen::VectorXd& x) {
  if (x.size() < kBaseDim) {
    return;  // synthetic low-dimensional states carry no pose block
  }
  for (int i = 3; i < 6; ++i) {
    x[i] = wrap_angle(x[i]);
  }
}

void symmetrize(Eigen::MatrixXd& P) { P = 0.5 * (P + P.transpose()).eval(); }

}  // namespace

const char* sensor_name(SensorKind kind) {
  switch (kind) {
    case SensorKind::Gps:
      return "gps";
    case SensorKind::Imu:
      return "imu";
    case SensorKind::Uvdar:
      return "uvdar";
    case SensorKind::AprilTag:
      return "apriltag";
  }
  return "unknown";
}

double chi_square_gate_999(int dim) {
  if (dim < 1 || dim > 6) {
    throw std::invalid_argument("chi_square_gate_999: dim must be in 1..6");
  }
  return kChi2Gate999[dim - 1];
}

ProcessNoise make_process_noise(int n_components, double q_pos, double q_vel, double q_wave) {
  const int n = state_dim(n_components);
  Eigen::VectorXd d = Eigen::VectorXd::Zero(n);
  d.segment<6>(0).setConstant(q_pos);
  d.segment<6>(6).setConstant(q_vel);
  for (int ch = 0; ch < 6; ++ch) {
    for (int j = 0; j < n_components; ++j) {
      d[wave_state_index(ch, j, 1, n_components)] = q_wave;
    }
  }
  return ProcessNoise{d.asDiagonal()};
}

SensorModel sensor_model_for(SensorKind kind, const SensorConfig& config, int n) {
  std::vector<int> observed;
  switch (kind) {
    case SensorKind::Gps:
      observed = {0, 1, 2};
      break;
    case SensorKind::Imu:
      observed = {3, 4, 5, 9, 10, 11};
      break;
    case SensorKind::Uvdar:
    case SensorKind::AprilTag:
      observed = {0, 1, 2, 3, 4, 5};
      break;
    default:
      throw std::invalid_argument("sensor_model_for: unknown sensor kind");
  }
  const int m = static_cast<int>(observed.size());
  if (config.noise_std.size() != m) {
    throw std::invalid_argument(std::string("sensor_model_for: ") + sensor_name(kind) +
                                " needs " + std::to_string(m) + " noise entries");
  }

  SensorModel sm;
  sm.C = Eigen::MatrixXd::Zero(m, n);
  sm.angle_rows.resize(m);
  for (int r = 0; r < m; ++r) {
    sm.C(r, observed[r]) = 1.0;
    sm.angle_rows[r] = observed[r] >= 3 && observed[r] <= 5;
  }
  sm.base_noise = config.noise_std.array().square().matrix().asDiagonal();
  sm.gate_threshold =
      config.gate_threshold == 0.0 ? chi_square_gate_999(m) : config.gate_threshold;
  return sm;
}

VesselBelief predict_step(const VesselBelief& belief, const DiscreteModel& model,
                          const ProcessNoise& q) {
  VesselBelief out;
  out.x = model.A_d * belief.x;
  wrap_pose_angles(out.x);
  out.P = model.A_d * belief.P * model.A_d.transpose() + q.Q;
  symmetrize(out.P);
  out.stamp = belief.stamp + model.dt;
  return out;
}

std::pair<VesselBelief, bool> correct_step(const VesselBelief& belief, const Measurement& meas,
                                           const SensorModel& sm) {
  const int m = static_cast<int>(sm.C.rows());
  Eigen::VectorXd innovation = meas.value - sm.C * belief.x;
  for (int r = 0; r < m; ++r) {
    if (sm.angle_rows[r]) {
      innovation[r] = wrap_angle(innovation[r]);
    }
  }

  const Eigen::MatrixXd R = meas.noise.size() > 0 ? meas.noise : sm.base_noise;
  Eigen::MatrixXd S = sm.C * belief.P * sm.C.transpose() + R;
  symmetrize(S);
  Eigen::LLT<Eigen::MatrixXd> llt(S);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("correct_step: innovation covariance not positive definite",
                         sensor_name(meas.kind), meas.stamp);
  }

  if (sm.gate_threshold > 0.0) {
    const double d2 = innovation.dot(llt.solve(innovation));
    if (d2 > sm.gate_threshold) {
      return {belief, false};
    }
  }

  const Eigen::MatrixXd gain = llt.solve(sm.C * belief.P).transpose();  // P C' S^-1
  VesselBelief out;
  out.x = belief.x + gain * innovation;
  wrap_pose_angles(out.x);
  out.P = belief.P - gain * sm.C * belief.P;
  symmetrize(out.P);
  out.stamp = belief.stamp;
  return {out, true};
}

Measurement transform_measurement(const Measurement& meas, double current_yaw) {
  Measurement out = meas;
  const Eigen::Matrix3d to_parallel =
      Eigen::AngleAxisd(-current_yaw, Eigen::Vector3d::UnitZ()).toRotationMatrix();

  switch (meas.kind) {
    case SensorKind::Imu:
      break;  // orientation and body rates already match the state frame
    case SensorKind::Gps: {
      out.value = to_parallel * meas.value;
      if (out.noise.size() > 0) {
        out.noise = to_parallel * meas.noise * to_parallel.transpose();
      }
      break;
    }
    case SensorKind::Uvdar:
    case SensorKind::AprilTag: {
      if (!meas.observer_pose.has_value()) {
        throw std::invalid_argument("transform_measurement: relative measurement without "
                                    "observer pose");
      }
      const EulerPose& obs = *meas.observer_pose;
      const Eigen::Matrix3d R_obs = rotation_from_euler(obs.orientation);
      const Eigen::Vector3d p_world = obs.position + R_obs * meas.value.head<3>();
      const Eigen::Matrix3d R_target = R_obs * rotation_from_euler(meas.value.tail<3>());

      out.value.resize(6);
      out.value.head<3>() = to_parallel * p_world;
      out.value.tail<3>() = euler_from_rotation(R_target);
      if (out.noise.size() > 0) {
        const Eigen::Matrix3d rot = to_parallel * R_obs;
        out.noise.topLeftCorner<3, 3>() =
            rot * meas.noise.topLeftCorner<3, 3>() * rot.transpose();
      }
      break;
    }
  }
  return out;
}

MeasurementPipeline::MeasurementPipeline(VesselBelief initial, DiscreteModel model, ProcessNoise q,
                                         std::map<SensorKind, SensorModel> sensors)
    : belief_(std::move(initial)),
      model_(std::move(model)),
      q_(std::move(q)),
      sensors_(std::move(sensors)),
      base_stamp_(belief_.stamp) {
  for (const auto& [kind, sm] : sensors_) {
    counters_[kind] = SensorCounters{};
  }
}

const VesselBelief& MeasurementPipeline::step() {
  belief_ = predict_step(belief_, model_, q_);
  // Pin the stamp to the exact cadence grid; accumulating += dt drifts by
  // ULPs and can push a measurement stamped "now" into the next period.
  ++steps_;
  belief_.stamp = base_stamp_ + static_cast<double>(steps_) * model_.dt;
  const double now = belief_.stamp;
  const double stale_before = now - model_.dt;
  const double eps = 1e-9 * model_.dt;

  std::vector<Measurement> due;
  std::vector<Measurement> pending;
  for (const auto& meas : queue_) {
    if (meas.stamp > now + eps) {
      pending.push_back(meas);
    } else if (meas.stamp <= stale_before + eps) {
      counters_[meas.kind].dropped_stale++;
    } else {
      due.push_back(meas);
    }
  }
  queue_ = std::move(pending);

  std::stable_sort(due.begin(), due.end(), [](const Measurement& a, const Measurement& b) {
    if (a.stamp != b.stamp) {
      return a.stamp < b.stamp;
    }
    return static_cast<int>(a.kind) < static_cast<int>(b.kind);
  });

  for (const auto& meas : due) {
    auto it = sensors_.find(meas.kind);
    if (it == sensors_.end()) {
      continue;  // sensor disabled in this variant
    }
    const Measurement local = transform_measurement(meas, belief_.x[5]);
    auto [posterior, accepted] = correct_step(belief_, local, it->second);
    if (accepted) {
      belief_ = std::move(posterior);
      counters_[meas.kind].accepted++;
    } else {
      counters_[meas.kind].gated++;
    }
  }
  return belief_;
}

VesselBelief process_in_order(const VesselBelief& initial, const DiscreteModel& model,
                              const ProcessNoise& q,
                              const std::map<SensorKind, SensorModel>& sensors,
                              const std::vector<Measurement>& measurements, int n_steps,
                              std::map<SensorKind, SensorCounters>* counters_out) {
  MeasurementPipeline pipeline(initial, model, q, sensors);
  for (const auto& meas : measurements) {
    pipeline.enqueue(meas);
  }
  for (int k = 0; k < n_steps; ++k) {
    pipeline.step();
  }
  if (counters_out != nullptr) {
    *counters_out = pipeline.counters();
  }
  return pipeline.belief();
}

}  // namespace usvwave
