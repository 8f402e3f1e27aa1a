#include "usvwave/sim.hpp"

#include <cmath>
#include <stdexcept>

#include "usvwave/errors.hpp"

namespace usvwave {

namespace {

// Packed truth state for RK4: (pose 6, nu 6, wave states...).
Eigen::VectorXd pack(const TruthState& s) {
  int n_wave = 0;
  for (const auto& ch : s.wave_states) n_wave += 2 * static_cast<int>(ch.size());
  Eigen::VectorXd x(12 + n_wave);
  x.head<6>() = s.pose.to_vector();
  x.segment<6>(6) = s.velocity.to_vector();
  int k = 12;
  for (const auto& ch : s.wave_states) {
    for (const auto& osc : ch) {
      x.segment<2>(k) = osc;
      k += 2;
    }
  }
  return x;
}

void unpack(const Eigen::VectorXd& x, TruthState& s) {
  s.pose.position = x.head<3>();
  s.pose.orientation = x.segment<3>(3);
  s.velocity.linear = x.segment<3>(6);
  s.velocity.angular = x.segment<3>(9);
  int k = 12;
  for (auto& ch : s.wave_states) {
    for (auto& osc : ch) {
      osc = x.segment<2>(k);
      k += 2;
    }
  }
}

struct ForcingInput {
  double surge_thrust = 0.0;
  double yaw_rate = 0.0;
};

ForcingInput forcing_at(const TruthConfig& cfg, double t) {
  ForcingInput f;
  for (const auto& seg : cfg.forcing) {
    if (t >= seg.t) {
      f = ForcingInput{seg.surge_thrust, seg.yaw_rate};
    } else {
      break;
    }
  }
  return f;
}

Eigen::VectorXd truth_derivative(const Eigen::VectorXd& x, const TruthConfig& cfg,
                                 const Matrix6d& mass_inverse, double t) {
  const Eigen::Vector3d rpy = x.segment<3>(3);
  if (std::abs(std::cos(rpy.y())) < 1e-6) {
    throw GimbalSingularityError(rpy.y(), t);
  }
  const Eigen::Vector3d v = x.segment<3>(6);
  const Eigen::Vector3d omega = x.segment<3>(9);

  Eigen::VectorXd dx(x.size());
  // Full Euler-angle kinematics (not just the yaw rotation the linear model
  // assumes): p_dot = R(Theta) v, Theta_dot = T(Theta) omega.
  dx.head<3>() = rotation_from_euler(rpy) * v;
  dx.segment<3>(3) = euler_rate_matrix(rpy) * omega;

  // Restoring forces act on the instantaneous vessel-parallel displacement.
  Vector6d eta_vp;
  eta_vp.head<3>() =
      Eigen::AngleAxisd(-rpy.z(), Eigen::Vector3d::UnitZ()).toRotationMatrix() * x.head<3>();
  eta_vp.tail<3>() = rpy;

  const ForcingInput forcing = forcing_at(cfg, t);
  Vector6d tau = Vector6d::Zero();
  tau[0] = forcing.surge_thrust;
  tau[5] = cfg.yaw_gain * (forcing.yaw_rate - omega.z());

  Vector6d nu;
  nu << v, omega;
  Vector6d nu_dot =
      mass_inverse * (-cfg.rigid.damping * nu - cfg.rigid.restoring * eta_vp + tau);

  // Wave oscillators; their summed outputs act as channel accelerations.
  int k = 12;
  for (int ch = 0; ch < 6; ++ch) {
    double y = 0.0;
    for (const auto& comp : cfg.wave_spectrum[ch]) {
      const double x1 = x[k];
      const double x2 = x[k + 1];
      dx[k] = x2;
      dx[k + 1] = -comp.omega0 * comp.omega0 * x1 - 2.0 * comp.lambda * comp.omega0 * x2;
      y += x2;
      k += 2;
    }
    nu_dot[ch] += y;
  }
  dx.segment<6>(6) = nu_dot;
  return dx;
}

}  // namespace

std::mt19937_64 substream(unsigned long seed, unsigned long stream_id) {
  return std::mt19937_64(seed ^ (0x9E3779B97F4A7C15ULL * (stream_id + 1)));
}

TruthState init_truth(const TruthConfig& cfg, std::mt19937_64& rng) {
  TruthState s;
  s.pose = EulerPose::from_vector(cfg.initial_pose);
  s.velocity.linear = cfg.initial_velocity.head<3>();
  s.velocity.angular = cfg.initial_velocity.tail<3>();
  std::uniform_real_distribution<double> phase(0.0, 2.0 * M_PI);
  for (int ch = 0; ch < 6; ++ch) {
    for (const auto& comp : cfg.wave_spectrum[ch]) {
      const double ph = phase(rng);
      // x2(t) = -a sin(omega0 t + ph) for lambda = 0, so the channel output
      // starts with amplitude a.
      s.wave_states[ch].push_back(Eigen::Vector2d(comp.amplitude / comp.omega0 * std::cos(ph),
                                                  -comp.amplitude * std::sin(ph)));
    }
  }
  s.clock = 0.0;
  return s;
}

TruthState step_truth(const TruthState& state, const TruthConfig& cfg, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("step_truth: dt must be > 0");
  }
  const Matrix6d M = cfg.rigid.total_mass();
  Eigen::FullPivLU<Matrix6d> lu(M);
  if (!lu.isInvertible()) {
    throw SingularMatrixError("M = M_I + M_A");
  }
  const Matrix6d mass_inverse = lu.inverse();

  const Eigen::VectorXd x0 = pack(state);
  const double t = state.clock;
  const Eigen::VectorXd k1 = truth_derivative(x0, cfg, mass_inverse, t);
  const Eigen::VectorXd k2 =
      truth_derivative(x0 + 0.5 * dt * k1, cfg, mass_inverse, t + 0.5 * dt);
  const Eigen::VectorXd k3 =
      truth_derivative(x0 + 0.5 * dt * k2, cfg, mass_inverse, t + 0.5 * dt);
  const Eigen::VectorXd k4 = truth_derivative(x0 + dt * k3, cfg, mass_inverse, t + dt);
  const Eigen::VectorXd x1 = x0 + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

  TruthState next = state;
  unpack(x1, next);
  for (int i = 0; i < 3; ++i) {
    next.pose.orientation[i] = wrap_angle(next.pose.orientation[i]);
  }
  if (std::abs(next.pose.orientation[1]) >= M_PI_2) {
    throw GimbalSingularityError(next.pose.orientation[1], t + dt);
  }
  next.clock = state.clock + dt;
  return next;
}

double wave_output(const TruthState& state, int ch) {
  double y = 0.0;
  for (const auto& osc : state.wave_states[ch]) {
    y += osc[1];
  }
  return y;
}

Eigen::Vector3d deck_world_velocity(const TruthState& state) {
  return rotation_from_euler(state.pose.orientation) * state.velocity.linear;
}

Measurement make_sensor_measurement(SensorKind kind, const TruthState& truth,
                                    const SensorSpec& spec, const ObserverNoise& observer,
                                    std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  auto noisy = [&](double value, double std_dev) { return value + std_dev * gauss(rng); };

  Measurement meas;
  meas.kind = kind;
  meas.stamp = truth.clock;
  // Floor keeps the carried covariance SPD even for zero-noise test configs.
  meas.noise = spec.noise_std.array().max(1e-9).square().matrix().asDiagonal();

  switch (kind) {
    case SensorKind::Gps: {
      meas.value.resize(3);
      for (int i = 0; i < 3; ++i) {
        meas.value[i] = noisy(truth.pose.position[i], spec.noise_std[i]);
      }
      break;
    }
    case SensorKind::Imu: {
      meas.value.resize(6);
      for (int i = 0; i < 3; ++i) {
        meas.value[i] = wrap_angle(noisy(truth.pose.orientation[i], spec.noise_std[i]));
      }
      for (int i = 0; i < 3; ++i) {
        meas.value[3 + i] = noisy(truth.velocity.angular[i], spec.noise_std[3 + i]);
      }
      break;
    }
    case SensorKind::Uvdar:
    case SensorKind::AprilTag: {
      // True relative geometry in the UAV body frame (the UAV flies level in
      // this world, so its body frame is a translated world frame).
      const Eigen::Vector3d rel = truth.pose.position - truth.uav.position;
      const Eigen::Vector3d rel_rpy = truth.pose.orientation;
      meas.value.resize(6);
      for (int i = 0; i < 3; ++i) {
        meas.value[i] = noisy(rel[i], spec.noise_std[i]);
      }
      for (int i = 0; i < 3; ++i) {
        meas.value[3 + i] = wrap_angle(noisy(rel_rpy[i], spec.noise_std[3 + i]));
      }
      EulerPose obs;
      for (int i = 0; i < 3; ++i) {
        obs.position[i] = noisy(truth.uav.position[i], observer.position_std);
      }
      Eigen::Vector3d obs_rpy;
      for (int i = 0; i < 3; ++i) {
        obs_rpy[i] = wrap_angle(noisy(0.0, observer.orientation_std));
      }
      obs.orientation = obs_rpy;
      meas.observer_pose = obs;
      break;
    }
  }
  return meas;
}

SensorScheduler::SensorScheduler(const std::array<SensorSpec, 4>& specs,
                                 const ObserverNoise& observer, unsigned long seed)
    : specs_(specs), observer_(observer) {
  for (int i = 0; i < 4; ++i) {
    rngs_[i] = substream(seed, 1 + i);
    next_index_[i] = 1;  // first emission at 1/rate
  }
}

std::vector<Measurement> SensorScheduler::collect(const TruthState& truth, double t_prev,
                                                  double t_now) {
  std::vector<Measurement> out;
  for (int i = 0; i < 4; ++i) {
    const SensorSpec& spec = specs_[i];
    if (!spec.enabled) {
      continue;
    }
    const SensorKind kind = static_cast<SensorKind>(i);
    while (static_cast<double>(next_index_[i]) / spec.rate_hz <= t_now + 1e-12) {
      const double due = static_cast<double>(next_index_[i]) / spec.rate_hz;
      if (due <= t_prev + 1e-12) {
        ++next_index_[i];
        continue;
      }
      ++next_index_[i];
      if (spec.max_range > 0.0) {
        const double range = (truth.pose.position - truth.uav.position).norm();
        if (range > spec.max_range) {
          continue;
        }
      }
      if (spec.dropout > 0.0) {
        std::uniform_real_distribution<double> coin(0.0, 1.0);
        if (coin(rngs_[i]) < spec.dropout) {
          ++dropped_[i];
          continue;
        }
      }
      Measurement meas = make_sensor_measurement(kind, truth, spec, observer_, rngs_[i]);
      ++emitted_[i];
      out.push_back(std::move(meas));
    }
  }
  return out;
}

}  // namespace usvwave
