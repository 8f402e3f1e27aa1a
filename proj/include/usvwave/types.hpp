#ifndef USVWAVE_TYPES_HPP
#define USVWAVE_TYPES_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace usvwave {

using Vector6d = Eigen::Matrix<double, 6, 1>;
using Matrix6d = Eigen::Matrix<double, 6, 6>;

// State vector layout: x_usv = (eta_L, nu, wave states).
// eta_L = (x, y, z, phi, theta, psi), nu = (u, v, w, p, q, r).
// Wave states are channel-major: channel c in (u, v, w, p, q, r), then
// component j, then the 2 oscillator states.
inline constexpr int kPoseDim = 6;
inline constexpr int kVelDim = 6;
inline constexpr int kBaseDim = kPoseDim + kVelDim;

inline constexpr int state_dim(int n_components) { return kBaseDim * (1 + n_components); }

inline int wave_state_index(int channel, int component, int osc_state, int n_components) {
  return kBaseDim + channel * 2 * n_components + 2 * component + osc_state;
}

/// Wrap an angle to (-pi, pi].
inline double wrap_angle(double a) {
  a = std::remainder(a, 2.0 * M_PI);
  if (a <= -M_PI) {
    a += 2.0 * M_PI;
  }
  return a;
}

/// Pose in the vessel-parallel (or world) frame: position in meters,
/// intrinsic roll/pitch/yaw in radians, angles wrapped to (-pi, pi].
struct EulerPose {
  Eigen::Vector3d position{Eigen::Vector3d::Zero()};
  Eigen::Vector3d orientation{Eigen::Vector3d::Zero()};  // (phi, theta, psi)

  EulerPose() = default;
  EulerPose(const Eigen::Vector3d& p, const Eigen::Vector3d& rpy) : position(p), orientation(rpy) {
    if (!position.allFinite() || !orientation.allFinite()) {
      throw std::invalid_argument("EulerPose: non-finite value");
    }
    for (int i = 0; i < 3; ++i) {
      orientation[i] = wrap_angle(orientation[i]);
    }
  }

  static EulerPose from_vector(const Vector6d& v) {
    return EulerPose(v.head<3>(), v.tail<3>());
  }

  Vector6d to_vector() const {
    Vector6d v;
    v << position, orientation;
    return v;
  }
};

/// Body-frame velocities: linear (u, v, w) in m/s, angular (p, q, r) in rad/s.
struct BodyVelocity {
  Eigen::Vector3d linear{Eigen::Vector3d::Zero()};
  Eigen::Vector3d angular{Eigen::Vector3d::Zero()};

  BodyVelocity() = default;
  BodyVelocity(const Eigen::Vector3d& lin, const Eigen::Vector3d& ang) : linear(lin), angular(ang) {
    if (!linear.allFinite() || !angular.allFinite()) {
      throw std::invalid_argument("BodyVelocity: non-finite value");
    }
  }

  Vector6d to_vector() const {
    Vector6d v;
    v << linear, angular;
    return v;
  }
};

/// Full 3D rotation matrix for intrinsic roll/pitch/yaw: R = Rz(psi) Ry(theta) Rx(phi).
inline Eigen::Matrix3d rotation_from_euler(const Eigen::Vector3d& rpy) {
  return (Eigen::AngleAxisd(rpy.z(), Eigen::Vector3d::UnitZ()) *
          Eigen::AngleAxisd(rpy.y(), Eigen::Vector3d::UnitY()) *
          Eigen::AngleAxisd(rpy.x(), Eigen::Vector3d::UnitX()))
      .toRotationMatrix();
}

/// Inverse of rotation_from_euler. Pitch is taken in (-pi/2, pi/2).
inline Eigen::Vector3d euler_from_rotation(const Eigen::Matrix3d& R) {
  const double theta = std::asin(std::clamp(-R(2, 0), -1.0, 1.0));
  const double phi = std::atan2(R(2, 1), R(2, 2));
  const double psi = std::atan2(R(1, 0), R(0, 0));
  return {phi, theta, psi};
}

/// Euler-rate matrix T(phi, theta) mapping body angular velocity to
/// roll/pitch/yaw rates. Singular at |theta| = pi/2.
inline Eigen::Matrix3d euler_rate_matrix(const Eigen::Vector3d& rpy) {
  const double sphi = std::sin(rpy.x()), cphi = std::cos(rpy.x());
  const double ttheta = std::tan(rpy.y()), ctheta = std::cos(rpy.y());
  Eigen::Matrix3d T;
  T << 1.0, sphi * ttheta, cphi * ttheta,  //
      0.0, cphi, -sphi,                    //
      0.0, sphi / ctheta, cphi / ctheta;
  return T;
}

}  // namespace usvwave

#endif  // USVWAVE_TYPES_HPP
