#ifndef USVWAVE_MODEL_HPP
#define USVWAVE_MODEL_HPP

#include <utility>
#include <vector>

#include "usvwave/types.hpp"

namespace usvwave {

/// One wave component: a damped 2-state harmonic oscillator with natural
/// frequency omega0 (rad/s) and dimensionless damping lambda.
struct WaveComponentParams {
  double omega0 = 1.0;
  double lambda = 0.0;
};

/// Ordered list of wave components shared across all six body-velocity
/// channels. An empty bank yields the wave-free model.
struct WaveBank {
  std::vector<WaveComponentParams> components;

  int size() const { return static_cast<int>(components.size()); }
};

/// Rigid-body matrices of the 6-DOF vessel: inertia M_I, added mass M_A,
/// linear damping D, restoring forces G. M = M_I + M_A must be invertible.
struct RigidBodyParams {
  Matrix6d inertia{Matrix6d::Identity()};
  Matrix6d added_mass{Matrix6d::Zero()};
  Matrix6d damping{Matrix6d::Zero()};
  Matrix6d restoring{Matrix6d::Zero()};

  /// Diagonal parameterization: per-axis effective mass (inertia + added
  /// mass pooled), damping, and restoring coefficients.
  static RigidBodyParams diagonal(const Vector6d& mass, const Vector6d& damping,
                                  const Vector6d& restoring);

  Matrix6d total_mass() const { return inertia + added_mass; }
};

/// Continuous-time wave-augmented vessel model dx/dt = A_usv x with
/// x = (eta_L, nu, wave states), dim 12(1+N_c).
struct ContinuousModel {
  Eigen::MatrixXd A;
  int n_components = 0;
  RigidBodyParams rigid;
  WaveBank bank;

  int dim() const { return static_cast<int>(A.rows()); }
};

/// Zero-order-hold discretization A_d = exp(A dt).
struct DiscreteModel {
  Eigen::MatrixXd A_d;
  double dt = 0.0;

  int dim() const { return static_cast<int>(A_d.rows()); }
};

/// 6x6 yaw transformation J_psi: z-axis rotation on the position block,
/// identity on the orientation block.
Matrix6d yaw_rotation(double psi);

/// Transform a vessel-parallel pose to the world frame: eta = J_psi(psi) eta_L.
EulerPose to_world(const EulerPose& eta_L, double psi);

/// Inverse of to_world.
EulerPose to_vessel_parallel(const EulerPose& eta, double psi);

/// Matrices of a single wave component:
/// A_w = [[0, 1], [-omega0^2, -2 lambda omega0]], C_w = [0, 1].
std::pair<Eigen::Matrix2d, Eigen::RowVector2d> wave_component_matrices(
    const WaveComponentParams& params);

/// Stack N_c >= 1 components into block-diagonal A_wave (2N_c x 2N_c) and the
/// concatenated output row C_wave (1 x 2N_c); the output sums the components.
std::pair<Eigen::MatrixXd, Eigen::RowVectorXd> assemble_wave_bank(const WaveBank& bank);

/// Replicate the wave bank over all six nu channels: A_wave_nu is the
/// 12N_c x 12N_c block diagonal of six A_wave copies, C_wave_nu the 6 x 12N_c
/// matrix with C_wave on its block-diagonal slots.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_wave_nu(const WaveBank& bank);

/// Assemble the full continuous model
///   A_usv = [[0, I, 0], [-M^-1 G, -M^-1 D, C_wave_nu], [0, 0, A_wave_nu]].
/// N_c = 0 yields the 12x12 wave-free model.
ContinuousModel assemble_usv_model(const RigidBodyParams& rigid, const WaveBank& bank);

/// Matrix exponential by scaling-and-squaring with a truncated Taylor series.
/// Deterministic; accurate to ~1e-13 relative for the matrices used here.
Eigen::MatrixXd expm(const Eigen::MatrixXd& A);

/// Discretize the continuous model with step dt: A_d = exp(A dt).
DiscreteModel discretize(const ContinuousModel& model, double dt);

}  // namespace usvwave

#endif  // USVWAVE_MODEL_HPP
