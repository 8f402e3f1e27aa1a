#include "usvwave/model.hpp"

#include <cmath>
#include <stdexcept>

#include "usvwave/errors.hpp"

namespace usvwave {

RigidBodyParams RigidBodyParams::diagonal(const Vector6d& mass, const Vector6d& damping,
                                          const Vector6d& restoring) {
  RigidBodyParams p;
  p.inertia = mass.asDiagonal();
  p.added_mass = Matrix6d::Zero();
  p.damping = damping.asDiagonal();
  p.restoring = restoring.asDiagonal();
  return p;
}

Matrix6d yaw_rotation(double psi) {
  if (!std::isfinite(psi)) {
    throw std::invalid_argument("yaw_rotation: psi must be finite");
  }
  const double c = std::cos(psi);
  const double s = std::sin(psi);
  Matrix6d J = Matrix6d::Identity();
  J(0, 0) = c;
  J(0, 1) = -s;
  J(1, 0) = s;
  J(1, 1) = c;
  return J;
}

EulerPose to_world(const EulerPose& eta_L, double psi) {
  const Vector6d eta = yaw_rotation(psi) * eta_L.to_vector();
  return EulerPose::from_vector(eta);
}

EulerPose to_vessel_parallel(const EulerPose& eta, double psi) {
  return to_world(eta, -psi);
}

std::pair<Eigen::Matrix2d, Eigen::RowVector2d> wave_component_matrices(
    const WaveComponentParams& params) {
  if (!(params.omega0 > 0.0)) {
    throw std::invalid_argument("wave_component_matrices: omega0 must be > 0");
  }
  if (params.lambda < 0.0) {
    throw std::invalid_argument("wave_component_matrices: lambda must be >= 0");
  }
  Eigen::Matrix2d A;
  A << 0.0, 1.0,  //
      -params.omega0 * params.omega0, -2.0 * params.lambda * params.omega0;
  Eigen::RowVector2d C(0.0, 1.0);
  return {A, C};
}

std::pair<Eigen::MatrixXd, Eigen::RowVectorXd> assemble_wave_bank(const WaveBank& bank) {
  const int nc = bank.size();
  if (nc < 1) {
    throw std::invalid_argument("assemble_wave_bank: empty bank");
  }
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(2 * nc, 2 * nc);
  Eigen::RowVectorXd C = Eigen::RowVectorXd::Zero(2 * nc);
  for (int j = 0; j < nc; ++j) {
    const auto [Aj, Cj] = wave_component_matrices(bank.components[j]);
    A.block<2, 2>(2 * j, 2 * j) = Aj;
    C.segment<2>(2 * j) = Cj;
  }
  return {A, C};
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> assemble_wave_nu(const WaveBank& bank) {
  const auto [A_wave, C_wave] = assemble_wave_bank(bank);
  const int w = static_cast<int>(A_wave.rows());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(6 * w, 6 * w);
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(6, 6 * w);
  for (int ch = 0; ch < 6; ++ch) {
    A.block(ch * w, ch * w, w, w) = A_wave;
    C.block(ch, ch * w, 1, w) = C_wave;
  }
  return {A, C};
}

ContinuousModel assemble_usv_model(const RigidBodyParams& rigid, const WaveBank& bank) {
  const Matrix6d M = rigid.total_mass();
  // Reject a numerically singular M up front so the error names the parameter.
  Eigen::FullPivLU<Matrix6d> lu(M);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    throw SingularMatrixError("M = M_I + M_A");
  }
  const Matrix6d Minv = lu.inverse();

  const int nc = bank.size();
  const int n = state_dim(nc);
  ContinuousModel model;
  model.A = Eigen::MatrixXd::Zero(n, n);
  model.n_components = nc;
  model.rigid = rigid;
  model.bank = bank;

  model.A.block<6, 6>(0, 6) = Matrix6d::Identity();
  model.A.block<6, 6>(6, 0) = -Minv * rigid.restoring;
  model.A.block<6, 6>(6, 6) = -Minv * rigid.damping;
  if (nc > 0) {
    const auto [A_wave_nu, C_wave_nu] = assemble_wave_nu(bank);
    model.A.block(6, 12, 6, 12 * nc) = C_wave_nu;
    model.A.block(12, 12, 12 * nc, 12 * nc) = A_wave_nu;
  }
  return model;
}

Eigen::MatrixXd expm(const Eigen::MatrixXd& A) {
  const int n = static_cast<int>(A.rows());
  // Scale A down until its infinity norm is <= 0.5, run the Taylor series to
  // convergence, then undo the scaling by repeated squaring.
  const double norm = A.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const Eigen::MatrixXd As = A / std::ldexp(1.0, squarings);

  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd sum = term;
  for (int k = 1; k <= 40; ++k) {
    term = (term * As) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18 * sum.cwiseAbs().maxCoeff()) {
      break;
    }
  }
  for (int i = 0; i < squarings; ++i) {
    sum = sum * sum;
  }
  return sum;
}

DiscreteModel discretize(const ContinuousModel& model, double dt) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("discretize: dt must be > 0");
  }
  return DiscreteModel{expm(model.A * dt), dt};
}

}  // namespace usvwave
