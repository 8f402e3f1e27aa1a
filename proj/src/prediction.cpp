#include "usvwave/prediction.hpp"

#include <cmath>
#include <stdexcept>

namespace usvwave {

PredictionHorizon predict_horizon(const VesselBelief& belief, const DiscreteModel& model,
                                  const ProcessNoise& q, int n_p, bool with_covariance) {
  if (n_p < 1) {
    throw std::invalid_argument("predict_horizon: n_p must be >= 1");
  }
  PredictionHorizon horizon;
  horizon.start_stamp = belief.stamp;
  horizon.dt = model.dt;
  horizon.means.reserve(n_p + 1);
  horizon.means.push_back(belief.x);
  if (with_covariance) {
    horizon.covariances.reserve(n_p + 1);
    horizon.covariances.push_back(belief.P);
  }
  for (int k = 0; k < n_p; ++k) {
    Eigen::VectorXd x = model.A_d * horizon.means.back();
    if (x.size() >= kBaseDim) {
      for (int i = 3; i < 6; ++i) {
        x[i] = wrap_angle(x[i]);
      }
    }
    horizon.means.push_back(std::move(x));
    if (with_covariance) {
      Eigen::MatrixXd P =
          model.A_d * horizon.covariances.back() * model.A_d.transpose() + q.Q;
      P = 0.5 * (P + P.transpose()).eval();
      horizon.covariances.push_back(std::move(P));
    }
  }
  return horizon;
}

int entry_index_at(const PredictionHorizon& horizon, double t) {
  const double span = horizon.steps() * horizon.dt;
  const double offset = t - horizon.start_stamp;
  // Small slack absorbs float accumulation on tick grids.
  if (offset < -1e-9 || offset > span + 1e-9) {
    throw std::range_error("pose_at: t outside prediction horizon");
  }
  const int idx = static_cast<int>(std::lround(offset / horizon.dt));
  return std::clamp(idx, 0, horizon.steps());
}

EulerPose pose_at(const PredictionHorizon& horizon, double t) {
  const int idx = entry_index_at(horizon, t);
  const Eigen::VectorXd& x = horizon.means[idx];
  const EulerPose eta_L(x.head<3>(), x.segment<3>(3));
  return to_world(eta_L, x[5]);
}

}  // namespace usvwave
