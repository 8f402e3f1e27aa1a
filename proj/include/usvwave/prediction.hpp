#ifndef USVWAVE_PREDICTION_HPP
#define USVWAVE_PREDICTION_HPP

#include <vector>

#include "usvwave/estimation.hpp"
#include "usvwave/model.hpp"

namespace usvwave {

/// N_p-step open-loop rollout of a belief through the discrete model.
/// means[0] equals the input belief state exactly; covariances are filled
/// only when requested (the scenario loop skips them, metrics and tests
/// use the full form).
struct PredictionHorizon {
  double start_stamp = 0.0;
  double dt = 0.0;
  std::vector<Eigen::VectorXd> means;
  std::vector<Eigen::MatrixXd> covariances;  // empty when not requested

  int steps() const { return static_cast<int>(means.size()) - 1; }
  double end_stamp() const { return start_stamp + steps() * dt; }
  bool has_covariance() const { return !covariances.empty(); }
};

/// Iterate the LKF prediction step n_p >= 1 times from the given belief:
/// entry k+1 = (A_d x_k, A_d P_k A_d' + Q).
PredictionHorizon predict_horizon(const VesselBelief& belief, const DiscreteModel& model,
                                  const ProcessNoise& q, int n_p, bool with_covariance = true);

/// World-frame pose at time t, sampled from the nearest horizon entry
/// (no interpolation). t must lie within the horizon span.
EulerPose pose_at(const PredictionHorizon& horizon, double t);

/// Index of the horizon entry nearest to time t.
int entry_index_at(const PredictionHorizon& horizon, double t);

}  // namespace usvwave

#endif  // USVWAVE_PREDICTION_HPP
