#ifndef USVWAVE_SCENARIO_HPP
#define USVWAVE_SCENARIO_HPP

#include <map>

#include "usvwave/config.hpp"
#include "usvwave/runlog.hpp"

namespace usvwave {

/// Estimator pieces derived from a scenario config.
struct EstimatorSetup {
  DiscreteModel model;
  ProcessNoise q;
  VesselBelief initial;
  std::map<SensorKind, SensorModel> sensors;
};

/// Build the discrete model, process noise, initial belief, and sensor models
/// for the (variant-applied) config. Vision sensor noise is widened by the
/// observer self-localization noise.
EstimatorSetup build_estimator(const ScenarioConfig& cfg);

/// Run the closed loop: truth stepped at truth.dt, sensors emitted on their
/// schedules, the estimator at the model cadence, the predictor and planner
/// at their configured rates, the point-mass UAV applying the plan. Fully
/// deterministic for a fixed config+seed. Landing runs end two seconds after
/// touchdown; other tasks run the full duration.
RunLog run_scenario(const ScenarioConfig& cfg);

}  // namespace usvwave

#endif  // USVWAVE_SCENARIO_HPP
