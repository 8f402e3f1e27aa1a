#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "test_util.hpp"
#include "usvwave/planner.hpp"

using namespace usvwave;

namespace {

// Synthetic prediction horizon with a prescribed deck trajectory.
PredictionHorizon synthetic_horizon(double start, double dt, int steps,
                                    const std::function<void(double, Eigen::VectorXd&)>& fill) {
  PredictionHorizon h;
  h.start_stamp = start;
  h.dt = dt;
  for (int k = 0; k <= steps; ++k) {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(12);
    fill(start + k * dt, x);
    h.means.push_back(x);
  }
  return h;
}

PredictionHorizon static_deck_horizon(double start = 0.0, double dt = 0.02, int steps = 200) {
  return synthetic_horizon(start, dt, steps, [](double, Eigen::VectorXd&) {});
}

VesselBelief origin_belief(double stamp = 0.0) {
  VesselBelief b;
  b.x = Eigen::VectorXd::Zero(36);
  b.P = Eigen::MatrixXd::Identity(36, 36);
  b.stamp = stamp;
  return b;
}

bool plan_feasible(const PlanOutput& plan, const FollowConfig& cfg) {
  for (size_t k = 0; k + 1 < plan.setpoints.size(); ++k) {
    const Eigen::Vector3d dv = plan.setpoints[k + 1].velocity - plan.setpoints[k].velocity;
    for (int axis = 0; axis < 3; ++axis) {
      if (std::abs(dv[axis]) > cfg.a_max * cfg.dt + 1e-9) return false;
      if (std::abs(plan.setpoints[k + 1].velocity[axis]) > cfg.v_max + 1e-9) return false;
    }
  }
  return true;
}

}  // namespace

TEST_CASE("mpc_solve on a constant reference it already tracks") {
  FollowConfig cfg;
  std::vector<ReferencePoint> reference(cfg.horizon_steps);
  for (auto& r : reference) {
    r.position = Eigen::Vector3d(1.0, -2.0, 3.0);
    r.velocity.setZero();
  }
  UavState uav;
  uav.position = Eigen::Vector3d(1.0, -2.0, 3.0);
  const PlanOutput plan = mpc_solve(uav, reference, cfg);
  REQUIRE(plan.setpoints.size() == static_cast<size_t>(cfg.horizon_steps + 1));
  for (const auto& sp : plan.setpoints) {
    CHECK((sp.position - uav.position).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(sp.velocity.cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("closed-loop step response approaches monotonically without overshoot") {
  FollowConfig cfg;
  MpcPlanner planner(cfg);
  std::vector<ReferencePoint> reference(cfg.horizon_steps);
  for (auto& r : reference) {
    r.position = Eigen::Vector3d(1.0, 0.0, 0.0);
    r.velocity.setZero();
  }
  UavState uav;  // at the origin, 1 m behind the reference
  const double tick = 0.02;
  double worst_overshoot = 0.0;
  double previous_error = 1.0;
  bool monotone = true;
  for (int i = 0; i < 400; ++i) {
    const PlanOutput plan = planner.solve(uav, reference, i * tick, LandingPhase::Follow);
    uav.position = plan.setpoints[1].position;
    uav.velocity = plan.setpoints[1].velocity;
    const double error = 1.0 - uav.position.x();
    worst_overshoot = std::min(worst_overshoot, error);
    if (error > previous_error + 1e-4) {  // 0.01 % of the step
      monotone = false;
    }
    previous_error = error;
  }
  CHECK(monotone);
  CHECK(std::abs(worst_overshoot) <= 0.2);           // no overshoot beyond 20 %
  CHECK(std::abs(previous_error) < 0.02);            // settled on the target
}

TEST_CASE("zero velocity limit freezes the setpoints") {
  FollowConfig cfg;
  cfg.v_max = 0.0;
  std::vector<ReferencePoint> reference(cfg.horizon_steps);
  for (auto& r : reference) {
    r.position = Eigen::Vector3d(5.0, 5.0, 5.0);
  }
  UavState uav;
  uav.position = Eigen::Vector3d(1.0, 2.0, 3.0);
  const PlanOutput plan = mpc_solve(uav, reference, cfg);
  for (const auto& sp : plan.setpoints) {
    CHECK((sp.position - uav.position).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sp.velocity.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("mpc_solve rejects a non-finite state") {
  FollowConfig cfg;
  std::vector<ReferencePoint> reference(cfg.horizon_steps);
  UavState uav;
  uav.position[0] = std::nan("");
  CHECK_THROWS_AS(mpc_solve(uav, reference, cfg), std::invalid_argument);
}

TEST_CASE("plans are feasible and deterministic for random inputs") {
  FollowConfig cfg;
  cfg.v_max = 2.0;
  cfg.a_max = 3.0;
  MpcPlanner planner(cfg);
  std::mt19937_64 rng(31);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<ReferencePoint> reference(cfg.horizon_steps);
    for (auto& r : reference) {
      for (int i = 0; i < 3; ++i) {
        r.position[i] = 5.0 * gauss(rng);
        r.velocity[i] = 2.0 * gauss(rng);
      }
    }
    UavState uav;
    for (int i = 0; i < 3; ++i) {
      uav.position[i] = 2.0 * gauss(rng);
      uav.velocity[i] = std::clamp(gauss(rng), -2.0, 2.0);
    }
    const PlanOutput plan = planner.solve(uav, reference, 0.0, LandingPhase::Follow);
    CHECK(plan_feasible(plan, cfg));

    const PlanOutput again = planner.solve(uav, reference, 0.0, LandingPhase::Follow);
    REQUIRE(again.setpoints.size() == plan.setpoints.size());
    for (size_t k = 0; k < plan.setpoints.size(); ++k) {
      CHECK((again.setpoints[k].position - plan.setpoints[k].position).cwiseAbs().maxCoeff() ==
            0.0);
      CHECK((again.setpoints[k].velocity - plan.setpoints[k].velocity).cwiseAbs().maxCoeff() ==
            0.0);
    }
  }
}

TEST_CASE("reference_from_horizon") {
  FollowConfig cfg;
  cfg.hover_height = 2.0;

  SUBCASE("static deck gives a constant hover reference") {
    const PredictionHorizon h = static_deck_horizon();
    const auto ref = reference_from_horizon(h, cfg, 0.0, LandingPhase::Follow);
    REQUIRE(static_cast<int>(ref.size()) == cfg.horizon_steps);
    for (const auto& r : ref) {
      CHECK((r.position - Eigen::Vector3d(0, 0, 2.0)).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(r.velocity.cwiseAbs().maxCoeff() < 1e-12);
    }
  }
  SUBCASE("heaving deck keeps the reference phase-aligned") {
    const PredictionHorizon h =
        synthetic_horizon(0.0, 0.02, 200, [](double t, Eigen::VectorXd& x) {
          x[2] = 0.2 * std::sin(t);       // deck z
          x[8] = 0.2 * std::cos(t);       // deck heave rate
        });
    const auto ref = reference_from_horizon(h, cfg, 0.0, LandingPhase::Follow);
    for (int k = 0; k < cfg.horizon_steps; ++k) {
      const double t = (k + 1) * cfg.dt;
      CHECK(ref[k].position.z() == doctest::Approx(2.0 + 0.2 * std::sin(t)).epsilon(1e-9));
      CHECK(ref[k].velocity.z() == doctest::Approx(0.2 * std::cos(t)).epsilon(1e-9));
    }
  }
  SUBCASE("descent ramps to the deck at the configured rate") {
    FollowConfig wide;
    wide.hover_height = 2.0;
    wide.horizon_steps = 50;
    wide.dt = 0.1;  // 5 s window
    LandingConfig landing;
    landing.descent_rate = 0.5;
    const PredictionHorizon h = static_deck_horizon(0.0, 0.1, 60);
    const auto ref = reference_from_horizon(h, wide, 0.0, LandingPhase::Descend, &landing,
                                            /*rel_height=*/2.0);
    for (int k = 0; k < wide.horizon_steps; ++k) {
      const double t = (k + 1) * wide.dt;
      const double expected = std::max(2.0 - 0.5 * t, 0.0);
      CHECK(ref[k].position.z() == doctest::Approx(expected).epsilon(1e-9));
    }
    CHECK(ref[39].position.z() == doctest::Approx(0.0));  // reaches the deck at 4 s
    CHECK(ref[10].velocity.z() == doctest::Approx(-0.5));
    CHECK(ref[45].velocity.z() == doctest::Approx(0.0));  // ramp finished
  }
  SUBCASE("a horizon shorter than the window is rejected") {
    const PredictionHorizon h = static_deck_horizon(0.0, 0.02, 10);
    CHECK_THROWS_AS(reference_from_horizon(h, cfg, 0.0, LandingPhase::Follow), std::range_error);
  }
}

TEST_CASE("landing_fsm transitions") {
  LandingConfig cfg;
  const PredictionHorizon calm = static_deck_horizon();
  const VesselBelief belief = origin_belief();
  UavState uav;
  uav.position = Eigen::Vector3d(0.0, 0.0, 2.5);
  double dwell = 0.0;
  const double dt = 0.02;

  SUBCASE("align waits exactly the dwell time on a calm deck") {
    LandingPhase phase = LandingPhase::Follow;
    phase = landing_fsm(phase, belief, calm, uav, cfg, true, dt, dwell);
    CHECK(phase == LandingPhase::Align);
    int ticks = 0;
    while (phase == LandingPhase::Align && ticks < 1000) {
      phase = landing_fsm(phase, belief, calm, uav, cfg, true, dt, dwell);
      ++ticks;
    }
    CHECK(phase == LandingPhase::Descend);
    CHECK(ticks == 50);  // 1.0 s dwell at 50 Hz
  }
  SUBCASE("tilt spike mid-descent aborts, then falls back to follow") {
    VesselBelief tilted = belief;
    tilted.x[3] = 0.3;  // roll above the abort threshold
    LandingPhase phase =
        landing_fsm(LandingPhase::Descend, tilted, calm, uav, cfg, true, dt, dwell);
    CHECK(phase == LandingPhase::Aborted);
    phase = landing_fsm(phase, tilted, calm, uav, cfg, true, dt, dwell);
    CHECK(phase == LandingPhase::Follow);
  }
  SUBCASE("estimated contact height triggers touchdown") {
    UavState low;
    low.position = Eigen::Vector3d(0.0, 0.0, cfg.touchdown_height * 0.5);
    const LandingPhase phase =
        landing_fsm(LandingPhase::Descend, belief, calm, low, cfg, true, dt, dwell);
    CHECK(phase == LandingPhase::Touchdown);
  }
  SUBCASE("horizontal error blocks the align predicate") {
    UavState off;
    off.position = Eigen::Vector3d(1.0, 0.0, 2.5);  // 1 m off, above the 0.3 m bound
    double d = 0.0;
    for (int i = 0; i < 200; ++i) {
      CHECK(landing_fsm(LandingPhase::Align, belief, calm, off, cfg, true, dt, d) ==
            LandingPhase::Align);
    }
    CHECK(d == 0.0);
  }
  SUBCASE("nominal pass walks follow-align-descend-touchdown in order") {
    LandingPhase phase = LandingPhase::Follow;
    UavState tracker = uav;
    std::vector<LandingPhase> seen = {phase};
    double d = 0.0;
    for (int i = 0; i < 4000 && phase != LandingPhase::Touchdown; ++i) {
      phase = landing_fsm(phase, belief, calm, tracker, cfg, true, dt, d);
      if (phase != seen.back()) {
        seen.push_back(phase);
      }
      if (phase == LandingPhase::Descend) {
        tracker.position.z() -= cfg.descent_rate * dt;
      }
    }
    REQUIRE(seen.size() == 4);
    CHECK(seen[0] == LandingPhase::Follow);
    CHECK(seen[1] == LandingPhase::Align);
    CHECK(seen[2] == LandingPhase::Descend);
    CHECK(seen[3] == LandingPhase::Touchdown);
  }
}

TEST_CASE("heave spikes pause the descent") {
  FollowConfig follow;
  follow.hover_height = 2.5;
  LandingConfig landing;
  FollowLandPlanner planner(follow, landing, /*align_at=*/0.0);

  const PredictionHorizon calm = static_deck_horizon(0.0, 0.02, 300);
  VesselBelief belief = origin_belief();
  UavState uav;
  uav.position = Eigen::Vector3d(0.0, 0.0, 2.5);

  // Drive through Align into Descend on a calm deck.
  double t = 0.0;
  const double dt = 0.02;
  while (planner.phase() != LandingPhase::Descend && t < 5.0) {
    const PlanOutput plan = planner.tick(t, dt, uav, belief, calm);
    uav.position = plan.setpoints[1].position;
    uav.velocity = plan.setpoints[1].velocity;
    t += dt;
  }
  REQUIRE(planner.phase() == LandingPhase::Descend);
  const double offset_before = planner.descent_offset();

  // Deck now predicted to heave harder than the allowed contact rate.
  const PredictionHorizon rough =
      synthetic_horizon(t, 0.02, 300, [](double, Eigen::VectorXd& x) { x[8] = 0.9; });
  for (int i = 0; i < 10; ++i) {
    planner.tick(t, dt, uav, belief, rough);
    t += dt;
  }
  CHECK(planner.phase() == LandingPhase::Descend);
  CHECK(planner.descent_offset() == doctest::Approx(offset_before));  // ramp held

  // Calm again: the ramp resumes.
  const PredictionHorizon calm2 = static_deck_horizon(t, 0.02, 300);
  planner.tick(t, dt, uav, belief, calm2);
  CHECK(planner.descent_offset() < offset_before);
}
