#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "test_util.hpp"
#include "usvwave/errors.hpp"
#include "usvwave/estimation.hpp"

using namespace usvwave;

namespace {

DiscreteModel identity_model(int n, double dt = 0.01) {
  return DiscreteModel{Eigen::MatrixXd::Identity(n, n), dt};
}

ProcessNoise zero_noise(int n) { return ProcessNoise{Eigen::MatrixXd::Zero(n, n)}; }

VesselBelief make_belief(const Eigen::VectorXd& x, const Eigen::MatrixXd& P, double stamp = 0.0) {
  return VesselBelief{x, P, stamp};
}

DiscreteModel default_model(double dt = 0.01) {
  Vector6d mass, damping, restoring;
  mass << 300, 350, 450, 60, 300, 320;
  damping << 60, 120, 250, 30, 90, 80;
  restoring << 0, 0, 800, 300, 600, 0;
  const RigidBodyParams rigid = RigidBodyParams::diagonal(mass, damping, restoring);
  return discretize(assemble_usv_model(rigid, WaveBank{{{0.9, 0.05}, {1.8, 0.05}}}), dt);
}

}  // namespace

TEST_CASE("predict_step") {
  SUBCASE("identity model with zero noise only advances the stamp") {
    const auto belief = make_belief(Eigen::Vector2d(1.0, -2.0), Eigen::Matrix2d::Identity(), 5.0);
    const auto out = predict_step(belief, identity_model(2, 0.1), zero_noise(2));
    CHECK((out.x - belief.x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.P - belief.P).cwiseAbs().maxCoeff() == 0.0);
    CHECK(out.stamp == doctest::Approx(5.1));
  }
  SUBCASE("identity model gains exactly Q") {
    const double q = 0.25;
    const auto belief = make_belief(Eigen::Vector2d(0, 0), 2.0 * Eigen::Matrix2d::Identity());
    const auto out = predict_step(belief, identity_model(2),
                                  ProcessNoise{q * Eigen::MatrixXd::Identity(2, 2)});
    CHECK((out.P - 2.25 * Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("hand-evaluated scalar case") {
    const auto belief = make_belief(Eigen::VectorXd::Constant(1, 1.0),
                                    Eigen::MatrixXd::Constant(1, 1, 1.0));
    const DiscreteModel model{Eigen::MatrixXd::Constant(1, 1, 0.5), 0.01};
    const auto out = predict_step(belief, model, ProcessNoise{Eigen::MatrixXd::Constant(1, 1, 0.1)});
    CHECK(out.x[0] == doctest::Approx(0.5));
    CHECK(out.P(0, 0) == doctest::Approx(0.35));
  }
}

TEST_CASE("correct_step") {
  SUBCASE("tiny measurement noise dominates the posterior") {
    const int n = 4;
    const auto belief =
        make_belief(Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n));
    SensorModel sm;
    sm.C = Eigen::MatrixXd::Identity(n, n);
    sm.base_noise = 1e-12 * Eigen::MatrixXd::Identity(n, n);
    sm.gate_threshold = -1.0;
    sm.angle_rows.assign(n, false);
    Measurement meas;
    meas.value = Eigen::VectorXd::LinSpaced(n, 1.0, 4.0);
    const auto [out, accepted] = correct_step(belief, meas, sm);
    CHECK(accepted);
    CHECK((out.x - meas.value).cwiseAbs().maxCoeff() < 1e-6);
  }
  SUBCASE("zero innovation leaves the mean, never grows the trace") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 20; ++trial) {
      const int n = 6;
      const Eigen::VectorXd x = test_util::random_vector(rng, n);
      const auto belief = make_belief(x, test_util::random_spd(rng, n));
      SensorModel sm;
      sm.C = Eigen::MatrixXd::Zero(2, n);
      sm.C(0, 0) = 1.0;
      sm.C(1, 3) = 1.0;
      sm.base_noise = test_util::random_spd(rng, 2, 0.5);
      sm.gate_threshold = -1.0;
      sm.angle_rows.assign(2, false);
      Measurement meas;
      meas.value = sm.C * x;
      const auto [out, accepted] = correct_step(belief, meas, sm);
      CHECK(accepted);
      CHECK((out.x - x).cwiseAbs().maxCoeff() < 1e-12);
      CHECK(out.P.trace() <= belief.P.trace() + 1e-12);
    }
  }
  SUBCASE("hand-evaluated scalar case: gain one half") {
    const auto belief = make_belief(Eigen::VectorXd::Zero(1),
                                    Eigen::MatrixXd::Constant(1, 1, 1.0));
    SensorModel sm;
    sm.C = Eigen::MatrixXd::Constant(1, 1, 1.0);
    sm.base_noise = Eigen::MatrixXd::Constant(1, 1, 1.0);
    sm.gate_threshold = -1.0;
    sm.angle_rows.assign(1, false);
    Measurement meas;
    meas.value = Eigen::VectorXd::Constant(1, 2.0);
    const auto [out, accepted] = correct_step(belief, meas, sm);
    CHECK(accepted);
    CHECK(out.x[0] == doctest::Approx(1.0));
    CHECK(out.P(0, 0) == doctest::Approx(0.5));
  }
  SUBCASE("gated measurement returns the belief bit-identically") {
    const auto belief = make_belief(Eigen::VectorXd::Zero(1),
                                    Eigen::MatrixXd::Constant(1, 1, 1.0), 3.25);
    SensorModel sm;
    sm.C = Eigen::MatrixXd::Constant(1, 1, 1.0);
    sm.base_noise = Eigen::MatrixXd::Constant(1, 1, 1.0);
    sm.gate_threshold = chi_square_gate_999(1);
    sm.angle_rows.assign(1, false);
    Measurement meas;
    meas.value = Eigen::VectorXd::Constant(1, 100.0);  // Mahalanobis^2 = 5000
    const auto [out, accepted] = correct_step(belief, meas, sm);
    CHECK_FALSE(accepted);
    CHECK(std::memcmp(out.x.data(), belief.x.data(), sizeof(double)) == 0);
    CHECK(std::memcmp(out.P.data(), belief.P.data(), sizeof(double)) == 0);
    CHECK(out.stamp == belief.stamp);
  }
  SUBCASE("singular innovation covariance names the sensor") {
    const auto belief = make_belief(Eigen::VectorXd::Zero(2), Eigen::MatrixXd::Zero(2, 2));
    SensorModel sm;
    sm.C = Eigen::MatrixXd::Identity(2, 2);
    sm.base_noise = Eigen::MatrixXd::Zero(2, 2);
    sm.base_noise(0, 0) = -1.0;  // clearly not PD
    sm.gate_threshold = -1.0;
    sm.angle_rows.assign(2, false);
    Measurement meas;
    meas.kind = SensorKind::Uvdar;
    meas.stamp = 7.5;
    meas.value = Eigen::VectorXd::Ones(2);
    try {
      correct_step(belief, meas, sm);
      FAIL("expected NumericalError");
    } catch (const NumericalError& e) {
      CHECK(e.sensor() == std::string("uvdar"));
      CHECK(e.stamp() == doctest::Approx(7.5));
    }
  }
}

TEST_CASE("transform_measurement") {
  SUBCASE("gps with zero yaw passes through") {
    Measurement meas;
    meas.kind = SensorKind::Gps;
    meas.value = Eigen::Vector3d(1, 2, 3);
    meas.noise = Eigen::Matrix3d::Identity();
    const Measurement out = transform_measurement(meas, 0.0);
    CHECK((out.value - meas.value).cwiseAbs().maxCoeff() < 1e-15);
  }
  SUBCASE("gps with quarter-turn yaw rotates into the vessel frame") {
    Measurement meas;
    meas.kind = SensorKind::Gps;
    meas.value = Eigen::Vector3d(1, 0, 0);
    meas.noise = Eigen::Matrix3d::Identity();
    const Measurement out = transform_measurement(meas, M_PI_2);
    CHECK(out.value[0] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out.value[1] == doctest::Approx(-1.0));
  }
  SUBCASE("relative pose composes with the observer") {
    Measurement meas;
    meas.kind = SensorKind::AprilTag;
    meas.value = Eigen::VectorXd::Zero(6);
    meas.value.head<3>() = Eigen::Vector3d(0, 0, -5);
    meas.noise = Eigen::MatrixXd::Identity(6, 6);
    meas.observer_pose = EulerPose({10, 0, 5}, {0, 0, 0});
    const Measurement out = transform_measurement(meas, 0.0);
    CHECK(out.value[0] == doctest::Approx(10.0));
    CHECK(out.value[1] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(out.value[2] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("relative measurement without an observer pose is rejected") {
    Measurement meas;
    meas.kind = SensorKind::Uvdar;
    meas.value = Eigen::VectorXd::Zero(6);
    CHECK_THROWS_AS(transform_measurement(meas, 0.0), std::invalid_argument);
  }
  SUBCASE("imu passes through untouched") {
    Measurement meas;
    meas.kind = SensorKind::Imu;
    meas.value = Eigen::VectorXd::LinSpaced(6, 0.1, 0.6);
    const Measurement out = transform_measurement(meas, 1.2);
    CHECK((out.value - meas.value).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("sensor_model_for") {
  const int n = 36;  // N_c = 2
  SensorConfig gps_cfg{Eigen::Vector3d(1.0, 1.0, 1.0), 0.0};
  SensorConfig six_cfg{Eigen::VectorXd::Constant(6, 0.1), 0.0};

  SUBCASE("gps selects position") {
    const SensorModel sm = sensor_model_for(SensorKind::Gps, gps_cfg, n);
    REQUIRE(sm.C.rows() == 3);
    for (int r = 0; r < 3; ++r) {
      CHECK(sm.C(r, r) == 1.0);
    }
    CHECK(sm.C.rightCols(24).cwiseAbs().maxCoeff() == 0.0);
    CHECK(sm.gate_threshold == doctest::Approx(16.266236));
  }
  SUBCASE("imu selects orientation and angular rate") {
    const SensorModel sm = sensor_model_for(SensorKind::Imu, six_cfg, n);
    REQUIRE(sm.C.rows() == 6);
    CHECK(sm.C(0, 3) == 1.0);
    CHECK(sm.C(2, 5) == 1.0);
    CHECK(sm.C(3, 9) == 1.0);
    CHECK(sm.C(5, 11) == 1.0);
    CHECK(sm.angle_rows[0]);
    CHECK_FALSE(sm.angle_rows[3]);
  }
  SUBCASE("every C is a clean selector: C C' = I, wave columns zero") {
    for (SensorKind kind : kAllSensors) {
      const SensorConfig& cfg = kind == SensorKind::Gps ? gps_cfg : six_cfg;
      const SensorModel sm = sensor_model_for(kind, cfg, n);
      const Eigen::MatrixXd CCt = sm.C * sm.C.transpose();
      CHECK((CCt - Eigen::MatrixXd::Identity(sm.C.rows(), sm.C.rows())).cwiseAbs().maxCoeff() ==
            0.0);
      CHECK(sm.C.rightCols(24).cwiseAbs().maxCoeff() == 0.0);
    }
  }
  SUBCASE("noise dimension mismatch is rejected") {
    CHECK_THROWS_AS(sensor_model_for(SensorKind::Imu, gps_cfg, n), std::invalid_argument);
  }
}

TEST_CASE("process_in_order") {
  const DiscreteModel model = default_model();
  const int n = model.dim();
  const ProcessNoise q = make_process_noise(2, 1e-8, 2e-5, 4e-4);
  VesselBelief init;
  init.x = Eigen::VectorXd::Zero(n);
  init.P = Eigen::MatrixXd::Identity(n, n);
  init.stamp = 0.0;

  std::map<SensorKind, SensorModel> sensors;
  sensors[SensorKind::Gps] =
      sensor_model_for(SensorKind::Gps, {Eigen::Vector3d(0.5, 0.5, 0.5), -1.0}, n);
  sensors[SensorKind::Imu] =
      sensor_model_for(SensorKind::Imu, {Eigen::VectorXd::Constant(6, 0.05), -1.0}, n);
  sensors[SensorKind::Uvdar] =
      sensor_model_for(SensorKind::Uvdar, {Eigen::VectorXd::Constant(6, 0.2), -1.0}, n);
  sensors[SensorKind::AprilTag] =
      sensor_model_for(SensorKind::AprilTag, {Eigen::VectorXd::Constant(6, 0.1), -1.0}, n);

  SUBCASE("empty stream is a pure prediction rollout") {
    const VesselBelief out = process_in_order(init, model, q, sensors, {}, 10);
    VesselBelief expected = init;
    for (int k = 0; k < 10; ++k) {
      expected = predict_step(expected, model, q);
    }
    CHECK((out.x - expected.x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.P - expected.P).cwiseAbs().maxCoeff() == 0.0);
    CHECK(out.stamp == doctest::Approx(0.1));
  }
  SUBCASE("a fix at t=0.05 is applied exactly after the fifth predict") {
    Measurement gps;
    gps.kind = SensorKind::Gps;
    gps.stamp = 0.05;
    gps.value = Eigen::Vector3d(1.0, 0.0, 0.0);
    gps.noise = 0.25 * Eigen::Matrix3d::Identity();

    // Reference: five predicts, the correction, then five more predicts.
    VesselBelief expected = init;
    for (int k = 0; k < 5; ++k) expected = predict_step(expected, model, q);
    expected = correct_step(expected, transform_measurement(gps, expected.x[5]),
                            sensors[SensorKind::Gps])
                   .first;
    for (int k = 0; k < 5; ++k) expected = predict_step(expected, model, q);

    const VesselBelief out = process_in_order(init, model, q, sensors, {gps}, 10);
    CHECK((out.x - expected.x).cwiseAbs().maxCoeff() == 0.0);
    CHECK((out.P - expected.P).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("simultaneous measurements apply in fixed kind order") {
    Measurement apriltag;
    apriltag.kind = SensorKind::AprilTag;
    apriltag.stamp = 0.01;
    apriltag.value = Eigen::VectorXd::Zero(6);
    apriltag.value[0] = 2.0;
    apriltag.noise = 0.01 * Eigen::MatrixXd::Identity(6, 6);
    apriltag.observer_pose = EulerPose({0, 0, 0}, {0, 0, 0});
    Measurement uvdar = apriltag;
    uvdar.kind = SensorKind::Uvdar;
    uvdar.value[0] = -2.0;
    uvdar.observer_pose = EulerPose({0, 0, 0}, {0, 0, 0});

    // Enqueue AprilTag first; the pipeline must still apply Uvdar first.
    VesselBelief expected = predict_step(init, model, q);
    expected = correct_step(expected, transform_measurement(uvdar, expected.x[5]),
                            sensors[SensorKind::Uvdar])
                   .first;
    expected = correct_step(expected, transform_measurement(apriltag, expected.x[5]),
                            sensors[SensorKind::AprilTag])
                   .first;

    const VesselBelief out = process_in_order(init, model, q, sensors, {apriltag, uvdar}, 1);
    CHECK((out.x - expected.x).cwiseAbs().maxCoeff() == 0.0);
  }
  SUBCASE("stale measurements are dropped and counted") {
    Measurement gps;
    gps.kind = SensorKind::Gps;
    gps.stamp = 0.005;  // older than one period once the pipeline reaches 0.02
    gps.value = Eigen::Vector3d(100.0, 0.0, 0.0);
    gps.noise = 0.25 * Eigen::Matrix3d::Identity();

    MeasurementPipeline pipeline(init, model, q, sensors);
    pipeline.step();  // t = 0.01; nothing queued yet
    pipeline.enqueue(gps);
    pipeline.step();  // t = 0.02; the fix is now older than one period
    CHECK(pipeline.counters().at(SensorKind::Gps).dropped_stale == 1);
    CHECK(pipeline.counters().at(SensorKind::Gps).accepted == 0);
  }
}

TEST_CASE("covariance stays symmetric PSD over random cycles") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> gauss(0.0, 1.0);

  auto run_cycles = [&](const DiscreteModel& model, const ProcessNoise& q, int n, int cycles) {
    VesselBelief belief;
    belief.x = Eigen::VectorXd::Zero(n);
    belief.P = test_util::random_spd(rng, n);
    SensorModel sm;
    sm.C = Eigen::MatrixXd::Zero(3, n);
    sm.C(0, 0) = sm.C(1, 1) = sm.C(2, 2) = 1.0;
    sm.base_noise = 0.25 * Eigen::MatrixXd::Identity(3, 3);
    sm.gate_threshold = -1.0;
    sm.angle_rows.assign(3, false);

    for (int k = 0; k < cycles; ++k) {
      belief = predict_step(belief, model, q);
      Measurement meas;
      meas.value = sm.C * belief.x + 0.5 * test_util::random_vector(rng, 3);
      auto [posterior, accepted] = correct_step(belief, meas, sm);
      belief = posterior;
      if (k % 100 == 0) {
        CHECK((belief.P - belief.P.transpose()).cwiseAbs().maxCoeff() < 1e-9);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(belief.P);
        CHECK(eig.eigenvalues().minCoeff() > -1e-9);
      }
    }
  };

  SUBCASE("wave-free model, many cycles") {
    const DiscreteModel model{0.99 * Eigen::MatrixXd::Identity(12, 12) +
                                  0.01 * Eigen::MatrixXd::Random(12, 12),
                              0.01};
    run_cycles(model, make_process_noise(0, 1e-6, 1e-4, 0.0), 12, 100000);
  }
  SUBCASE("full wave model") {
    run_cycles(default_model(), make_process_noise(2, 1e-8, 2e-5, 4e-4), 36, 10000);
  }
}

TEST_CASE("simultaneous independent corrections commute") {
  const DiscreteModel model = default_model();
  const int n = model.dim();
  std::mt19937_64 rng(5);

  const SensorModel gps =
      sensor_model_for(SensorKind::Gps, {Eigen::Vector3d(0.7, 0.7, 0.7), -1.0}, n);
  const SensorModel imu =
      sensor_model_for(SensorKind::Imu, {Eigen::VectorXd::Constant(6, 0.05), -1.0}, n);

  for (int trial = 0; trial < 20; ++trial) {
    VesselBelief belief;
    belief.x = test_util::random_vector(rng, n, 0.3);
    belief.P = test_util::random_spd(rng, n, 0.3);
    Measurement zg;
    zg.kind = SensorKind::Gps;
    zg.value = test_util::random_vector(rng, 3);
    Measurement zi;
    zi.kind = SensorKind::Imu;
    zi.value = 0.1 * test_util::random_vector(rng, 6);

    const VesselBelief ab =
        correct_step(correct_step(belief, zg, gps).first, zi, imu).first;
    const VesselBelief ba =
        correct_step(correct_step(belief, zi, imu).first, zg, gps).first;
    CHECK((ab.x - ba.x).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("full fusion beats GPS-only on a linear-model ground truth") {
  const DiscreteModel model = default_model();
  const int n = model.dim();
  const ProcessNoise q = make_process_noise(2, 1e-8, 2e-5, 4e-4);

  auto position_rmse = [&](bool full, unsigned long seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);

    std::map<SensorKind, SensorModel> sensors;
    sensors[SensorKind::Gps] =
        sensor_model_for(SensorKind::Gps, {Eigen::Vector3d(1.0, 1.0, 1.0), -1.0}, n);
    Eigen::VectorXd imu_std(6);
    imu_std << 0.01, 0.01, 0.01, 0.3, 0.3, 0.3;
    if (full) {
      sensors[SensorKind::Imu] = sensor_model_for(SensorKind::Imu, {imu_std, -1.0}, n);
      sensors[SensorKind::Uvdar] =
          sensor_model_for(SensorKind::Uvdar, {Eigen::VectorXd::Constant(6, 0.35), -1.0}, n);
      sensors[SensorKind::AprilTag] =
          sensor_model_for(SensorKind::AprilTag, {Eigen::VectorXd::Constant(6, 0.1), -1.0}, n);
    }

    VesselBelief init;
    init.x = Eigen::VectorXd::Zero(n);
    init.P = Eigen::MatrixXd::Identity(n, n);
    MeasurementPipeline pipeline(init, model, q, sensors);

    Eigen::VectorXd truth = Eigen::VectorXd::Zero(n);
    const Eigen::VectorXd q_sqrt = q.Q.diagonal().cwiseSqrt();
    double sse = 0.0;
    long samples = 0;
    for (int k = 1; k <= 1500; ++k) {
      Eigen::VectorXd noise(n);
      for (int i = 0; i < n; ++i) {
        noise[i] = q_sqrt[i] * gauss(rng);
      }
      truth = model.A_d * truth + noise;
      const double t = k * model.dt;
      const double psi = truth[5];

      if (k % 10 == 0) {  // 10 Hz GPS, world frame
        Measurement gps;
        gps.kind = SensorKind::Gps;
        gps.stamp = t;
        const EulerPose world = to_world(EulerPose(truth.head<3>(), truth.segment<3>(3)), psi);
        gps.value = world.position;
        for (int i = 0; i < 3; ++i) gps.value[i] += gauss(rng);
        gps.noise = Eigen::Matrix3d::Identity();
        pipeline.enqueue(gps);
      }
      if (full) {
        Measurement imu;  // 100 Hz IMU
        imu.kind = SensorKind::Imu;
        imu.stamp = t;
        imu.value.resize(6);
        for (int i = 0; i < 3; ++i) imu.value[i] = truth[3 + i] + imu_std[i] * gauss(rng);
        for (int i = 0; i < 3; ++i) imu.value[3 + i] = truth[9 + i] + imu_std[3 + i] * gauss(rng);
        imu.noise = imu_std.array().square().matrix().asDiagonal();
        pipeline.enqueue(imu);
        if (k % 3 == 0) {  // ~33 Hz vision from a hovering observer
          const EulerPose world = to_world(EulerPose(truth.head<3>(), truth.segment<3>(3)), psi);
          const Eigen::Vector3d uav_pos(0.0, 0.0, 5.0);
          for (SensorKind kind : {SensorKind::Uvdar, SensorKind::AprilTag}) {
            const double sigma = kind == SensorKind::Uvdar ? 0.35 : 0.1;
            Measurement vis;
            vis.kind = kind;
            vis.stamp = t;
            vis.value.resize(6);
            vis.value.head<3>() = world.position - uav_pos;
            vis.value.tail<3>() = world.orientation;
            for (int i = 0; i < 6; ++i) vis.value[i] += sigma * gauss(rng);
            vis.noise = sigma * sigma * Eigen::MatrixXd::Identity(6, 6);
            vis.observer_pose = EulerPose(uav_pos, {0, 0, 0});
            pipeline.enqueue(vis);
          }
        }
      }
      const VesselBelief& belief = pipeline.step();
      if (t > 5.0) {
        sse += (belief.x.head<3>() - truth.head<3>()).squaredNorm();
        samples += 3;
      }
    }
    return std::sqrt(sse / samples);
  };

  int wins = 0;
  double mean_full = 0.0, mean_gps = 0.0;
  for (unsigned long seed = 1; seed <= 10; ++seed) {
    const double full = position_rmse(true, seed);
    const double gps = position_rmse(false, seed);
    mean_full += full;
    mean_gps += gps;
    if (full < gps) {
      ++wins;
    }
  }
  CHECK(wins >= 9);
  CHECK(mean_full < mean_gps);
}
