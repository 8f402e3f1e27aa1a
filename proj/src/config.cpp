#include "usvwave/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "usvwave/errors.hpp"

namespace usvwave {

using nlohmann::json;

namespace {

const char* kSensorKeys[4] = {"gps", "imu", "uvdar", "apriltag"};
const char* kChannelKeys[6] = {"surge", "sway", "heave", "roll", "pitch", "yaw"};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
  throw ConfigError(key, what);
}

void require_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (allowed.find(key) == allowed.end()) {
      fail(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj[key].is_number()) {
    fail(path + "." + key, "expected a number");
  }
  return obj[key].get<double>();
}

bool get_bool(const json& obj, const std::string& path, const std::string& key, bool fallback) {
  if (!obj.contains(key)) {
    return fallback;
  }
  if (!obj[key].is_boolean()) {
    fail(path + "." + key, "expected a boolean");
  }
  return obj[key].get<bool>();
}

Eigen::VectorXd get_vector(const json& obj, const std::string& path, const std::string& key,
                           const Eigen::VectorXd& fallback, int expected_size) {
  if (!obj.contains(key)) {
    return fallback;
  }
  const json& arr = obj[key];
  if (!arr.is_array() || static_cast<int>(arr.size()) != expected_size) {
    fail(path + "." + key, "expected an array of " + std::to_string(expected_size) + " numbers");
  }
  Eigen::VectorXd v(expected_size);
  for (int i = 0; i < expected_size; ++i) {
    if (!arr[i].is_number()) {
      fail(path + "." + key, "expected an array of numbers");
    }
    v[i] = arr[i].get<double>();
  }
  return v;
}

void parse_sensor(const json& obj, const std::string& path, SensorSpec& spec, bool vision) {
  std::set<std::string> allowed = {"enabled", "rate_hz", "noise_std", "delay", "gate"};
  if (vision) {
    allowed.insert("max_range");
    allowed.insert("dropout");
  }
  require_keys(obj, path, allowed);
  spec.enabled = get_bool(obj, path, "enabled", spec.enabled);
  spec.rate_hz = get_number(obj, path, "rate_hz", spec.rate_hz);
  spec.noise_std = get_vector(obj, path, "noise_std", spec.noise_std,
                              static_cast<int>(spec.noise_std.size()));
  spec.delay = get_number(obj, path, "delay", spec.delay);
  spec.gate_threshold = get_number(obj, path, "gate", spec.gate_threshold);
  if (vision) {
    spec.max_range = get_number(obj, path, "max_range", spec.max_range);
    spec.dropout = get_number(obj, path, "dropout", spec.dropout);
  }
}

std::vector<TruthWaveComponent> parse_spectrum_channel(const json& arr, const std::string& path) {
  std::vector<TruthWaveComponent> out;
  if (!arr.is_array()) {
    fail(path, "expected an array of wave components");
  }
  for (size_t i = 0; i < arr.size(); ++i) {
    const std::string cpath = path + "[" + std::to_string(i) + "]";
    require_keys(arr[i], cpath, {"omega0", "lambda", "amplitude"});
    TruthWaveComponent comp;
    comp.omega0 = get_number(arr[i], cpath, "omega0", 1.0);
    comp.lambda = get_number(arr[i], cpath, "lambda", 0.0);
    comp.amplitude = get_number(arr[i], cpath, "amplitude", 0.0);
    out.push_back(comp);
  }
  return out;
}

bool divides(double period, double dt) {
  const double ratio = period / dt;
  return std::abs(ratio - std::round(ratio)) < 1e-9 && std::round(ratio) >= 1.0;
}

}  // namespace

const char* task_name(Task task) {
  switch (task) {
    case Task::EstimateOnly:
      return "estimate-only";
    case Task::Follow:
      return "follow";
    case Task::Land:
      return "land";
  }
  return "unknown";
}

const char* variant_name(Variant variant) {
  switch (variant) {
    case Variant::FullFusion:
      return "full-fusion";
    case Variant::GpsOnly:
      return "gps-only";
    case Variant::ImuOnly:
      return "imu-only";
    case Variant::UvdarOnly:
      return "uvdar-only";
    case Variant::AprilTagOnly:
      return "apriltag-only";
    case Variant::NoWaveModel:
      return "no-wave-model";
    case Variant::SotaProxy:
      return "sota-proxy";
  }
  return "unknown";
}

Task task_from_name(const std::string& name) {
  if (name == "estimate-only") return Task::EstimateOnly;
  if (name == "follow") return Task::Follow;
  if (name == "land") return Task::Land;
  fail("task", "unknown task '" + name + "'");
}

Variant variant_from_name(const std::string& name) {
  if (name == "full-fusion") return Variant::FullFusion;
  if (name == "gps-only") return Variant::GpsOnly;
  if (name == "imu-only") return Variant::ImuOnly;
  if (name == "uvdar-only") return Variant::UvdarOnly;
  if (name == "apriltag-only") return Variant::AprilTagOnly;
  if (name == "no-wave-model") return Variant::NoWaveModel;
  if (name == "sota-proxy") return Variant::SotaProxy;
  fail("variant", "unknown variant '" + name + "'");
}

ScenarioConfig default_scenario() {
  ScenarioConfig cfg;
  cfg.wave_bank.components = {{0.9, 0.15}, {1.6, 0.15}};

  auto vec = [](std::initializer_list<double> v) {
    Eigen::VectorXd out(static_cast<Eigen::Index>(v.size()));
    int i = 0;
    for (double x : v) out[i++] = x;
    return out;
  };
  cfg.sensors[0] = SensorSpec{true, 10.0, vec({1.0, 1.0, 1.0}), 0.0, 0.0, 0.0, 0.0};
  cfg.sensors[1] =
      SensorSpec{true, 100.0, vec({0.01, 0.01, 0.01, 0.3, 0.3, 0.3}), 0.0, 0.0, 0.0, 0.0};
  cfg.sensors[2] = SensorSpec{true, 30.0, vec({0.35, 0.35, 0.35, 0.12, 0.12, 0.12}),
                              0.0, 0.0, 15.0, 0.05};
  cfg.sensors[3] = SensorSpec{true, 30.0, vec({0.08, 0.08, 0.08, 0.05, 0.05, 0.05}),
                              0.0, 0.0, 8.0, 0.05};

  cfg.truth.rigid = cfg.rigid_params();
  // Waves act mainly in heave, roll, and pitch, with small surge/sway/yaw
  // components; the truth spectrum is deliberately richer than the N_c = 2
  // estimator bank.
  cfg.truth.wave_spectrum[0] = {{1.1, 0.0, 0.05}};
  cfg.truth.wave_spectrum[1] = {{1.3, 0.0, 0.05}};
  cfg.truth.wave_spectrum[2] = {{0.9, 0.0, 0.30}, {1.4, 0.0, 0.15}, {2.2, 0.0, 0.08}};
  cfg.truth.wave_spectrum[3] = {{0.8, 0.0, 0.06}, {1.5, 0.0, 0.05}, {2.5, 0.0, 0.03}};
  cfg.truth.wave_spectrum[4] = {{0.9, 0.0, 0.05}, {1.6, 0.0, 0.04}, {2.4, 0.0, 0.02}};
  cfg.truth.wave_spectrum[5] = {{0.7, 0.0, 0.02}};
  cfg.truth.forcing = {{0.0, 0.0, 0.0}};
  return cfg;
}

ScenarioConfig parse_scenario_config(const std::string& json_text, const std::string& origin) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    fail(origin, std::string("JSON parse error: ") + e.what());
  }

  ScenarioConfig cfg = default_scenario();
  require_keys(root, "",
               {"duration", "seed", "task", "variant", "model", "estimator", "sensors", "truth",
                "predictor", "planner", "uav", "metrics"});

  cfg.duration = get_number(root, "", "duration", cfg.duration);
  if (root.contains("seed")) {
    if (!root["seed"].is_number_unsigned()) {
      fail("seed", "expected a non-negative integer");
    }
    cfg.seed = root["seed"].get<unsigned long>();
  }
  if (root.contains("task")) {
    cfg.task = task_from_name(root["task"].get<std::string>());
  }
  if (root.contains("variant")) {
    cfg.variant = variant_from_name(root["variant"].get<std::string>());
  }

  if (root.contains("model")) {
    const json& m = root["model"];
    require_keys(m, "model", {"dt", "mass", "damping", "restoring", "wave_components"});
    cfg.model_dt = get_number(m, "model", "dt", cfg.model_dt);
    cfg.mass = get_vector(m, "model", "mass", cfg.mass, 6);
    cfg.damping = get_vector(m, "model", "damping", cfg.damping, 6);
    cfg.restoring = get_vector(m, "model", "restoring", cfg.restoring, 6);
    if (m.contains("wave_components")) {
      const json& arr = m["wave_components"];
      if (!arr.is_array()) {
        fail("model.wave_components", "expected an array");
      }
      cfg.wave_bank.components.clear();
      for (size_t i = 0; i < arr.size(); ++i) {
        const std::string cpath = "model.wave_components[" + std::to_string(i) + "]";
        require_keys(arr[i], cpath, {"omega0", "lambda"});
        cfg.wave_bank.components.push_back(
            {get_number(arr[i], cpath, "omega0", 1.0), get_number(arr[i], cpath, "lambda", 0.0)});
      }
    }
  }

  if (root.contains("estimator")) {
    const json& e = root["estimator"];
    require_keys(e, "estimator",
                 {"process_noise", "initial_std", "init_from_truth"});
    if (e.contains("process_noise")) {
      const json& q = e["process_noise"];
      require_keys(q, "estimator.process_noise", {"position", "velocity", "wave"});
      cfg.estimator.q_position =
          get_number(q, "estimator.process_noise", "position", cfg.estimator.q_position);
      cfg.estimator.q_velocity =
          get_number(q, "estimator.process_noise", "velocity", cfg.estimator.q_velocity);
      cfg.estimator.q_wave = get_number(q, "estimator.process_noise", "wave", cfg.estimator.q_wave);
    }
    if (e.contains("initial_std")) {
      const json& s = e["initial_std"];
      require_keys(s, "estimator.initial_std", {"position", "orientation", "velocity", "wave"});
      cfg.estimator.init_std_position =
          get_number(s, "estimator.initial_std", "position", cfg.estimator.init_std_position);
      cfg.estimator.init_std_orientation = get_number(s, "estimator.initial_std", "orientation",
                                                      cfg.estimator.init_std_orientation);
      cfg.estimator.init_std_velocity =
          get_number(s, "estimator.initial_std", "velocity", cfg.estimator.init_std_velocity);
      cfg.estimator.init_std_wave =
          get_number(s, "estimator.initial_std", "wave", cfg.estimator.init_std_wave);
    }
    cfg.estimator.init_from_truth =
        get_bool(e, "estimator", "init_from_truth", cfg.estimator.init_from_truth);
  }

  if (root.contains("sensors")) {
    const json& s = root["sensors"];
    require_keys(s, "sensors", {"gps", "imu", "uvdar", "apriltag"});
    for (int i = 0; i < 4; ++i) {
      if (s.contains(kSensorKeys[i])) {
        parse_sensor(s[kSensorKeys[i]], std::string("sensors.") + kSensorKeys[i], cfg.sensors[i],
                     i >= 2);
      }
    }
  }

  if (root.contains("truth")) {
    const json& t = root["truth"];
    require_keys(t, "truth",
                 {"dt", "linear", "initial_pose", "initial_velocity", "wave_spectrum", "forcing",
                  "yaw_gain", "observer_noise"});
    cfg.truth.dt = get_number(t, "truth", "dt", cfg.truth.dt);
    cfg.truth.linear = get_bool(t, "truth", "linear", cfg.truth.linear);
    cfg.truth.initial_pose = get_vector(t, "truth", "initial_pose", cfg.truth.initial_pose, 6);
    cfg.truth.initial_velocity =
        get_vector(t, "truth", "initial_velocity", cfg.truth.initial_velocity, 6);
    if (t.contains("wave_spectrum")) {
      const json& ws = t["wave_spectrum"];
      require_keys(ws, "truth.wave_spectrum",
                   {"surge", "sway", "heave", "roll", "pitch", "yaw"});
      for (int ch = 0; ch < 6; ++ch) {
        if (ws.contains(kChannelKeys[ch])) {
          cfg.truth.wave_spectrum[ch] = parse_spectrum_channel(
              ws[kChannelKeys[ch]], std::string("truth.wave_spectrum.") + kChannelKeys[ch]);
        }
      }
    }
    if (t.contains("forcing")) {
      const json& arr = t["forcing"];
      if (!arr.is_array()) {
        fail("truth.forcing", "expected an array");
      }
      cfg.truth.forcing.clear();
      for (size_t i = 0; i < arr.size(); ++i) {
        const std::string fpath = "truth.forcing[" + std::to_string(i) + "]";
        require_keys(arr[i], fpath, {"t", "surge_thrust", "yaw_rate"});
        ForcingSegment seg;
        seg.t = get_number(arr[i], fpath, "t", 0.0);
        seg.surge_thrust = get_number(arr[i], fpath, "surge_thrust", 0.0);
        seg.yaw_rate = get_number(arr[i], fpath, "yaw_rate", 0.0);
        cfg.truth.forcing.push_back(seg);
      }
    }
    cfg.truth.yaw_gain = get_number(t, "truth", "yaw_gain", cfg.truth.yaw_gain);
    if (t.contains("observer_noise")) {
      const json& o = t["observer_noise"];
      require_keys(o, "truth.observer_noise", {"position_std", "orientation_std"});
      cfg.truth.observer_noise.position_std = get_number(o, "truth.observer_noise", "position_std",
                                                         cfg.truth.observer_noise.position_std);
      cfg.truth.observer_noise.orientation_std = get_number(
          o, "truth.observer_noise", "orientation_std", cfg.truth.observer_noise.orientation_std);
    }
  }

  if (root.contains("predictor")) {
    const json& p = root["predictor"];
    require_keys(p, "predictor", {"steps", "rate_hz"});
    cfg.predictor.steps = static_cast<int>(get_number(p, "predictor", "steps", cfg.predictor.steps));
    cfg.predictor.rate_hz = get_number(p, "predictor", "rate_hz", cfg.predictor.rate_hz);
  }

  if (root.contains("planner")) {
    const json& p = root["planner"];
    require_keys(p, "planner",
                 {"rate_hz", "hover_height", "window_steps", "dt", "weights", "limits", "landing"});
    cfg.planner.rate_hz = get_number(p, "planner", "rate_hz", cfg.planner.rate_hz);
    cfg.planner.follow.hover_height =
        get_number(p, "planner", "hover_height", cfg.planner.follow.hover_height);
    cfg.planner.follow.horizon_steps = static_cast<int>(
        get_number(p, "planner", "window_steps", cfg.planner.follow.horizon_steps));
    cfg.planner.follow.dt = get_number(p, "planner", "dt", cfg.planner.follow.dt);
    if (p.contains("weights")) {
      const json& w = p["weights"];
      require_keys(w, "planner.weights", {"position", "velocity", "accel"});
      cfg.planner.follow.w_position =
          get_number(w, "planner.weights", "position", cfg.planner.follow.w_position);
      cfg.planner.follow.w_velocity =
          get_number(w, "planner.weights", "velocity", cfg.planner.follow.w_velocity);
      cfg.planner.follow.w_accel =
          get_number(w, "planner.weights", "accel", cfg.planner.follow.w_accel);
    }
    if (p.contains("limits")) {
      const json& l = p["limits"];
      require_keys(l, "planner.limits", {"v_max", "a_max"});
      cfg.planner.follow.v_max = get_number(l, "planner.limits", "v_max", cfg.planner.follow.v_max);
      cfg.planner.follow.a_max = get_number(l, "planner.limits", "a_max", cfg.planner.follow.a_max);
    }
    if (p.contains("landing")) {
      const json& l = p["landing"];
      require_keys(l, "planner.landing",
                   {"align_at", "descent_rate", "touchdown_height", "max_tilt",
                    "max_horizontal_error", "max_heave_rate", "dwell", "heave_window",
                    "contact_speed_bound", "abort_tilt", "abort_horizontal_error",
                    "final_approach_height", "max_contact_updraft", "abort_heave_rate"});
      LandingConfig& lc = cfg.planner.landing;
      cfg.planner.align_at = get_number(l, "planner.landing", "align_at", cfg.planner.align_at);
      lc.descent_rate = get_number(l, "planner.landing", "descent_rate", lc.descent_rate);
      lc.touchdown_height =
          get_number(l, "planner.landing", "touchdown_height", lc.touchdown_height);
      lc.max_tilt = get_number(l, "planner.landing", "max_tilt", lc.max_tilt);
      lc.max_horizontal_error =
          get_number(l, "planner.landing", "max_horizontal_error", lc.max_horizontal_error);
      lc.max_heave_rate = get_number(l, "planner.landing", "max_heave_rate", lc.max_heave_rate);
      lc.dwell = get_number(l, "planner.landing", "dwell", lc.dwell);
      lc.heave_window = get_number(l, "planner.landing", "heave_window", lc.heave_window);
      lc.contact_speed_bound =
          get_number(l, "planner.landing", "contact_speed_bound", lc.contact_speed_bound);
      lc.abort_tilt = get_number(l, "planner.landing", "abort_tilt", lc.abort_tilt);
      lc.abort_horizontal_error =
          get_number(l, "planner.landing", "abort_horizontal_error", lc.abort_horizontal_error);
      lc.final_approach_height =
          get_number(l, "planner.landing", "final_approach_height", lc.final_approach_height);
      lc.max_contact_updraft =
          get_number(l, "planner.landing", "max_contact_updraft", lc.max_contact_updraft);
      lc.abort_heave_rate =
          get_number(l, "planner.landing", "abort_heave_rate", lc.abort_heave_rate);
    }
  }

  if (root.contains("uav")) {
    const json& u = root["uav"];
    require_keys(u, "uav", {"initial_position"});
    const Eigen::VectorXd p = get_vector(u, "uav", "initial_position", cfg.uav_initial, 3);
    cfg.uav_initial = p.head<3>();
  }

  if (root.contains("metrics")) {
    const json& m = root["metrics"];
    require_keys(m, "metrics", {"warmup_s"});
    cfg.metrics.warmup_s = get_number(m, "metrics", "warmup_s", cfg.metrics.warmup_s);
  }

  cfg.truth.rigid = cfg.rigid_params();
  return cfg;
}

ScenarioConfig load_scenario_config(const std::string& path,
                                    const std::vector<std::string>& overrides) {
  std::ifstream f(path);
  if (!f) {
    fail(path, "cannot open config file");
  }
  std::stringstream buffer;
  buffer << f.rdbuf();

  json root;
  try {
    root = json::parse(buffer.str());
  } catch (const json::parse_error& e) {
    fail(path, std::string("JSON parse error: ") + e.what());
  }

  for (const std::string& ov : overrides) {
    const size_t eq = ov.find('=');
    if (eq == std::string::npos) {
      fail(ov, "override must have the form key.path=value");
    }
    const std::string key = ov.substr(0, eq);
    const std::string value = ov.substr(eq + 1);
    std::string pointer = "/" + key;
    for (auto& c : pointer) {
      if (c == '.') c = '/';
    }
    json parsed;
    try {
      parsed = json::parse(value);
    } catch (const json::parse_error&) {
      parsed = value;  // plain strings need no quoting
    }
    root[json::json_pointer(pointer)] = parsed;
  }

  ScenarioConfig cfg = parse_scenario_config(root.dump(), path);
  validate_scenario_config(cfg);
  return cfg;
}

void validate_scenario_config(const ScenarioConfig& cfg) {
  if (cfg.duration < 0.0) fail("duration", "must be >= 0");
  if (!(cfg.model_dt > 0.0)) fail("model.dt", "must be > 0");
  if (!(cfg.truth.dt > 0.0)) fail("truth.dt", "must be > 0");
  if (!divides(cfg.model_dt, cfg.truth.dt)) {
    fail("model.dt", "must be an integer multiple of truth.dt");
  }
  for (int i = 0; i < 6; ++i) {
    if (!(cfg.mass[i] > 0.0)) fail("model.mass", "entries must be > 0");
    if (cfg.damping[i] < 0.0) fail("model.damping", "entries must be >= 0");
    if (cfg.restoring[i] < 0.0) fail("model.restoring", "entries must be >= 0");
  }
  for (const auto& comp : cfg.wave_bank.components) {
    if (!(comp.omega0 > 0.0)) fail("model.wave_components", "omega0 must be > 0");
    if (comp.lambda < 0.0) fail("model.wave_components", "lambda must be >= 0");
  }
  for (int ch = 0; ch < 6; ++ch) {
    for (const auto& comp : cfg.truth.wave_spectrum[ch]) {
      if (!(comp.omega0 > 0.0)) fail("truth.wave_spectrum", "omega0 must be > 0");
      if (comp.lambda < 0.0) fail("truth.wave_spectrum", "lambda must be >= 0");
    }
  }
  for (int i = 0; i < 4; ++i) {
    const SensorSpec& s = cfg.sensors[i];
    const std::string path = std::string("sensors.") + kSensorKeys[i];
    if (!(s.rate_hz > 0.0)) fail(path + ".rate_hz", "must be > 0");
    if ((s.noise_std.array() < 0.0).any()) fail(path + ".noise_std", "must be >= 0");
    if (s.delay < 0.0) fail(path + ".delay", "must be >= 0");
    if (s.dropout < 0.0 || s.dropout >= 1.0) fail(path + ".dropout", "must be in [0, 1)");
    if (s.max_range < 0.0) fail(path + ".max_range", "must be >= 0");
    const int expected = i == 0 ? 3 : 6;
    if (s.noise_std.size() != expected) {
      fail(path + ".noise_std", "expected " + std::to_string(expected) + " entries");
    }
  }
  if (cfg.predictor.steps < 1) fail("predictor.steps", "must be >= 1");
  if (!(cfg.predictor.rate_hz > 0.0)) fail("predictor.rate_hz", "must be > 0");
  if (!divides(1.0 / cfg.predictor.rate_hz, cfg.truth.dt)) {
    fail("predictor.rate_hz", "period must be an integer multiple of truth.dt");
  }
  if (!(cfg.planner.rate_hz > 0.0)) fail("planner.rate_hz", "must be > 0");
  if (!divides(1.0 / cfg.planner.rate_hz, cfg.truth.dt)) {
    fail("planner.rate_hz", "period must be an integer multiple of truth.dt");
  }
  const FollowConfig& fc = cfg.planner.follow;
  if (!(fc.hover_height > 0.0)) fail("planner.hover_height", "must be > 0");
  if (fc.horizon_steps < 1) fail("planner.window_steps", "must be >= 1");
  if (!(fc.dt > 0.0)) fail("planner.dt", "must be > 0");
  if (!(fc.v_max > 0.0) && fc.v_max != 0.0) fail("planner.limits.v_max", "must be >= 0");
  if (!(fc.a_max > 0.0) && fc.a_max != 0.0) fail("planner.limits.a_max", "must be >= 0");
  const LandingConfig& lc = cfg.planner.landing;
  if (!(lc.descent_rate > 0.0)) fail("planner.landing.descent_rate", "must be > 0");
  if (!(lc.touchdown_height > 0.0)) fail("planner.landing.touchdown_height", "must be > 0");
  if (!(lc.dwell > 0.0)) fail("planner.landing.dwell", "must be > 0");
  // The reference lookup must stay inside the prediction horizon even with a
  // one-predictor-period-old horizon.
  const double window = fc.horizon_steps * fc.dt + 1.0 / cfg.predictor.rate_hz;
  const double horizon_span = cfg.predictor.steps * cfg.model_dt;
  if (cfg.task != Task::EstimateOnly && window > horizon_span + 1e-9) {
    fail("planner.window_steps",
         "MPC window plus predictor staleness exceeds the prediction horizon");
  }
  if (cfg.metrics.warmup_s < 0.0) fail("metrics.warmup_s", "must be >= 0");
}

void apply_variant(ScenarioConfig& cfg) {
  auto only = [&cfg](int keep) {
    for (int i = 0; i < 4; ++i) {
      if (i != keep) {
        cfg.sensors[i].enabled = false;
      }
    }
  };
  switch (cfg.variant) {
    case Variant::FullFusion:
      break;
    case Variant::GpsOnly:
      only(0);
      break;
    case Variant::ImuOnly:
      only(1);
      break;
    case Variant::UvdarOnly:
      only(2);
      break;
    case Variant::AprilTagOnly:
      only(3);
      break;
    case Variant::NoWaveModel:
      cfg.wave_bank.components.clear();
      break;
    case Variant::SotaProxy:
      only(3);
      cfg.wave_bank.components.clear();
      break;
  }
}

}  // namespace usvwave
