#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "usvwave/errors.hpp"
#include "usvwave/harness.hpp"

namespace {

// Exit codes: 0 success, 1 usage, 2 config/schema, 3 IO, 4 runtime/numerical.
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitRuntime = 4;

int run_command(const std::string& config_path, const std::vector<std::string>& overrides,
                const std::string& out_dir, bool plots) {
  const usvwave::ScenarioConfig cfg = usvwave::load_scenario_config(config_path, overrides);
  const usvwave::RunArtifacts artifacts = usvwave::run_and_report(cfg, out_dir, plots);
  const usvwave::MetricsReport& m = artifacts.metrics;
  std::cout << "task=" << usvwave::task_name(cfg.task)
            << " variant=" << usvwave::variant_name(cfg.variant) << " seed=" << cfg.seed
            << " rows=" << artifacts.log.rows.size() << "\n";
  std::cout << "RMSE est pos=" << m.est_pos << " m, ori=" << m.est_ori
            << " rad, linvel=" << m.est_linvel << " m/s, angvel=" << m.est_angvel << " rad/s\n";
  std::cout << "RMSE pred pos=" << m.pred_pos << " m, ori=" << m.pred_ori << " rad\n";
  if (cfg.task == usvwave::Task::Land) {
    if (m.touchdown) {
      std::cout << "touchdown at t=" << m.touchdown_time
                << " s, relative speed=" << m.touchdown_rel_speed << " m/s, aborts=" << m.aborts
                << "\n";
    } else {
      std::cout << "no touchdown (aborts=" << m.aborts << ")\n";
    }
  }
  if (!out_dir.empty()) {
    std::cout << "wrote " << out_dir << "/log.csv and " << out_dir << "/metrics.csv\n";
  }
  return 0;
}

int compare_command(const std::vector<std::string>& config_paths, int seeds,
                    const std::vector<std::string>& overrides, const std::string& out_dir) {
  std::vector<usvwave::ScenarioConfig> configs;
  std::vector<std::string> labels;
  for (const auto& path : config_paths) {
    configs.push_back(usvwave::load_scenario_config(path, overrides));
    labels.push_back(usvwave::variant_name(configs.back().variant));
  }
  const auto summaries = usvwave::compare_variants(configs, labels, seeds);
  usvwave::print_comparison(summaries, std::cout);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory '" + out_dir + "'");
    }
    const std::string path = out_dir + "/comparison.csv";
    std::ofstream f(path, std::ios::binary);
    if (!f) {
      throw std::runtime_error("cannot open '" + path + "' for writing");
    }
    f << usvwave::comparison_to_csv(summaries);
    std::cout << "wrote " << path << "\n";
  }
  return 0;
}

int validate_command(const std::string& config_path, const std::vector<std::string>& overrides) {
  usvwave::load_scenario_config(config_path, overrides);
  std::cout << config_path << ": OK\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wave-aware USV state estimation, prediction, and UAV follow/landing harness"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  std::vector<std::string> overrides;
  std::vector<std::string> config_paths;
  bool plots = false;
  int seeds = 10;

  auto* run = app.add_subcommand("run", "Run one scenario and report metrics");
  run->add_option("config", config_path, "Scenario config JSON")->required();
  run->add_option("--set", overrides, "Override a config key, e.g. --set planner.rate_hz=25");
  run->add_option("--out", out_dir, "Output directory for log.csv/metrics.csv");
  run->add_flag("--plots", plots, "Also emit SVG state plots (requires --out)");

  auto* compare = app.add_subcommand("compare", "Run several scenario variants over paired seeds");
  compare->add_option("configs", config_paths, "Scenario config JSONs")->required()
      ->expected(-2);
  compare->add_option("--seeds", seeds, "Number of paired seeds")->check(CLI::PositiveNumber);
  compare->add_option("--set", overrides, "Override applied to every config");
  compare->add_option("--out", out_dir, "Output directory for comparison.csv");

  auto* validate = app.add_subcommand("validate", "Parse and validate a scenario config");
  validate->add_option("config", config_path, "Scenario config JSON")->required();
  validate->add_option("--set", overrides, "Override a config key before validating");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(config_path, overrides, out_dir, plots);
    }
    if (compare->parsed()) {
      return compare_command(config_paths, seeds, overrides, out_dir);
    }
    if (validate->parsed()) {
      return validate_command(config_path, overrides);
    }
  } catch (const usvwave::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const usvwave::NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kExitRuntime;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    if (what.find("cannot open") != std::string::npos ||
        what.find("cannot create") != std::string::npos) {
      std::cerr << "io error: " << what << "\n";
      return kExitIo;
    }
    std::cerr << "error: " << what << "\n";
    return kExitRuntime;
  }
  return 0;
}
