#include "usvwave/harness.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "usvwave/scenario.hpp"

namespace usvwave {

namespace {

struct Series {
  std::string label;
  std::string color;
  std::vector<double> t;
  std::vector<double> y;
};

// Minimal SVG line chart; enough for eyeballing truth vs estimate traces.
void write_svg_chart(const std::string& path, const std::string& title,
                     const std::vector<Series>& series) {
  double t_min = 0.0, t_max = 1.0, y_min = 0.0, y_max = 1.0;
  bool first = true;
  for (const auto& s : series) {
    for (size_t i = 0; i < s.t.size(); ++i) {
      if (!std::isfinite(s.y[i])) continue;
      if (first) {
        t_min = t_max = s.t[i];
        y_min = y_max = s.y[i];
        first = false;
      }
      t_min = std::min(t_min, s.t[i]);
      t_max = std::max(t_max, s.t[i]);
      y_min = std::min(y_min, s.y[i]);
      y_max = std::max(y_max, s.y[i]);
    }
  }
  if (t_max <= t_min) t_max = t_min + 1.0;
  if (y_max <= y_min) y_max = y_min + 1.0;
  const double pad = 0.05 * (y_max - y_min);
  y_min -= pad;
  y_max += pad;

  const int width = 900, height = 300, margin = 45;
  auto px = [&](double t) {
    return margin + (t - t_min) / (t_max - t_min) * (width - 2 * margin);
  };
  auto py = [&](double y) {
    return height - margin - (y - y_min) / (y_max - y_min) * (height - 2 * margin);
  };

  std::ostringstream svg;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
      << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << width / 2 << "' y='18' text-anchor='middle' font-size='14'>" << title
      << "</text>\n";
  svg << "<line x1='" << margin << "' y1='" << height - margin << "' x2='" << width - margin
      << "' y2='" << height - margin << "' stroke='black'/>\n";
  svg << "<line x1='" << margin << "' y1='" << margin << "' x2='" << margin << "' y2='"
      << height - margin << "' stroke='black'/>\n";
  int legend_x = margin + 10;
  for (const auto& s : series) {
    svg << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1' points='";
    const size_t stride = std::max<size_t>(1, s.t.size() / 2000);
    bool pen_down = false;
    for (size_t i = 0; i < s.t.size(); i += stride) {
      if (!std::isfinite(s.y[i])) {
        pen_down = false;
        continue;
      }
      (void)pen_down;
      svg << px(s.t[i]) << ',' << py(s.y[i]) << ' ';
      pen_down = true;
    }
    svg << "'/>\n";
    svg << "<text x='" << legend_x << "' y='32' font-size='11' fill='" << s.color << "'>"
        << s.label << "</text>\n";
    legend_x += static_cast<int>(s.label.size()) * 7 + 24;
  }
  svg << "</svg>\n";

  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("plots: cannot open '" + path + "' for writing");
  }
  f << svg.str();
}

void plot_group(const RunLog& log, const std::string& out_dir, const std::string& name,
                const char* const labels[3], int truth_base, int est_base, bool pose_group) {
  for (int axis = 0; axis < 3; ++axis) {
    Series truth{std::string("truth ") + labels[axis], "black", {}, {}};
    Series est{std::string("est ") + labels[axis], "#d62728", {}, {}};
    Series pred{std::string("pred ") + labels[axis], "#1f77b4", {}, {}};
    for (const auto& row : log.rows) {
      truth.t.push_back(row.t);
      est.t.push_back(row.t);
      if (pose_group) {
        truth.y.push_back(row.truth_pose[truth_base + axis]);
        est.y.push_back(row.est_pose[est_base + axis]);
        if (std::isfinite(row.pred_target_t)) {
          pred.t.push_back(row.pred_target_t);
          pred.y.push_back(row.pred_pose[truth_base + axis]);
        }
      } else {
        truth.y.push_back(row.truth_vel[truth_base + axis]);
        est.y.push_back(row.est_vel[est_base + axis]);
      }
    }
    std::vector<Series> series = {truth, est};
    if (pose_group && !pred.t.empty()) {
      series.push_back(pred);
    }
    write_svg_chart(out_dir + "/" + name + "_" + labels[axis] + ".svg",
                    name + " " + labels[axis], series);
  }
}

}  // namespace

void write_state_plots(const RunLog& log, const std::string& out_dir) {
  static const char* pos[3] = {"x", "y", "z"};
  static const char* ori[3] = {"phi", "theta", "psi"};
  static const char* lin[3] = {"u", "v", "w"};
  static const char* ang[3] = {"p", "q", "r"};
  plot_group(log, out_dir, "position", pos, 0, 0, true);
  plot_group(log, out_dir, "orientation", ori, 3, 3, true);
  plot_group(log, out_dir, "linear_velocity", lin, 0, 0, false);
  plot_group(log, out_dir, "angular_velocity", ang, 3, 3, false);
}

RunArtifacts run_and_report(const ScenarioConfig& cfg, const std::string& out_dir, bool plots) {
  RunArtifacts artifacts;
  artifacts.log = run_scenario(cfg);
  artifacts.metrics = compute_metrics(artifacts.log, cfg.metrics.warmup_s);
  if (!out_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(out_dir, ec);
    if (ec) {
      throw std::runtime_error("cannot create output directory '" + out_dir + "': " +
                               ec.message());
    }
    write_runlog_csv(artifacts.log, out_dir + "/log.csv");
    write_metrics_csv(artifacts.metrics, out_dir + "/metrics.csv");
    if (plots) {
      write_state_plots(artifacts.log, out_dir);
    }
  }
  return artifacts;
}

std::vector<VariantSummary> compare_variants(const std::vector<ScenarioConfig>& configs,
                                             const std::vector<std::string>& labels,
                                             int n_seeds, unsigned long base_seed) {
  std::vector<VariantSummary> summaries;
  for (size_t i = 0; i < configs.size(); ++i) {
    std::vector<MetricsReport> runs;
    for (int s = 0; s < n_seeds; ++s) {
      ScenarioConfig cfg = configs[i];
      cfg.seed = base_seed + static_cast<unsigned long>(s);
      runs.push_back(run_and_report(cfg).metrics);
    }
    summaries.push_back(summarize_runs(labels[i], runs));
  }
  return summaries;
}

}  // namespace usvwave
