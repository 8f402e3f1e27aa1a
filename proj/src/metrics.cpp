#include "usvwave/metrics.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace usvwave {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string fmt(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

}  // namespace

double rmse(const std::vector<Eigen::Vector3d>& errors, bool angular) {
  if (errors.empty()) {
    throw std::invalid_argument("rmse: empty error series");
  }
  double sum = 0.0;
  for (const auto& e : errors) {
    for (int i = 0; i < 3; ++i) {
      const double v = angular ? wrap_angle(e[i]) : e[i];
      sum += v * v;
    }
  }
  return std::sqrt(sum / (3.0 * static_cast<double>(errors.size())));
}

MetricsReport compute_metrics(const RunLog& log, double warmup_s) {
  MetricsReport report;
  std::vector<Eigen::Vector3d> pos, ori, linvel, angvel, pred_pos, pred_ori;
  report.touchdown_rel_speed = kNan;
  report.touchdown_time = kNan;

  int prev_phase = -1;
  for (size_t k = 0; k < log.rows.size(); ++k) {
    const RunLogRow& row = log.rows[k];
    if (row.t > warmup_s) {
      pos.push_back(row.truth_pose.head<3>() - row.est_pose.head<3>());
      ori.push_back(row.truth_pose.tail<3>() - row.est_pose.tail<3>());
      linvel.push_back(row.truth_vel.head<3>() - row.est_vel.head<3>());
      angvel.push_back(row.truth_vel.tail<3>() - row.est_vel.tail<3>());

      if (std::isfinite(row.pred_target_t)) {
        const long target = std::lround(row.pred_target_t / log.dt) - 1;
        if (target >= 0 && target < static_cast<long>(log.rows.size())) {
          const RunLogRow& future = log.rows[target];
          pred_pos.push_back(future.truth_pose.head<3>() - row.pred_pose.head<3>());
          pred_ori.push_back(future.truth_pose.tail<3>() - row.pred_pose.tail<3>());
        }
      }
    }
    if (std::isfinite(row.touchdown_rel_speed)) {
      report.touchdown = true;
      report.touchdown_rel_speed = row.touchdown_rel_speed;
      report.touchdown_time = row.t;
    }
    if (row.phase == 4 && prev_phase != 4) {  // LandingPhase::Aborted
      ++report.aborts;
    }
    prev_phase = row.phase;
  }

  report.est_samples = static_cast<long>(pos.size());
  report.pred_samples = static_cast<long>(pred_pos.size());
  report.est_pos = pos.empty() ? kNan : rmse(pos);
  report.est_ori = ori.empty() ? kNan : rmse(ori, /*angular=*/true);
  report.est_linvel = linvel.empty() ? kNan : rmse(linvel);
  report.est_angvel = angvel.empty() ? kNan : rmse(angvel);
  report.pred_pos = pred_pos.empty() ? kNan : rmse(pred_pos);
  report.pred_ori = pred_ori.empty() ? kNan : rmse(pred_ori, /*angular=*/true);
  return report;
}

const char* const kMetricsSchema = "# usvwave-metrics v1";

std::string metrics_to_csv(const MetricsReport& r) {
  std::string out;
  out += kMetricsSchema;
  out += "\nmetric,value\n";
  out += "rmse_est_pos," + fmt(r.est_pos) + "\n";
  out += "rmse_est_ori," + fmt(r.est_ori) + "\n";
  out += "rmse_est_linvel," + fmt(r.est_linvel) + "\n";
  out += "rmse_est_angvel," + fmt(r.est_angvel) + "\n";
  out += "rmse_pred_pos," + fmt(r.pred_pos) + "\n";
  out += "rmse_pred_ori," + fmt(r.pred_ori) + "\n";
  out += "est_samples," + std::to_string(r.est_samples) + "\n";
  out += "pred_samples," + std::to_string(r.pred_samples) + "\n";
  out += "touchdown," + std::string(r.touchdown ? "1" : "0") + "\n";
  out += "touchdown_rel_speed," + fmt(r.touchdown_rel_speed) + "\n";
  out += "touchdown_time," + fmt(r.touchdown_time) + "\n";
  out += "aborts," + std::to_string(r.aborts) + "\n";
  return out;
}

void write_metrics_csv(const MetricsReport& report, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) {
    throw std::runtime_error("metrics: cannot open '" + path + "' for writing");
  }
  f << metrics_to_csv(report);
}

VariantSummary summarize_runs(const std::string& label, const std::vector<MetricsReport>& runs) {
  VariantSummary s;
  s.label = label;
  s.seeds = static_cast<int>(runs.size());
  if (runs.empty()) {
    return s;
  }

  auto accumulate = [&runs](auto member) {
    double mean = 0.0;
    for (const auto& r : runs) {
      mean += r.*member;
    }
    mean /= static_cast<double>(runs.size());
    double var = 0.0;
    for (const auto& r : runs) {
      var += (r.*member - mean) * (r.*member - mean);
    }
    const double sd =
        runs.size() > 1 ? std::sqrt(var / static_cast<double>(runs.size() - 1)) : 0.0;
    return std::pair<double, double>(mean, sd);
  };

  std::tie(s.mean.est_pos, s.stddev.est_pos) = accumulate(&MetricsReport::est_pos);
  std::tie(s.mean.est_ori, s.stddev.est_ori) = accumulate(&MetricsReport::est_ori);
  std::tie(s.mean.est_linvel, s.stddev.est_linvel) = accumulate(&MetricsReport::est_linvel);
  std::tie(s.mean.est_angvel, s.stddev.est_angvel) = accumulate(&MetricsReport::est_angvel);
  std::tie(s.mean.pred_pos, s.stddev.pred_pos) = accumulate(&MetricsReport::pred_pos);
  std::tie(s.mean.pred_ori, s.stddev.pred_ori) = accumulate(&MetricsReport::pred_ori);
  for (const auto& r : runs) {
    if (r.touchdown) {
      ++s.touchdown_count;
    }
  }
  return s;
}

std::string comparison_to_csv(const std::vector<VariantSummary>& summaries) {
  std::string out = "# usvwave-comparison v1\n";
  out += "variant,seeds,rmse_pos_mean,rmse_pos_std,rmse_ori_mean,rmse_ori_std,"
         "rmse_linvel_mean,rmse_linvel_std,rmse_angvel_mean,rmse_angvel_std,"
         "rmse_pred_pos_mean,rmse_pred_pos_std,rmse_pred_ori_mean,rmse_pred_ori_std,"
         "touchdowns\n";
  for (const auto& s : summaries) {
    out += s.label + ',' + std::to_string(s.seeds);
    out += ',' + fmt(s.mean.est_pos) + ',' + fmt(s.stddev.est_pos);
    out += ',' + fmt(s.mean.est_ori) + ',' + fmt(s.stddev.est_ori);
    out += ',' + fmt(s.mean.est_linvel) + ',' + fmt(s.stddev.est_linvel);
    out += ',' + fmt(s.mean.est_angvel) + ',' + fmt(s.stddev.est_angvel);
    out += ',' + fmt(s.mean.pred_pos) + ',' + fmt(s.stddev.pred_pos);
    out += ',' + fmt(s.mean.pred_ori) + ',' + fmt(s.stddev.pred_ori);
    out += ',' + std::to_string(s.touchdown_count) + '\n';
  }
  return out;
}

void print_comparison(const std::vector<VariantSummary>& summaries, std::ostream& os) {
  os << std::left << std::setw(16) << "variant" << std::right << std::setw(7) << "seeds"
     << std::setw(22) << "pos RMSE [m]" << std::setw(22) << "ori RMSE [rad]" << std::setw(22)
     << "linvel RMSE [m/s]" << std::setw(22) << "angvel RMSE [rad/s]" << "\n";
  os << std::string(111, '-') << "\n";
  auto cell = [](double mean, double sd) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(4) << mean << " +- " << sd;
    return ss.str();
  };
  for (const auto& s : summaries) {
    os << std::left << std::setw(16) << s.label << std::right << std::setw(7) << s.seeds
       << std::setw(22) << cell(s.mean.est_pos, s.stddev.est_pos) << std::setw(22)
       << cell(s.mean.est_ori, s.stddev.est_ori) << std::setw(22)
       << cell(s.mean.est_linvel, s.stddev.est_linvel) << std::setw(22)
       << cell(s.mean.est_angvel, s.stddev.est_angvel) << "\n";
  }
}

}  // namespace usvwave
