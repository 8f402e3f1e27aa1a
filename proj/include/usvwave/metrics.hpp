#ifndef USVWAVE_METRICS_HPP
#define USVWAVE_METRICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "usvwave/runlog.hpp"

namespace usvwave {

/// Pooled RMSE over all components of every error vector in the series.
/// Angular errors are wrapped to (-pi, pi] before squaring. Throws
/// std::invalid_argument on an empty series.
double rmse(const std::vector<Eigen::Vector3d>& errors, bool angular = false);

/// RMSE per state group for estimated and predicted states, plus landing
/// outcomes, all derived from the run log alone.
struct MetricsReport {
  double est_pos = 0.0;      // (x, y, z), m
  double est_ori = 0.0;      // (phi, theta, psi), rad
  double est_linvel = 0.0;   // (u, v, w), m/s
  double est_angvel = 0.0;   // (p, q, r), rad/s
  double pred_pos = 0.0;     // horizon-end prediction error, m
  double pred_ori = 0.0;     // rad
  long est_samples = 0;
  long pred_samples = 0;
  bool touchdown = false;
  double touchdown_rel_speed = 0.0;  // NaN when no touchdown
  double touchdown_time = 0.0;       // NaN when no touchdown
  int aborts = 0;
};

/// Compute the report from a log. Rows with t <= warmup_s are excluded from
/// the RMSE pools (landing outcomes always use the whole log). Groups with
/// no samples come out as NaN.
MetricsReport compute_metrics(const RunLog& log, double warmup_s);

/// Version tag written as the first line of metrics.csv.
extern const char* const kMetricsSchema;

/// key,value CSV with shortest round-trip number formatting.
std::string metrics_to_csv(const MetricsReport& report);
void write_metrics_csv(const MetricsReport& report, const std::string& path);

/// Across-seed summary of one variant.
struct VariantSummary {
  std::string label;
  int seeds = 0;
  MetricsReport mean;
  MetricsReport stddev;
  int touchdown_count = 0;
};

VariantSummary summarize_runs(const std::string& label, const std::vector<MetricsReport>& runs);

/// Comparison table over variants, one row per variant.
std::string comparison_to_csv(const std::vector<VariantSummary>& summaries);
void print_comparison(const std::vector<VariantSummary>& summaries, std::ostream& os);

}  // namespace usvwave

#endif  // USVWAVE_METRICS_HPP
