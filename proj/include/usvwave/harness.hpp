#ifndef USVWAVE_HARNESS_HPP
#define USVWAVE_HARNESS_HPP

#include <string>
#include <vector>

#include "usvwave/config.hpp"
#include "usvwave/metrics.hpp"
#include "usvwave/runlog.hpp"

namespace usvwave {

struct RunArtifacts {
  RunLog log;
  MetricsReport metrics;
};

/// Execute one scenario and compute its metrics. When out_dir is non-empty,
/// writes <out>/log.csv and <out>/metrics.csv (plus per-group SVG plots when
/// plots is set), creating the directory if needed.
RunArtifacts run_and_report(const ScenarioConfig& cfg, const std::string& out_dir = "",
                            bool plots = false);

/// Run each config over seeds base_seed..base_seed+n_seeds-1 (the same seed
/// list for every variant) and summarize per variant.
std::vector<VariantSummary> compare_variants(const std::vector<ScenarioConfig>& configs,
                                             const std::vector<std::string>& labels,
                                             int n_seeds, unsigned long base_seed = 1);

/// Truth-vs-estimate line plots per state group (predictions overlaid on the
/// pose groups). Writes position_*.svg, orientation_*.svg,
/// linear_velocity_*.svg, angular_velocity_*.svg into out_dir.
void write_state_plots(const RunLog& log, const std::string& out_dir);

}  // namespace usvwave

#endif  // USVWAVE_HARNESS_HPP
