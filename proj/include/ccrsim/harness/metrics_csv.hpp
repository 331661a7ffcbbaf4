#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "ccrsim/harness/experiment.hpp"

namespace ccrsim::harness {

inline constexpr const char* kMetricsCsvHeader =
    "sweep_var,sweep_value,run,ccr_v2i,ccr_v2v,ccr_total,objective,mean_reward";

inline constexpr const char* kSummaryCsvHeader =
    "sweep_var,sweep_value,runs,ccr_v2i_mean,ccr_v2i_std,ccr_v2v_mean,ccr_v2v_std,"
    "ccr_total_mean,ccr_total_std,objective_mean,objective_std";

/// Shortest-safe decimal text ("%.17g") that parses back to the same double.
std::string format_double(double x);

/// One row per (point, run) followed by one row per point with run = "mean".
void write_metrics_csv(std::ostream& out, const std::vector<PointReport>& points);
void write_metrics_csv(const std::string& path, const std::vector<PointReport>& points);

void write_summary_csv(std::ostream& out, const std::vector<PointReport>& points);
void write_summary_csv(const std::string& path, const std::vector<PointReport>& points);

struct MetricsRow {
    std::string sweep_var;
    std::string sweep_value;
    std::string run;
    EpisodeMetrics metrics;
};

/// Parses a metrics CSV written by write_metrics_csv (header checked).
std::vector<MetricsRow> read_metrics_csv(std::istream& in);

}  // namespace ccrsim::harness
