#include "ccrsim/harness/metrics_csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace ccrsim::harness {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string metrics_fields(const EpisodeMetrics& m) {
    return format_double(m.ccr_v2i) + "," + format_double(m.ccr_v2v) + "," + format_double(m.ccr_total) + "," +
           format_double(m.objective) + "," + format_double(m.mean_reward);
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    return out;
}

void finish(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace

void write_metrics_csv(std::ostream& out, const std::vector<PointReport>& points) {
    out << kMetricsCsvHeader << '\n';
    for (const auto& p : points) {
        const std::string prefix = to_string(p.var) + "," + p.value + ",";
        const auto& eps = p.report.episodes();
        for (std::size_t r = 0; r < eps.size(); ++r) {
            out << prefix << r << ',' << metrics_fields(eps[r]) << '\n';
        }
    }
    for (const auto& p : points) {
        const auto& r = p.report;
        EpisodeMetrics mean{r.ccr_v2i().mean, r.ccr_v2v().mean, r.ccr_total().mean, r.objective().mean,
                            r.mean_reward().mean};
        out << to_string(p.var) << ',' << p.value << ",mean," << metrics_fields(mean) << '\n';
    }
}

void write_metrics_csv(const std::string& path, const std::vector<PointReport>& points) {
    auto out = open_for_write(path);
    write_metrics_csv(out, points);
    finish(out, path);
}

void write_summary_csv(std::ostream& out, const std::vector<PointReport>& points) {
    out << kSummaryCsvHeader << '\n';
    for (const auto& p : points) {
        const auto& r = p.report;
        out << to_string(p.var) << ',' << p.value << ',' << r.runs();
        for (const MeanStd& s : {r.ccr_v2i(), r.ccr_v2v(), r.ccr_total(), r.objective()}) {
            out << ',' << format_double(s.mean) << ',' << format_double(s.std);
        }
        out << '\n';
    }
}

void write_summary_csv(const std::string& path, const std::vector<PointReport>& points) {
    auto out = open_for_write(path);
    write_summary_csv(out, points);
    finish(out, path);
}

std::vector<MetricsRow> read_metrics_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line != kMetricsCsvHeader) {
        throw std::runtime_error("metrics CSV: unexpected header");
    }
    std::vector<MetricsRow> rows;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) f.push_back(cell);
        if (f.size() != 8) throw std::runtime_error("metrics CSV line " + std::to_string(line_no) + ": expected 8 fields");
        MetricsRow row{f[0], f[1], f[2], {}};
        double* dst[] = {&row.metrics.ccr_v2i, &row.metrics.ccr_v2v, &row.metrics.ccr_total, &row.metrics.objective,
                         &row.metrics.mean_reward};
        for (int k = 0; k < 5; ++k) {
            char* end = nullptr;
            *dst[k] = std::strtod(f[3 + k].c_str(), &end);
            if (end == f[3 + k].c_str() || *end != '\0') {
                throw std::runtime_error("metrics CSV line " + std::to_string(line_no) + ": bad number");
            }
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace ccrsim::harness
