#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <fstream>
#include <sstream>

#include "ccrsim/harness/metrics_csv.hpp"
#include "ccrsim/rng.hpp"

using namespace ccrsim;
using namespace ccrsim::harness;

namespace {

std::vector<PointReport> two_by_two() {
    std::vector<PointReport> pts(2);
    pts[0].var = pts[1].var = SweepVar::PayloadK;
    pts[0].value = "1";
    pts[1].value = "8";
    Rng rng(5);
    for (auto& p : pts) {
        for (int r = 0; r < 2; ++r) {
            const double a = rng.uniform(), b = rng.uniform();
            p.report.add({a, b, a + b, rng.uniform() * 3.0, rng.normal()});
        }
    }
    return pts;
}

}  // namespace

TEST_CASE("header is exact") {
    std::ostringstream out;
    write_metrics_csv(out, {});
    CHECK(out.str() == "sweep_var,sweep_value,run,ccr_v2i,ccr_v2v,ccr_total,objective,mean_reward\n");
}

TEST_CASE("two points by two runs give four data rows and two aggregates") {
    std::ostringstream out;
    write_metrics_csv(out, two_by_two());
    std::istringstream in(out.str());
    const auto rows = read_metrics_csv(in);
    REQUIRE(rows.size() == 6);
    int data = 0, agg = 0;
    for (const auto& r : rows) (r.run == "mean" ? agg : data) += 1;
    CHECK(data == 4);
    CHECK(agg == 2);
    CHECK(rows[0].sweep_var == "payload_K");
    CHECK(rows[0].sweep_value == "1");
}

TEST_CASE("values parse back exactly") {
    const auto pts = two_by_two();
    std::ostringstream out;
    write_metrics_csv(out, pts);
    std::istringstream in(out.str());
    const auto rows = read_metrics_csv(in);
    for (int p = 0; p < 2; ++p) {
        for (int r = 0; r < 2; ++r) {
            const auto& want = pts[p].report.episodes()[r];
            const auto& got = rows[p * 2 + r].metrics;
            CHECK(got.ccr_v2i == want.ccr_v2i);
            CHECK(got.ccr_v2v == want.ccr_v2v);
            CHECK(got.ccr_total == want.ccr_total);
            CHECK(got.objective == want.objective);
            CHECK(got.mean_reward == want.mean_reward);
        }
        CHECK(rows[4 + p].metrics.ccr_total == pts[p].report.ccr_total().mean);
    }
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
        const double x = rng.normal() * std::pow(10.0, rng.uniform(-300.0, 300.0));
        REQUIRE(std::strtod(format_double(x).c_str(), nullptr) == x);
    }
}

TEST_CASE("summary carries mean and std per point") {
    std::ostringstream out;
    write_summary_csv(out, two_by_two());
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == kSummaryCsvHeader);
    int rows = 0;
    while (std::getline(in, line)) {
        ++rows;
        CHECK(std::count(line.begin(), line.end(), ',') == 10);
    }
    CHECK(rows == 2);
}

TEST_CASE("unwritable path is an error") {
    CHECK_THROWS(write_metrics_csv("/nonexistent-dir/x/metrics.csv", two_by_two()));
}

TEST_CASE("bad header is rejected on read") {
    std::istringstream in("a,b,c\n");
    CHECK_THROWS(read_metrics_csv(in));
}
