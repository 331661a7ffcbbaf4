// Command-line front end: experiment sweeps, the environment server and the
// synthetic trajectory generator.

#include <cstdio>
#include <filesystem>
#include <iostream>

#include "CLI11.hpp"

#include "ccrsim/harness/config_io.hpp"
#include "ccrsim/harness/experiment.hpp"
#include "ccrsim/harness/metrics_csv.hpp"
#include "ccrsim/harness/server.hpp"
#include "ccrsim/trajectory.hpp"

namespace fs = std::filesystem;
using namespace ccrsim;

namespace {

ScenarioConfig config_or_default(const std::string& path) {
    return path.empty() ? ScenarioConfig{} : harness::load_config(path);
}

int simulate(const std::string& config_path, const std::string& policy, int runs, const std::string& sweep,
             const std::string& out_dir, std::optional<std::uint64_t> seed, int budget, bool quiet) {
    harness::ExperimentSpec spec;
    spec.base = config_or_default(config_path);
    spec.runs = runs;
    spec.policy.kind = parse_policy_kind(policy);
    spec.policy.greedy.phase_budget = budget;
    spec.base_seed = seed.value_or(spec.base.seed);
    if (!sweep.empty()) harness::parse_sweep(sweep, spec);

    const auto points = harness::run_eval(spec, [&](std::size_t point, int run) {
        if (!quiet && run == 0) {
            std::cerr << "point " << point + 1 << "/" << std::max<std::size_t>(spec.values.size(), 1) << '\n';
        }
    });

    fs::create_directories(out_dir);
    harness::write_metrics_csv((fs::path(out_dir) / "metrics.csv").string(), points);
    harness::write_summary_csv((fs::path(out_dir) / "summary.csv").string(), points);

    std::printf("%-20s %-12s %6s %10s %10s %10s\n", "sweep_var", "value", "runs", "ccr_v2i", "ccr_v2v", "ccr_total");
    for (const auto& p : points) {
        std::printf("%-20s %-12s %6zu %10.4f %10.4f %10.4f\n", harness::to_string(p.var).c_str(), p.value.c_str(),
                    p.report.runs(), p.report.ccr_v2i().mean, p.report.ccr_v2v().mean, p.report.ccr_total().mean);
    }
    return 0;
}

int serve(const std::string& transport, const std::string& config_path) {
    const ScenarioConfig defaults = config_or_default(config_path);
    if (transport == "stdio") return harness::serve_stream(std::cin, std::cout, defaults);
    if (transport.rfind("tcp:", 0) == 0) {
        const auto addr = harness::parse_tcp_address(transport.substr(4));
        return harness::serve_tcp(addr, defaults, [&](int port) {
            std::cerr << "listening on " << addr.host << ':' << port << std::endl;
        });
    }
    throw ConfigError("transport", "expected stdio or tcp:<host>:<port>");
}

int gen_trajectories(int vehicles, const std::string& out, std::uint64_t seed, const std::string& config_path) {
    const ScenarioConfig config = config_or_default(config_path);
    if (vehicles < 1) throw ConfigError("vehicles", "must be at least 1");
    write_trajectory_csv(out, generate_synthetic_trajectories(config, vehicles, seed));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"RIS-assisted ISAC V2X simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string policy = "random";
    int runs = 50;
    std::string sweep;
    std::string out_dir = "results";
    std::optional<std::uint64_t> seed;
    int budget = 64;
    bool quiet = false;
    auto* sim = app.add_subcommand("simulate", "Run an evaluation sweep and write metrics CSVs");
    sim->add_option("--config", config_path, "Scenario config JSON")->check(CLI::ExistingFile);
    sim->add_option("--policy", policy, "random | random_ris | greedy");
    sim->add_option("--runs", runs, "Episodes per sweep point")->check(CLI::PositiveNumber);
    sim->add_option("--sweep", sweep, "var=v1,v2,... (payload_K, v2i_power, window_N, n_vehicles, trajectory_scenario)");
    sim->add_option("--out", out_dir, "Output directory");
    sim->add_option("--seed", seed, "Base seed (run r uses seed + r)");
    sim->add_option("--greedy-budget", budget, "Phase vectors per slot for greedy")->check(CLI::PositiveNumber);
    sim->add_flag("--quiet", quiet, "No progress output");

    std::string transport = "stdio";
    auto* srv = app.add_subcommand("serve", "Serve the environment protocol");
    srv->add_option("--transport", transport, "stdio | tcp:<host>:<port>");
    srv->add_option("--config", config_path, "Default scenario config JSON")->check(CLI::ExistingFile);

    int vehicles = 50;
    std::string traj_out;
    std::uint64_t traj_seed = 1;
    auto* gen = app.add_subcommand("gen-trajectories", "Write a synthetic trajectory CSV");
    gen->add_option("--vehicles", vehicles, "Number of vehicles");
    gen->add_option("--out", traj_out, "Output CSV path")->required();
    gen->add_option("--seed", traj_seed, "Generator seed");
    gen->add_option("--config", config_path, "Scenario config JSON (region, speeds)")->check(CLI::ExistingFile);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*sim) return simulate(config_path, policy, runs, sweep, out_dir, seed, budget, quiet);
        if (*srv) return serve(transport, config_path);
        if (*gen) return gen_trajectories(vehicles, traj_out, traj_seed, config_path);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
