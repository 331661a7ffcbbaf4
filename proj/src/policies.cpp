#include "ccrsim/policies.hpp"

#include <algorithm>
#include <limits>

namespace ccrsim {

std::string to_string(PolicyKind k) {
    switch (k) {
        case PolicyKind::Random: return "random";
        case PolicyKind::RandomRis: return "random_ris";
        case PolicyKind::Greedy: return "greedy";
    }
    return "random";
}

PolicyKind parse_policy_kind(const std::string& s) {
    if (s == "random") return PolicyKind::Random;
    if (s == "random_ris") return PolicyKind::RandomRis;
    if (s == "greedy") return PolicyKind::Greedy;
    throw ConfigError("policy", "unknown policy '" + s + "' (expected random, random_ris or greedy)");
}

Action random_action(const ScenarioConfig& config, Rng& rng) {
    // Draw indices directly: rounding a uniform raw vector would halve the
    // weight of the two end bins.
    const auto links = static_cast<std::size_t>(config.v2v_link_count());
    const auto levels = static_cast<std::uint64_t>(config.v2v_power_levels_dbm.size());
    Action a;
    a.channel.resize(links);
    a.power_level.resize(links);
    for (std::size_t d = 0; d < links; ++d) {
        a.channel[d] = config.n_vehicles > 0 ? rng.uniform_int(config.n_vehicles) : 0;
        a.power_level[d] = static_cast<int>(rng.uniform_index(levels));
    }
    a.ris_phases = random_phases(config, rng);
    resolve_channel_collisions(a.channel, config.n_vehicles);
    return a;
}

std::vector<int> random_phases(const ScenarioConfig& config, Rng& rng) {
    std::vector<int> q(static_cast<std::size_t>(config.ris_elements));
    for (auto& x : q) x = static_cast<int>(rng.uniform_index(static_cast<std::uint64_t>(config.phase_levels)));
    return q;
}

Action random_ris_overlay(Action action, const ScenarioConfig& config, Rng& rng) {
    action.ris_phases = random_phases(config, rng);
    return action;
}

namespace {

constexpr std::uint64_t kSaturated = std::numeric_limits<std::uint64_t>::max();

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
    if (a == 0 || b == 0) return 0;
    if (a > kSaturated / b) return kSaturated;
    return a * b;
}

// Mixed-radix counter; returns false once it wraps.
bool increment(std::vector<int>& digits, int radix) {
    for (auto& d : digits) {
        if (++d < radix) return true;
        d = 0;
    }
    return false;
}

bool next_injection(std::vector<int>& channel, int n_channels) {
    // Odometer over channel tuples, skipping ones with repeats.
    while (increment(channel, n_channels)) {
        std::vector<bool> seen(static_cast<std::size_t>(n_channels), false);
        bool ok = true;
        for (int c : channel) {
            if (seen[static_cast<std::size_t>(c)]) {
                ok = false;
                break;
            }
            seen[static_cast<std::size_t>(c)] = true;
        }
        if (ok) return true;
    }
    return false;
}

Action baseline_action(const ScenarioConfig& config) {
    const auto links = static_cast<std::size_t>(config.v2v_link_count());
    Action a;
    a.channel.resize(links);
    for (std::size_t d = 0; d < links; ++d) a.channel[d] = static_cast<int>(d);
    a.power_level.assign(links, static_cast<int>(config.v2v_power_levels_dbm.size()) - 1);
    a.ris_phases.assign(static_cast<std::size_t>(config.ris_elements), 0);
    return a;
}

struct Search {
    const Env& env;
    GreedyResult& result;

    double score(const Action& a, const ChannelRealization& gains) {
        const double v = env.preview_reward(a, gains);
        result.candidate_values.push_back(v);
        if (result.candidate_values.size() == 1 || v > result.value) {
            result.value = v;
            result.action = a;
        }
        return v;
    }
};

GreedyResult exhaustive(const Env& env) {
    const auto& config = env.config();
    const auto links = static_cast<std::size_t>(config.v2v_link_count());
    const int levels = static_cast<int>(config.v2v_power_levels_dbm.size());
    GreedyResult result;
    result.exhaustive = true;
    Search search{env, result};

    Action a = baseline_action(config);
    std::vector<int> phases(static_cast<std::size_t>(config.ris_elements), 0);
    do {
        a.ris_phases = phases;
        const ChannelRealization gains = env.gains_for(phases);
        std::vector<int> channel(links);
        for (std::size_t d = 0; d < links; ++d) channel[d] = static_cast<int>(d);
        do {
            a.channel = channel;
            std::vector<int> power(links, 0);
            do {
                a.power_level = power;
                search.score(a, gains);
            } while (increment(power, levels));
        } while (next_injection(channel, config.n_vehicles));
    } while (increment(phases, config.phase_levels));
    return result;
}

// Coordinate ascent over (channel, power) for each link with phases fixed.
void ascend_links(Search& search, Action& current, double& current_value, const ChannelRealization& gains,
                  int sweeps) {
    const auto& config = search.env.config();
    const int levels = static_cast<int>(config.v2v_power_levels_dbm.size());
    for (int s = 0; s < sweeps; ++s) {
        bool improved = false;
        for (std::size_t d = 0; d < current.channel.size(); ++d) {
            for (int c = 0; c < config.n_vehicles; ++c) {
                Action trial = current;
                const auto holder = std::find(trial.channel.begin(), trial.channel.end(), c);
                if (holder != trial.channel.end()) *holder = trial.channel[d];
                trial.channel[d] = c;
                for (int p = 0; p < levels; ++p) {
                    trial.power_level[d] = p;
                    const double v = search.score(trial, gains);
                    if (v > current_value) {
                        current_value = v;
                        current = trial;
                        improved = true;
                    }
                }
            }
        }
        if (!improved) break;
    }
}

}  // namespace

std::uint64_t joint_action_count(const ScenarioConfig& config) {
    const int links = config.v2v_link_count();
    std::uint64_t n = 1;
    for (int d = 0; d < links; ++d) n = sat_mul(n, static_cast<std::uint64_t>(config.n_vehicles - d));
    for (int d = 0; d < links; ++d) n = sat_mul(n, config.v2v_power_levels_dbm.size());
    for (int f = 0; f < config.ris_elements; ++f) n = sat_mul(n, static_cast<std::uint64_t>(config.phase_levels));
    return n;
}

GreedyResult greedy_action(const Env& env, const GreedyOptions& options, Rng& rng, const Action* previous,
                           bool search_phases) {
    const auto& config = env.config();
    if (search_phases && joint_action_count(config) <= options.exhaustive_limit) {
        return exhaustive(env);
    }

    GreedyResult result;
    Search search{env, result};

    Action current = previous ? *previous : baseline_action(config);
    check_action(current, config);
    ChannelRealization gains = env.gains_for(current.ris_phases);
    double value = search.score(current, gains);
    ascend_links(search, current, value, gains, options.sweeps);

    if (search_phases) {
        // Budget counts the zero vector and the previous slot's vector.
        std::vector<std::vector<int>> pool;
        pool.emplace_back(static_cast<std::size_t>(config.ris_elements), 0);
        if (previous) pool.push_back(previous->ris_phases);
        while (static_cast<int>(pool.size()) < std::max(options.phase_budget, 1)) {
            pool.push_back(random_phases(config, rng));
        }
        for (const auto& phases : pool) {
            Action trial = current;
            trial.ris_phases = phases;
            const double v = search.score(trial, env.gains_for(phases));
            if (v > value) {
                value = v;
                current = trial;
            }
        }
        for (int f = 0; f < config.ris_elements; ++f) {
            for (int q = 0; q < config.phase_levels; ++q) {
                Action trial = current;
                trial.ris_phases[static_cast<std::size_t>(f)] = q;
                const double v = search.score(trial, env.gains_for(trial.ris_phases));
                if (v > value) {
                    value = v;
                    current = trial;
                }
            }
        }
        gains = env.gains_for(current.ris_phases);
        ascend_links(search, current, value, gains, 1);
    }
    return result;
}

Policy::Policy(PolicySpec spec, std::uint64_t seed) : spec_(spec), rng_(derive_seed(seed, streams::kPolicy)) {}

Action Policy::act(const Env& env) {
    Action a;
    switch (spec_.kind) {
        case PolicyKind::Random:
            a = random_action(env.config(), rng_);
            break;
        case PolicyKind::RandomRis: {
            const Action start =
                random_ris_overlay(previous_.value_or(random_action(env.config(), rng_)), env.config(), rng_);
            a = greedy_action(env, spec_.greedy, rng_, &start, false).action;
            a.ris_phases = start.ris_phases;
            break;
        }
        case PolicyKind::Greedy:
            a = greedy_action(env, spec_.greedy, rng_, previous_ ? &*previous_ : nullptr, true).action;
            break;
    }
    previous_ = a;
    return a;
}

}  // namespace ccrsim
