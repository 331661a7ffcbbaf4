#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccrsim/env.hpp"
#include "ccrsim/rng.hpp"

namespace ccrsim {

enum class PolicyKind { Random, RandomRis, Greedy };

std::string to_string(PolicyKind k);
/// Accepts "random", "random_ris", "greedy".
PolicyKind parse_policy_kind(const std::string& s);

struct GreedyOptions {
    /// Phase vectors tried per slot: zero, previous, then random up to the budget.
    int phase_budget = 64;
    /// Joint action spaces at or below this size are searched exhaustively.
    std::uint64_t exhaustive_limit = 4096;
    /// Full coordinate-ascent sweeps over the links.
    int sweeps = 2;
};

struct PolicySpec {
    PolicyKind kind = PolicyKind::Random;
    GreedyOptions greedy;
};

/// Uniform indices per field; channel collisions resolved as in decode_action.
Action random_action(const ScenarioConfig& config, Rng& rng);

/// Uniform phase index per element.
std::vector<int> random_phases(const ScenarioConfig& config, Rng& rng);

/// Replaces the phases with uniform draws; channel and power are untouched.
Action random_ris_overlay(Action action, const ScenarioConfig& config, Rng& rng);

/// Number of feasible discrete actions, saturating at UINT64_MAX.
std::uint64_t joint_action_count(const ScenarioConfig& config);

struct GreedyResult {
    Action action;
    double value = 0.0;
    /// Preview reward of every candidate the search evaluated.
    std::vector<double> candidate_values;
    bool exhaustive = false;
};

/// One-step lookahead on the current slot's draws: exhaustive when the joint
/// space is small, otherwise coordinate ascent over (channel, power) per link
/// followed by a phase search and a per-element phase sweep.
GreedyResult greedy_action(const Env& env, const GreedyOptions& options, Rng& rng,
                           const Action* previous = nullptr, bool search_phases = true);

/// Stateful wrapper used by the harness.
class Policy {
public:
    Policy(PolicySpec spec, std::uint64_t seed);

    Action act(const Env& env);
    const PolicySpec& spec() const { return spec_; }

private:
    PolicySpec spec_;
    Rng rng_;
    std::optional<Action> previous_;
};

}  // namespace ccrsim
