#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccrsim/channel.hpp"
#include "ccrsim/config.hpp"
#include "ccrsim/connectivity.hpp"
#include "ccrsim/radio.hpp"
#include "ccrsim/scenario.hpp"
#include "ccrsim/trajectory.hpp"

namespace ccrsim {

/// dB value used for absent or zero gains and interference.
inline constexpr double kGainFloorDb = -160.0;

class ActionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

class EnvStateError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// One slot's decision: V2I channel reused by each V2V link, power level index
/// per link and a phase index per RIS element.
struct Action {
    std::vector<int> channel;
    std::vector<int> power_level;
    std::vector<int> ris_phases;

    friend bool operator==(const Action&, const Action&) = default;
};

/// Length of the continuous action vector: D channels + D powers + F phases.
int raw_action_size(const ScenarioConfig& config);

/// Maps each entry of `raw` (clamped to [-1, 1]) affinely onto its discrete
/// range and rounds half away from zero, then resolves channel collisions.
Action decode_action(std::span<const double> raw, const ScenarioConfig& config);

/// Lower link index keeps a contested channel; later links move to the
/// lowest free channel.
void resolve_channel_collisions(std::vector<int>& channel, int n_channels);

/// Throws ActionError naming the violated constraint: binary reuse with at
/// most one link per channel, power within the level set, phases within Q.
void check_action(const Action& action, const ScenarioConfig& config);

enum class EdgeType { V2V, V2I, Ris, Sense };

std::string to_string(EdgeType t);

struct Edge {
    int src = 0;
    int dst = 0;
    EdgeType type = EdgeType::V2I;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct VehicleNode {
    double x = 0.0;
    double y = 0.0;
    std::vector<double> v2v_gain_db;        // per neighbour n, floor when not a link
    std::vector<double> remaining_bits;     // per neighbour n, 0 when not a link
    std::vector<double> interference_dbm;   // per neighbour n, previous slot, floor when absent
    bool is_target = false;
    double echo_gain_db = kGainFloorDb;     // floor for non-targets

    /// [x, y, gains..., remaining..., interference..., O, echo]
    std::vector<double> features() const;
};

struct BsNode {
    double x = 0.0;
    double y = 0.0;
    std::vector<double> v2i_gain_db;  // per vehicle

    std::vector<double> features() const;
};

struct RisNode {
    double x = 0.0;
    double y = 0.0;
    std::vector<int> phases;

    std::vector<double> features() const;
};

/// Heterogeneous state graph. Node order: vehicles 0..V-1, BS at V, RIS at V+1.
struct Observation {
    int slot = 0;
    std::vector<VehicleNode> vehicles;
    BsNode bs;
    RisNode ris;
    std::vector<Edge> edges;

    int node_count() const { return static_cast<int>(vehicles.size()) + 2; }
    int bs_index() const { return static_cast<int>(vehicles.size()); }
    int ris_index() const { return static_cast<int>(vehicles.size()) + 1; }
};

struct StepInfo {
    int slot = 0;
    SlotLinkMetrics metrics;
    ThresholdOutcome thresholds;
    std::vector<bool> psi;                   // per vehicle after this slot
    int psi_vehicle_count = 0;               // non-targets with psi = 1
    int psi_target_count = 0;                // targets with psi = 1
    std::vector<double> remaining_fraction;  // per link, K_d / K
    std::vector<bool> delivered;             // per link
};

struct StepResult {
    Observation observation;
    double reward = 0.0;
    bool done = false;
    StepInfo info;
};

/// Discrete-time RIS-assisted V2X environment. One instance runs one episode
/// at a time: reset, then `episode_slots` steps. Copying an Env snapshots it.
class Env {
public:
    explicit Env(ScenarioConfig config);

    /// Rebuilds the scenario from `seed`, draws the first slot's channels and
    /// returns the initial observation (RIS phases all index 0).
    Observation reset(std::uint64_t seed);
    Observation reset(const ScenarioConfig& config, std::uint64_t seed);

    /// Applies the action to the current slot, updates trackers, moves the
    /// vehicles and draws the next slot's channels.
    StepResult step(const Action& action);

    /// Reward `action` would earn in the current slot, against the slot's
    /// already-drawn randomness. Does not change state.
    double preview_reward(const Action& action) const;

    /// Composite gains of the current slot for a given phase vector.
    ChannelRealization gains_for(std::span<const int> phases) const;

    /// preview_reward with gains already realised for action.ris_phases.
    double preview_reward(const Action& action, const ChannelRealization& gains) const;

    const ScenarioConfig& config() const { return config_; }
    bool initialized() const { return initialized_; }
    bool done() const { return slot_ >= config_.episode_slots; }
    int slot() const { return slot_; }
    const std::vector<VehicleState>& vehicles() const { return vehicles_; }
    const std::vector<V2VLink>& links() const { return links_; }
    const RISState& ris_state() const { return ris_; }
    const SlotDraws& current_draws() const { return draws_; }
    const std::vector<PayloadTracker>& payloads() const { return payloads_; }
    const std::vector<WindowTracker>& windows() const { return windows_; }

    Observation observe() const;

    const EpisodeTrace& trace() const { return trace_; }
    /// Per-episode CCR figures; valid once done().
    EpisodeMetrics episode_metrics() const;

private:
    struct SlotOutcome {
        SlotLinkMetrics metrics;
        ThresholdOutcome thresholds;
        std::vector<WindowTracker> windows;
        std::vector<PayloadTracker> payloads;
        double reward = 0.0;
    };

    SlotOutcome evaluate(const Action& action, const ChannelRealization& gains) const;
    LinkPowers powers_for(const Action& action) const;
    void require_ready() const;
    void place_vehicles(std::uint64_t seed);
    void advance_mobility();

    ScenarioConfig config_;
    bool initialized_ = false;
    int slot_ = 0;

    std::optional<RoadGrid> grid_;
    TrajectorySet playback_;
    std::optional<TrajectorySet> trajectory_pool_;
    std::string trajectory_pool_key_;

    Rng mobility_rng_{0};
    Rng channel_rng_{0};

    std::vector<VehicleState> vehicles_;
    std::vector<V2VLink> links_;
    RISState ris_;
    SlotDraws draws_;
    std::vector<WindowTracker> windows_;
    std::vector<PayloadTracker> payloads_;
    std::vector<double> prev_interference_w_;
    EpisodeTrace trace_;
};

}  // namespace ccrsim
