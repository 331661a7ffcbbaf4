#include "ccrsim/env.hpp"

#include <algorithm>
#include <cmath>

namespace ccrsim {

int raw_action_size(const ScenarioConfig& config) {
    return 2 * config.v2v_link_count() + config.ris_elements;
}

namespace {

int to_index(double raw, int levels) {
    if (std::isnan(raw)) raw = -1.0;
    raw = std::clamp(raw, -1.0, 1.0);
    const double scaled = (raw + 1.0) * 0.5 * (levels - 1);
    return std::clamp(static_cast<int>(std::round(scaled)), 0, levels - 1);
}

double gain_db(double power_gain) {
    if (!(power_gain > 0.0)) return kGainFloorDb;
    return std::max(kGainFloorDb, 10.0 * std::log10(power_gain));
}

double power_dbm(double watt) {
    if (!(watt > 0.0)) return kGainFloorDb;
    return std::max(kGainFloorDb, watt_to_dbm(watt));
}

}  // namespace

void resolve_channel_collisions(std::vector<int>& channel, int n_channels) {
    if (static_cast<int>(channel.size()) > n_channels) {
        throw ActionError("more V2V links than V2I channels");
    }
    std::vector<bool> used(static_cast<std::size_t>(n_channels), false);
    for (auto& c : channel) {
        if (c < 0 || c >= n_channels || used[static_cast<std::size_t>(c)]) {
            c = static_cast<int>(std::find(used.begin(), used.end(), false) - used.begin());
        }
        used[static_cast<std::size_t>(c)] = true;
    }
}

Action decode_action(std::span<const double> raw, const ScenarioConfig& config) {
    const int links = config.v2v_link_count();
    if (static_cast<int>(raw.size()) != raw_action_size(config)) {
        throw ActionError("raw action has " + std::to_string(raw.size()) + " entries, expected " +
                          std::to_string(raw_action_size(config)));
    }
    const int levels = static_cast<int>(config.v2v_power_levels_dbm.size());
    Action a;
    a.channel.resize(static_cast<std::size_t>(links));
    a.power_level.resize(static_cast<std::size_t>(links));
    a.ris_phases.resize(static_cast<std::size_t>(config.ris_elements));
    for (int d = 0; d < links; ++d) {
        a.channel[d] = to_index(raw[d], config.n_vehicles);
        a.power_level[d] = to_index(raw[links + d], levels);
    }
    for (int f = 0; f < config.ris_elements; ++f) {
        a.ris_phases[f] = to_index(raw[2 * links + f], config.phase_levels);
    }
    resolve_channel_collisions(a.channel, config.n_vehicles);
    return a;
}

void check_action(const Action& a, const ScenarioConfig& config) {
    const auto links = static_cast<std::size_t>(config.v2v_link_count());
    if (a.channel.size() != links || a.power_level.size() != links ||
        a.ris_phases.size() != static_cast<std::size_t>(config.ris_elements)) {
        throw ActionError("action dimensions do not match the scenario");
    }
    std::vector<int> per_channel(static_cast<std::size_t>(config.n_vehicles), 0);
    for (int c : a.channel) {
        if (c < 0 || c >= config.n_vehicles) {
            throw ActionError("reuse indicator out of range: channel " + std::to_string(c));
        }
        if (++per_channel[static_cast<std::size_t>(c)] > 1) {
            throw ActionError("channel " + std::to_string(c) + " reused by more than one V2V link");
        }
    }
    const int levels = static_cast<int>(config.v2v_power_levels_dbm.size());
    for (int p : a.power_level) {
        if (p < 0 || p >= levels) {
            throw ActionError("power level index " + std::to_string(p) + " outside the level set");
        }
    }
    for (int q : a.ris_phases) {
        if (q < 0 || q >= config.phase_levels) {
            throw ActionError("phase index " + std::to_string(q) + " outside [0, Q)");
        }
    }
}

std::string to_string(EdgeType t) {
    switch (t) {
        case EdgeType::V2V: return "v2v";
        case EdgeType::V2I: return "v2i";
        case EdgeType::Ris: return "ris";
        case EdgeType::Sense: return "sense";
    }
    return "v2i";
}

std::vector<double> VehicleNode::features() const {
    std::vector<double> f{x, y};
    f.insert(f.end(), v2v_gain_db.begin(), v2v_gain_db.end());
    f.insert(f.end(), remaining_bits.begin(), remaining_bits.end());
    f.insert(f.end(), interference_dbm.begin(), interference_dbm.end());
    f.push_back(is_target ? 1.0 : 0.0);
    f.push_back(echo_gain_db);
    return f;
}

std::vector<double> BsNode::features() const {
    std::vector<double> f{x, y};
    f.insert(f.end(), v2i_gain_db.begin(), v2i_gain_db.end());
    return f;
}

std::vector<double> RisNode::features() const {
    std::vector<double> f{x, y};
    for (int q : phases) f.push_back(static_cast<double>(q));
    return f;
}

Env::Env(ScenarioConfig config) : config_(std::move(config)) { validate(config_); }

Observation Env::reset(const ScenarioConfig& config, std::uint64_t seed) {
    validate(config);
    config_ = config;
    return reset(seed);
}

void Env::place_vehicles(std::uint64_t seed) {
    if (config_.mobility == MobilityMode::Grid) {
        grid_.emplace(config_);
        vehicles_ = build_grid_scenario(config_, seed);
        return;
    }

    grid_.reset();
    const SlotGrid slot_grid = slot_grid_for(config_);
    const std::string key = config_.trajectory_file.empty()
                                ? "synthetic:" + std::to_string(config_.trajectory_pool_size) + ":" +
                                      std::to_string(seed)
                                : "file:" + config_.trajectory_file;
    if (!trajectory_pool_ || trajectory_pool_key_ != key ||
        (trajectory_pool_->size() > 0 &&
         static_cast<int>(trajectory_pool_->trajectories.front().samples.size()) != slot_grid.samples)) {
        if (config_.trajectory_file.empty()) {
            const auto rows = generate_synthetic_trajectories(config_, config_.trajectory_pool_size,
                                                              derive_seed(seed, streams::kTrajectory));
            trajectory_pool_ = build_trajectory_set(rows, slot_grid);
        } else {
            trajectory_pool_ = load_trajectories(config_.trajectory_file, slot_grid);
        }
        trajectory_pool_key_ = key;
    }
    Rng sampler(derive_seed(seed, streams::kTrajectory + 1));
    playback_ = sample_trajectories(*trajectory_pool_, config_.trajectory_sampling,
                                    static_cast<std::size_t>(config_.n_vehicles), sampler, config_.region_width_m,
                                    config_.region_height_m);
    vehicles_ = trajectory_states(playback_, 0, config_.antenna_height_m);
    if (config_.n_vehicles < 2) {
        throw std::invalid_argument("no V2V peer available");
    }
    Rng roles(derive_seed(seed, streams::kScenario));
    assign_roles(vehicles_, config_, roles);
}

Observation Env::reset(std::uint64_t seed) {
    initialized_ = false;
    validate(config_);
    place_vehicles(seed);
    links_ = v2v_links(vehicles_);
    mobility_rng_ = Rng(derive_seed(seed, streams::kMobility));
    channel_rng_ = Rng(derive_seed(seed, streams::kChannel));

    ris_ = RISState::uniform(config_.ris_elements, config_.ris_amplitude, 0);
    windows_.assign(vehicles_.size(), WindowTracker(config_.window_slots));
    payloads_.assign(links_.size(), PayloadTracker(config_.payload_bits));
    prev_interference_w_.assign(links_.size(), 0.0);

    trace_ = EpisodeTrace{};
    trace_.window = config_.window_slots;
    trace_.is_target.clear();
    for (const auto& v : vehicles_) trace_.is_target.push_back(v.is_target);

    slot_ = 0;
    initialized_ = true;
    draws_ = draw_slot(vehicles_, links_, config_, channel_rng_);
    return observe();
}

void Env::require_ready() const {
    if (!initialized_) {
        throw EnvStateError("not_initialized");
    }
}

LinkPowers Env::powers_for(const Action& action) const {
    LinkPowers p;
    p.channel_of_link = action.channel;
    p.v2v_power_w.reserve(action.power_level.size());
    for (int level : action.power_level) {
        p.v2v_power_w.push_back(dbm_to_watt(config_.v2v_power_levels_dbm[static_cast<std::size_t>(level)]));
    }
    p.v2i_power_w = dbm_to_watt(config_.v2i_power_dbm);
    p.sensing_power_w = dbm_to_watt(config_.sensing_power_dbm);
    p.noise_comm_w = dbm_to_watt(config_.noise_comm_dbm);
    p.noise_sense_w = dbm_to_watt(config_.noise_sense_dbm);
    p.bandwidth_hz = config_.bandwidth_hz;
    return p;
}

ChannelRealization Env::gains_for(std::span<const int> phases) const {
    require_ready();
    RISState state = ris_;
    state.phase_indices.assign(phases.begin(), phases.end());
    const CVec theta = reflection_matrix(state, config_.phase_levels);
    return realize(draws_, theta, vehicles_, links_, config_.ris_enabled);
}

Env::SlotOutcome Env::evaluate(const Action& action, const ChannelRealization& gains) const {
    SlotOutcome out;
    out.metrics = compute_link_metrics(gains, vehicles_, powers_for(action));
    out.thresholds =
        meets_thresholds(out.metrics, vehicles_, config_.rate_threshold_bps_hz, config_.snr_threshold_db);

    out.windows = windows_;
    double reward = 0.0;
    for (std::size_t v = 0; v < vehicles_.size(); ++v) {
        if (out.windows[v].update(out.thresholds.pass[v])) {
            reward += 1.0;
        }
    }
    out.payloads = payloads_;
    double backlog = 0.0;
    for (std::size_t d = 0; d < links_.size(); ++d) {
        // Every link always reuses exactly one channel, so c = 1.
        out.payloads[d].update(true, out.metrics.rate_v2v[d], config_.slot_duration_s);
        backlog += out.payloads[d].remaining() / out.payloads[d].payload();
    }
    if (!links_.empty()) {
        reward -= backlog / static_cast<double>(links_.size());
    }
    out.reward = reward;
    return out;
}

double Env::preview_reward(const Action& action, const ChannelRealization& gains) const {
    require_ready();
    if (done()) {
        throw EnvStateError("episode_done");
    }
    check_action(action, config_);
    return evaluate(action, gains).reward;
}

double Env::preview_reward(const Action& action) const {
    require_ready();
    check_action(action, config_);
    return preview_reward(action, gains_for(action.ris_phases));
}

StepResult Env::step(const Action& action) {
    require_ready();
    if (done()) {
        throw EnvStateError("episode_done");
    }
    check_action(action, config_);

    ris_.phase_indices = action.ris_phases;
    const ChannelRealization gains = gains_for(action.ris_phases);
    SlotOutcome outcome = evaluate(action, gains);

    windows_ = std::move(outcome.windows);
    payloads_ = std::move(outcome.payloads);
    prev_interference_w_ = outcome.metrics.interference_v2v_w;

    StepResult result;
    result.reward = outcome.reward;
    StepInfo& info = result.info;
    info.slot = slot_;
    info.psi.resize(vehicles_.size());
    for (std::size_t v = 0; v < vehicles_.size(); ++v) {
        info.psi[v] = windows_[v].psi();
        if (info.psi[v]) {
            (vehicles_[v].is_target ? info.psi_target_count : info.psi_vehicle_count) += 1;
        }
    }
    for (const auto& p : payloads_) {
        info.remaining_fraction.push_back(p.remaining() / p.payload());
        info.delivered.push_back(p.delivered());
    }
    info.metrics = std::move(outcome.metrics);
    info.thresholds = std::move(outcome.thresholds);

    trace_.psi.push_back(info.psi);
    trace_.rewards.push_back(result.reward);

    ++slot_;
    result.done = done();
    if (result.done) {
        trace_.delivered = info.delivered;
    }

    advance_mobility();
    draws_ = draw_slot(vehicles_, links_, config_, channel_rng_);
    result.observation = observe();
    return result;
}

void Env::advance_mobility() {
    if (grid_) {
        vehicles_ = step_mobility(vehicles_, *grid_, config_.slot_duration_s, mobility_rng_);
        return;
    }
    auto next = trajectory_states(playback_, slot_, config_.antenna_height_m);
    for (std::size_t v = 0; v < vehicles_.size(); ++v) {
        vehicles_[v].position = next[v].position;
        vehicles_[v].velocity = next[v].velocity;
    }
}

Observation Env::observe() const {
    require_ready();
    const std::size_t n = vehicles_.size();
    const ChannelRealization gains = gains_for(ris_.phase_indices);

    Observation obs;
    obs.slot = slot_;
    obs.vehicles.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        auto& node = obs.vehicles[v];
        node.x = vehicles_[v].position.x;
        node.y = vehicles_[v].position.y;
        node.v2v_gain_db.assign(n, kGainFloorDb);
        node.remaining_bits.assign(n, 0.0);
        node.interference_dbm.assign(n, kGainFloorDb);
        node.is_target = vehicles_[v].is_target;
        if (node.is_target) {
            node.echo_gain_db = gain_db(gains.echo[v].real());
        }
    }
    for (std::size_t d = 0; d < links_.size(); ++d) {
        auto& node = obs.vehicles[static_cast<std::size_t>(links_[d].tx)];
        const auto rx = static_cast<std::size_t>(links_[d].rx);
        node.v2v_gain_db[rx] = gain_db(std::norm(draws_.v2v_direct[d]));
        node.remaining_bits[rx] = payloads_[d].remaining();
        node.interference_dbm[rx] = power_dbm(prev_interference_w_[d]);
    }

    obs.bs.x = config_.bs_position.x;
    obs.bs.y = config_.bs_position.y;
    for (std::size_t v = 0; v < n; ++v) {
        obs.bs.v2i_gain_db.push_back(gain_db(std::norm(gains.composite_v2i[v])));
    }
    obs.ris.x = config_.ris_position.x;
    obs.ris.y = config_.ris_position.y;
    obs.ris.phases = ris_.phase_indices;

    const int bs = obs.bs_index();
    const int ris = obs.ris_index();
    for (const auto& l : links_) obs.edges.push_back({l.tx, l.rx, EdgeType::V2V});
    for (std::size_t v = 0; v < n; ++v) obs.edges.push_back({static_cast<int>(v), bs, EdgeType::V2I});
    for (std::size_t v = 0; v < n; ++v) obs.edges.push_back({static_cast<int>(v), ris, EdgeType::Ris});
    obs.edges.push_back({bs, ris, EdgeType::Ris});
    for (std::size_t v = 0; v < n; ++v) {
        if (vehicles_[v].is_target) obs.edges.push_back({static_cast<int>(v), bs, EdgeType::Sense});
    }
    return obs;
}

EpisodeMetrics Env::episode_metrics() const {
    require_ready();
    if (!done()) {
        throw EnvStateError("episode not finished");
    }
    return summarize_episode(trace_);
}

}  // namespace ccrsim
