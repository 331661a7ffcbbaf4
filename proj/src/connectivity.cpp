#include "ccrsim/connectivity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccrsim {

WindowTracker::WindowTracker(int window) : window_(window) {
    if (window < 1) {
        throw std::invalid_argument("window must be >= 1");
    }
}

bool WindowTracker::update(bool outcome) {
    ++elapsed_;
    streak_ = outcome ? std::min(streak_ + 1, window_) : 0;
    return psi();
}

PayloadTracker::PayloadTracker(double payload_bits) : payload_(payload_bits), remaining_(payload_bits) {
    if (!(payload_bits > 0.0)) {
        throw std::invalid_argument("payload must be > 0");
    }
}

double PayloadTracker::update(bool reused, double rate_bps, double dt_s) {
    last_credit_ = 0.0;
    if (delivered_ || !reused) {
        return remaining_;
    }
    const double before = remaining_;
    remaining_ = std::max(0.0, remaining_ - rate_bps * dt_s);
    // Accumulated per-slot credits carry rounding; anything within a few ulps
    // of the payload counts as delivered.
    if (remaining_ <= payload_ * 1e-12) {
        remaining_ = 0.0;
    }
    last_credit_ = before - remaining_;
    delivered_ = remaining_ == 0.0;
    return remaining_;
}

double ccr_v2i(const std::vector<std::vector<bool>>& psi_by_vehicle, int window) {
    if (psi_by_vehicle.empty()) {
        throw std::invalid_argument("ccr_v2i: no vehicles");
    }
    const std::size_t slots = psi_by_vehicle.front().size();
    if (window < 1 || slots < static_cast<std::size_t>(window)) {
        throw std::invalid_argument("ccr_v2i: episode shorter than window (T < N)");
    }
    std::size_t hits = 0;
    for (const auto& series : psi_by_vehicle) {
        if (series.size() != slots) {
            throw std::invalid_argument("ccr_v2i: ragged indicator series");
        }
        for (std::size_t t = static_cast<std::size_t>(window) - 1; t < slots; ++t) {
            hits += series[t] ? 1 : 0;
        }
    }
    const double denom = static_cast<double>(psi_by_vehicle.size()) * static_cast<double>(slots - window + 1);
    return static_cast<double>(hits) / denom;
}

double ccr_v2v(const std::vector<bool>& delivered) {
    if (delivered.empty()) {
        throw std::invalid_argument("ccr_v2v: no link outcomes");
    }
    const auto hits = std::count(delivered.begin(), delivered.end(), true);
    return static_cast<double>(hits) / static_cast<double>(delivered.size());
}

double objective_value(const EpisodeTrace& trace) {
    const int slots = trace.slots();
    if (slots == 0) {
        return 0.0;
    }
    const std::size_t n = trace.is_target.size();
    const auto targets = static_cast<std::size_t>(std::count(trace.is_target.begin(), trace.is_target.end(), true));
    const std::size_t others = n - targets;

    double delivery = 0.0;
    if (!trace.delivered.empty()) {
        delivery = static_cast<double>(std::count(trace.delivered.begin(), trace.delivered.end(), true)) /
                   static_cast<double>(trace.delivered.size());
    }

    double total = 0.0;
    for (const auto& row : trace.psi) {
        double sum_other = 0.0, sum_target = 0.0;
        for (std::size_t v = 0; v < n; ++v) {
            if (!row[v]) continue;
            (trace.is_target[v] ? sum_target : sum_other) += 1.0;
        }
        double term = delivery;
        if (others > 0) term += sum_other / static_cast<double>(others);
        if (targets > 0) term += sum_target / static_cast<double>(targets);
        total += term;
    }
    return total / slots;
}

EpisodeMetrics summarize_episode(const EpisodeTrace& trace) {
    const std::size_t n = trace.is_target.size();
    std::vector<std::vector<bool>> by_vehicle(n, std::vector<bool>(trace.psi.size()));
    for (std::size_t t = 0; t < trace.psi.size(); ++t) {
        for (std::size_t v = 0; v < n; ++v) by_vehicle[v][t] = trace.psi[t][v];
    }

    EpisodeMetrics m;
    m.ccr_v2i = ccr_v2i(by_vehicle, trace.window);
    m.ccr_v2v = ccr_v2v(trace.delivered);
    m.ccr_total = m.ccr_v2i + m.ccr_v2v;
    m.objective = objective_value(trace);
    if (!trace.rewards.empty()) {
        double sum = 0.0;
        for (double r : trace.rewards) sum += r;
        m.mean_reward = sum / static_cast<double>(trace.rewards.size());
    }
    return m;
}

void CCRReport::merge(const CCRReport& other) {
    episodes_.insert(episodes_.end(), other.episodes_.begin(), other.episodes_.end());
}

template <typename F>
MeanStd CCRReport::stat(F field) const {
    MeanStd out;
    if (episodes_.empty()) {
        return out;
    }
    double sum = 0.0;
    for (const auto& e : episodes_) sum += field(e);
    out.mean = sum / static_cast<double>(episodes_.size());
    if (episodes_.size() > 1) {
        double ss = 0.0;
        for (const auto& e : episodes_) {
            const double d = field(e) - out.mean;
            ss += d * d;
        }
        out.std = std::sqrt(ss / static_cast<double>(episodes_.size() - 1));
    }
    return out;
}

MeanStd CCRReport::ccr_v2i() const { return stat([](const EpisodeMetrics& e) { return e.ccr_v2i; }); }
MeanStd CCRReport::ccr_v2v() const { return stat([](const EpisodeMetrics& e) { return e.ccr_v2v; }); }
MeanStd CCRReport::ccr_total() const { return stat([](const EpisodeMetrics& e) { return e.ccr_total; }); }
MeanStd CCRReport::objective() const { return stat([](const EpisodeMetrics& e) { return e.objective; }); }
MeanStd CCRReport::mean_reward() const { return stat([](const EpisodeMetrics& e) { return e.mean_reward; }); }

}  // namespace ccrsim
