#pragma once

#include <cstddef>
#include <vector>

namespace ccrsim {

/// Sliding-window continuity indicator: psi is 1 iff the last N outcomes all
/// passed (which implies at least N outcomes have been seen).
class WindowTracker {
public:
    explicit WindowTracker(int window);

    /// Pushes one outcome and returns the updated indicator.
    bool update(bool outcome);

    bool psi() const { return streak_ >= window_; }
    int window() const { return window_; }
    std::size_t elapsed() const { return elapsed_; }
    /// Trailing run of passing outcomes, saturated at the window length.
    int streak() const { return streak_; }

private:
    int window_;
    int streak_ = 0;
    std::size_t elapsed_ = 0;
};

/// Remaining V2V payload for one link over one episode.
class PayloadTracker {
public:
    explicit PayloadTracker(double payload_bits);

    /// Credits reused * rate * dt bits and returns the bits still outstanding.
    double update(bool reused, double rate_bps, double dt_s);

    double payload() const { return payload_; }
    double remaining() const { return remaining_; }
    bool delivered() const { return delivered_; }
    /// Bits credited by the most recent update.
    double last_credit() const { return last_credit_; }

private:
    double payload_;
    double remaining_;
    double last_credit_ = 0.0;
    bool delivered_ = false;
};

/// Fraction of (vehicle, slot) pairs with psi = 1 over slots N..T.
/// `psi_by_vehicle[v][t]` is vehicle v's indicator at slot t (0-based).
double ccr_v2i(const std::vector<std::vector<bool>>& psi_by_vehicle, int window);

/// Delivered fraction over all (link, episode) outcomes.
double ccr_v2v(const std::vector<bool>& delivered);

/// Everything recorded over one episode that the objective needs.
struct EpisodeTrace {
    int window = 1;
    std::vector<bool> is_target;                 // per vehicle
    std::vector<std::vector<bool>> psi;          // [slot][vehicle]
    std::vector<bool> delivered;                 // per link, at the deadline
    std::vector<double> rewards;                 // per slot

    int slots() const { return static_cast<int>(psi.size()); }
};

/// (1/T) sum_t [ delivered fraction + mean psi over non-targets + mean psi over
/// targets ]; empty groups contribute nothing.
double objective_value(const EpisodeTrace& trace);

struct EpisodeMetrics {
    double ccr_v2i = 0.0;
    double ccr_v2v = 0.0;
    double ccr_total = 0.0;
    double objective = 0.0;
    double mean_reward = 0.0;
};

EpisodeMetrics summarize_episode(const EpisodeTrace& trace);

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

/// Per-episode series plus aggregate statistics across runs.
class CCRReport {
public:
    void add(const EpisodeMetrics& m) { episodes_.push_back(m); }
    void merge(const CCRReport& other);

    const std::vector<EpisodeMetrics>& episodes() const { return episodes_; }
    std::size_t runs() const { return episodes_.size(); }

    MeanStd ccr_v2i() const;
    MeanStd ccr_v2v() const;
    MeanStd ccr_total() const;
    MeanStd objective() const;
    MeanStd mean_reward() const;

private:
    template <typename F>
    MeanStd stat(F field) const;

    std::vector<EpisodeMetrics> episodes_;
};

}  // namespace ccrsim
