#pragma once

#include <span>
#include <vector>

#include "ccrsim/channel.hpp"

namespace ccrsim {

double dbm_to_watt(double dbm);
double watt_to_dbm(double watt);
double db_to_linear(double db);
double linear_to_db(double linear);

/// SINR of V2I link v: P_v |g_v|^2 / (sum over links d on channel v of p_d |g_d|^2 + noise).
/// `channel_of_link[d]` is the V2I channel reused by link d.
double sinr_v2i(int v, std::span<const double> v2i_gain_sq, std::span<const double> v2v_gain_sq,
                std::span<const int> channel_of_link, std::span<const double> v2v_power_w, double v2i_power_w,
                double noise_w);

/// SINR of V2V link d on its channel v. The link's own signal is excluded
/// from the interference sum; the channel owner's V2I signal is included.
double sinr_v2v(int d, std::span<const double> v2i_gain_sq, std::span<const double> v2v_gain_sq,
                std::span<const int> channel_of_link, std::span<const double> v2v_power_w, double v2i_power_w,
                double noise_w);

/// Co-channel interference power at link d's receiver (excluding noise).
double v2v_interference(int d, std::span<const double> v2i_gain_sq, std::span<const double> v2v_gain_sq,
                        std::span<const int> channel_of_link, std::span<const double> v2v_power_w,
                        double v2i_power_w);

/// Shannon rate W log2(1 + sinr) in bit/s.
double rate(double sinr, double bandwidth_hz);
double spectral_efficiency(double sinr);

/// P_j * echo^2 / sigma^2 where echo is the already-squared echo gain.
double sensing_snr(double echo, double sensing_power_w, double noise_w);

struct SlotLinkMetrics {
    std::vector<double> sinr_v2i;             // per vehicle
    std::vector<double> spectral_eff_v2i;     // per vehicle, bit/s/Hz
    std::vector<double> rate_v2i;             // per vehicle, bit/s
    std::vector<double> sinr_v2v;             // per link
    std::vector<double> rate_v2v;             // per link, bit/s
    std::vector<double> snr_sense;            // per vehicle, zero for non-targets
    std::vector<double> interference_v2v_w;   // per link
};

struct LinkPowers {
    std::vector<int> channel_of_link;
    std::vector<double> v2v_power_w;
    double v2i_power_w = 0.0;
    double sensing_power_w = 0.0;
    double noise_comm_w = 0.0;
    double noise_sense_w = 0.0;
    double bandwidth_hz = 0.0;
};

SlotLinkMetrics compute_link_metrics(const ChannelRealization& gains, std::span<const VehicleState> vehicles,
                                     const LinkPowers& powers);

struct ThresholdOutcome {
    std::vector<bool> rate_ok;     // per vehicle
    std::vector<bool> sensing_ok;  // per vehicle, false for non-targets
    std::vector<bool> pass;        // per vehicle: rate_ok, and sensing_ok for targets
};

/// Rate test log2(1+SINR) >= R_th for every vehicle; targets must also satisfy
/// SNR >= SNR_th. Both comparisons are inclusive.
ThresholdOutcome meets_thresholds(const SlotLinkMetrics& metrics, std::span<const VehicleState> vehicles,
                                  double rate_threshold_bps_hz, double snr_threshold_db);

}  // namespace ccrsim
