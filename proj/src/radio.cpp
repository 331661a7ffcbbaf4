#include "ccrsim/radio.hpp"

#include <cmath>
#include <stdexcept>

namespace ccrsim {

double dbm_to_watt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watt_to_dbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

double linear_to_db(double linear) { return 10.0 * std::log10(linear); }

namespace {

void check_powers(std::span<const double> v2v_power_w, double v2i_power_w) {
    if (v2i_power_w < 0.0) {
        throw std::invalid_argument("negative V2I power");
    }
    for (double p : v2v_power_w) {
        if (p < 0.0) {
            throw std::invalid_argument("negative V2V power");
        }
    }
}

// Sum of p_d |g_d|^2 over links on `channel`, skipping `skip`.
double co_channel(int channel, int skip, std::span<const double> v2v_gain_sq, std::span<const int> channel_of_link,
                  std::span<const double> v2v_power_w) {
    double sum = 0.0;
    for (std::size_t d = 0; d < channel_of_link.size(); ++d) {
        if (channel_of_link[d] == channel && static_cast<int>(d) != skip) {
            sum += v2v_power_w[d] * v2v_gain_sq[d];
        }
    }
    return sum;
}

}  // namespace

double sinr_v2i(int v, std::span<const double> v2i_gain_sq, std::span<const double> v2v_gain_sq,
                std::span<const int> channel_of_link, std::span<const double> v2v_power_w, double v2i_power_w,
                double noise_w) {
    check_powers(v2v_power_w, v2i_power_w);
    const double interference = co_channel(v, -1, v2v_gain_sq, channel_of_link, v2v_power_w);
    return v2i_power_w * v2i_gain_sq[static_cast<std::size_t>(v)] / (interference + noise_w);
}

double v2v_interference(int d, std::span<const double> v2i_gain_sq, std::span<const double> v2v_gain_sq,
                        std::span<const int> channel_of_link, std::span<const double> v2v_power_w,
                        double v2i_power_w) {
    const int v = channel_of_link[static_cast<std::size_t>(d)];
    return co_channel(v, d, v2v_gain_sq, channel_of_link, v2v_power_w) +
           v2i_power_w * v2i_gain_sq[static_cast<std::size_t>(v)];
}

double sinr_v2v(int d, std::span<const double> v2i_gain_sq, std::span<const double> v2v_gain_sq,
                std::span<const int> channel_of_link, std::span<const double> v2v_power_w, double v2i_power_w,
                double noise_w) {
    check_powers(v2v_power_w, v2i_power_w);
    const double interference =
        v2v_interference(d, v2i_gain_sq, v2v_gain_sq, channel_of_link, v2v_power_w, v2i_power_w);
    return v2v_power_w[static_cast<std::size_t>(d)] * v2v_gain_sq[static_cast<std::size_t>(d)] /
           (interference + noise_w);
}

double spectral_efficiency(double sinr) { return std::log2(1.0 + sinr); }

double rate(double sinr, double bandwidth_hz) { return bandwidth_hz * spectral_efficiency(sinr); }

double sensing_snr(double echo, double sensing_power_w, double noise_w) {
    return sensing_power_w * echo * echo / noise_w;
}

SlotLinkMetrics compute_link_metrics(const ChannelRealization& gains, std::span<const VehicleState> vehicles,
                                     const LinkPowers& powers) {
    const std::size_t n = vehicles.size();
    const std::size_t links = gains.composite_v2v.size();
    if (powers.channel_of_link.size() != links || powers.v2v_power_w.size() != links) {
        throw std::invalid_argument("compute_link_metrics: action size does not match link count");
    }

    std::vector<double> v2i_sq(n), v2v_sq(links);
    for (std::size_t v = 0; v < n; ++v) v2i_sq[v] = std::norm(gains.composite_v2i[v]);
    for (std::size_t d = 0; d < links; ++d) v2v_sq[d] = std::norm(gains.composite_v2v[d]);

    SlotLinkMetrics m;
    m.sinr_v2i.resize(n);
    m.spectral_eff_v2i.resize(n);
    m.rate_v2i.resize(n);
    m.snr_sense.assign(n, 0.0);
    for (std::size_t v = 0; v < n; ++v) {
        m.sinr_v2i[v] = sinr_v2i(static_cast<int>(v), v2i_sq, v2v_sq, powers.channel_of_link, powers.v2v_power_w,
                                 powers.v2i_power_w, powers.noise_comm_w);
        m.spectral_eff_v2i[v] = spectral_efficiency(m.sinr_v2i[v]);
        m.rate_v2i[v] = powers.bandwidth_hz * m.spectral_eff_v2i[v];
        if (vehicles[v].is_target) {
            m.snr_sense[v] = sensing_snr(gains.echo[v].real(), powers.sensing_power_w, powers.noise_sense_w);
        }
    }
    m.sinr_v2v.resize(links);
    m.rate_v2v.resize(links);
    m.interference_v2v_w.resize(links);
    for (std::size_t d = 0; d < links; ++d) {
        m.sinr_v2v[d] = sinr_v2v(static_cast<int>(d), v2i_sq, v2v_sq, powers.channel_of_link, powers.v2v_power_w,
                                 powers.v2i_power_w, powers.noise_comm_w);
        m.rate_v2v[d] = rate(m.sinr_v2v[d], powers.bandwidth_hz);
        m.interference_v2v_w[d] = v2v_interference(static_cast<int>(d), v2i_sq, v2v_sq, powers.channel_of_link,
                                                   powers.v2v_power_w, powers.v2i_power_w);
    }
    return m;
}

ThresholdOutcome meets_thresholds(const SlotLinkMetrics& metrics, std::span<const VehicleState> vehicles,
                                  double rate_threshold_bps_hz, double snr_threshold_db) {
    const std::size_t n = vehicles.size();
    const double snr_threshold = db_to_linear(snr_threshold_db);
    ThresholdOutcome out;
    out.rate_ok.resize(n);
    out.sensing_ok.resize(n);
    out.pass.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        out.rate_ok[v] = metrics.spectral_eff_v2i[v] >= rate_threshold_bps_hz;
        out.sensing_ok[v] = vehicles[v].is_target && metrics.snr_sense[v] >= snr_threshold;
        out.pass[v] = vehicles[v].is_target ? (out.rate_ok[v] && out.sensing_ok[v]) : out.rate_ok[v];
    }
    return out;
}

}  // namespace ccrsim
