#include "ccrsim/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ccrsim {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_same_length(std::size_t a, std::size_t b, std::size_t c) {
    if (a != b || b != c) {
        throw std::invalid_argument("RIS vector length mismatch");
    }
}

}  // namespace

cplx sample_fading(Rng& rng) {
    const double power = rng.exponential(1.0);
    const double phase = kTwoPi * rng.uniform();
    return std::polar(std::sqrt(power), phase);
}

double pathloss_amplitude(double distance_m, LinkClass cls, const LargeScaleParams& params, double shadow_db) {
    const double shadow = std::pow(10.0, shadow_db / 10.0);
    return std::sqrt(params.pathloss_const * shadow * std::pow(distance_m, -params.exponent(cls)));
}

cplx direct_gain_at(double distance_m, LinkClass cls, const LargeScaleParams& params, double shadow_db,
                    cplx fading) {
    if (!(distance_m > 0.0)) {
        throw std::invalid_argument("coincident nodes");
    }
    return pathloss_amplitude(distance_m, cls, params, shadow_db) * fading;
}

cplx direct_gain(const Endpoint& tx, const Endpoint& rx, LinkClass cls, const LargeScaleParams& params,
                 double shadow_db, cplx fading) {
    if (tx.id == rx.id) {
        return {0.0, 0.0};
    }
    return direct_gain_at(distance(tx.position, rx.position), cls, params, shadow_db, fading);
}

CVec array_response(double theta_rad, int elements, double wavelength_m, double spacing_m) {
    if (elements < 1) {
        throw std::invalid_argument("array_response: elements must be >= 1");
    }
    CVec a(static_cast<std::size_t>(elements));
    const double step = kTwoPi * (spacing_m / wavelength_m) * std::sin(theta_rad);
    a[0] = {1.0, 0.0};
    for (int f = 1; f < elements; ++f) {
        a[f] = std::polar(1.0, -step * f);
    }
    return a;
}

double ris_incidence_angle(const Vec3& node, const Vec3& ris) {
    const double ux = node.x - ris.x;
    const double uy = node.y - ris.y;
    if (ux == 0.0 && uy == 0.0) {
        return 0.0;
    }
    return std::atan2(ux, -uy);
}

CVec ris_segment_gain(const Vec3& node, const Vec3& ris, int elements, const LargeScaleParams& params,
                      double shadow_db) {
    const double d = distance(node, ris);
    if (!(d > 0.0)) {
        throw std::invalid_argument("coincident nodes");
    }
    const double amp = pathloss_amplitude(d, LinkClass::Ris, params, shadow_db);
    const cplx lead = std::polar(amp, -kTwoPi * d / params.wavelength_m);
    CVec g = array_response(ris_incidence_angle(node, ris), elements, params.wavelength_m, params.element_spacing_m);
    for (auto& e : g) {
        e *= lead;
    }
    return g;
}

RISState RISState::uniform(int elements, double amplitude, int phase_index) {
    RISState s;
    s.amplitudes.assign(static_cast<std::size_t>(elements), amplitude);
    s.phase_indices.assign(static_cast<std::size_t>(elements), phase_index);
    return s;
}

double phase_angle(int index, int levels) {
    return kTwoPi * index / levels;
}

CVec reflection_matrix(const RISState& state, int levels) {
    if (state.amplitudes.size() != state.phase_indices.size()) {
        throw std::invalid_argument("reflection_matrix: amplitude/phase length mismatch");
    }
    CVec theta(state.phase_indices.size());
    for (std::size_t f = 0; f < theta.size(); ++f) {
        const int q = state.phase_indices[f];
        const double beta = state.amplitudes[f];
        if (q < 0 || q >= levels) {
            throw std::out_of_range("phase index " + std::to_string(q) + " outside [0, " +
                                    std::to_string(levels - 1) + "]");
        }
        if (beta < 0.0 || beta > 1.0) {
            throw std::out_of_range("RIS amplitude outside [0, 1]");
        }
        if ((4 * q) % levels == 0) {
            constexpr cplx kQuarter[4] = {{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
            theta[f] = beta * kQuarter[(4 * q) / levels];
        } else {
            theta[f] = std::polar(beta, phase_angle(q, levels));
        }
    }
    return theta;
}

cplx cascaded_gain(std::span<const cplx> conj_side, std::span<const cplx> theta, std::span<const cplx> other_side,
                   cplx direct) {
    require_same_length(conj_side.size(), theta.size(), other_side.size());
    cplx acc = direct;
    for (std::size_t f = 0; f < theta.size(); ++f) {
        if (theta[f] == cplx{}) {
            continue;
        }
        acc += std::conj(conj_side[f]) * theta[f] * other_side[f];
    }
    return acc;
}

cplx composite_v2i_gain(std::span<const cplx> ris_to_vehicle, std::span<const cplx> theta,
                        std::span<const cplx> bs_to_ris, cplx bs_to_vehicle) {
    return cascaded_gain(ris_to_vehicle, theta, bs_to_ris, bs_to_vehicle);
}

cplx composite_v2v_gain(std::span<const cplx> ris_to_bs, std::span<const cplx> theta,
                        std::span<const cplx> tx_to_ris, cplx tx_to_bs) {
    return cascaded_gain(ris_to_bs, theta, tx_to_ris, tx_to_bs);
}

cplx echo_gain(std::span<const cplx> bs_to_ris, std::span<const cplx> theta, std::span<const cplx> ris_to_target,
               cplx bs_to_target) {
    const cplx h = cascaded_gain(bs_to_ris, theta, ris_to_target, bs_to_target);
    return {std::norm(h), 0.0};
}

SlotDraws draw_slot(std::span<const VehicleState> vehicles, std::span<const V2VLink> links,
                    const ScenarioConfig& config, Rng& rng) {
    const auto& params = config.channel;
    const std::size_t n = vehicles.size();
    const double dmin = config.min_link_distance_m;
    const auto dist = [&](const Vec3& a, const Vec3& b) { return std::max(distance(a, b), dmin); };
    const auto draw = [&](double d, LinkClass cls) {
        const double shadow = rng.normal(0.0, params.shadow_sigma_db(cls));
        const cplx fading = sample_fading(rng);
        return direct_gain_at(d, cls, params, shadow, fading);
    };

    SlotDraws s;
    s.bs_to_vehicle.resize(n);
    for (std::size_t v = 0; v < n; ++v) {
        s.bs_to_vehicle[v] = draw(dist(config.bs_position, vehicles[v].position), LinkClass::V2I);
    }
    s.tx_to_bs.resize(links.size());
    for (std::size_t d = 0; d < links.size(); ++d) {
        s.tx_to_bs[d] = draw(dist(vehicles[links[d].tx].position, config.bs_position), LinkClass::V2I);
    }
    s.bs_to_target.assign(n, cplx{});
    for (std::size_t v = 0; v < n; ++v) {
        const cplx g = draw(dist(config.bs_position, vehicles[v].position), LinkClass::Sense);
        if (vehicles[v].is_target) {
            s.bs_to_target[v] = g;
        }
    }
    s.v2v_direct.resize(links.size());
    for (std::size_t d = 0; d < links.size(); ++d) {
        s.v2v_direct[d] =
            draw(dist(vehicles[links[d].tx].position, vehicles[links[d].rx].position), LinkClass::V2V);
    }

    const auto segment = [&](const Vec3& node) {
        const double shadow = rng.normal(0.0, params.shadow_sigma_db(LinkClass::Ris));
        Vec3 p = node;
        if (distance(p, config.ris_position) < dmin) {
            p.z = config.ris_position.z - dmin;
        }
        return ris_segment_gain(p, config.ris_position, config.ris_elements, params, shadow);
    };
    s.bs_ris = segment(config.bs_position);
    s.vehicle_ris.reserve(n);
    for (std::size_t v = 0; v < n; ++v) {
        s.vehicle_ris.push_back(segment(vehicles[v].position));
    }
    return s;
}

ChannelRealization realize(const SlotDraws& draws, std::span<const cplx> theta, std::span<const VehicleState> vehicles,
                           std::span<const V2VLink> links, bool ris_enabled) {
    ChannelRealization r;
    const std::size_t n = vehicles.size();
    r.composite_v2i.resize(n);
    r.echo.assign(n, cplx{});
    r.composite_v2v.resize(links.size());

    for (std::size_t v = 0; v < n; ++v) {
        r.composite_v2i[v] = ris_enabled
                                 ? composite_v2i_gain(draws.vehicle_ris[v], theta, draws.bs_ris, draws.bs_to_vehicle[v])
                                 : draws.bs_to_vehicle[v];
        if (vehicles[v].is_target) {
            r.echo[v] = ris_enabled
                            ? echo_gain(draws.bs_ris, theta, draws.vehicle_ris[v], draws.bs_to_target[v])
                            : cplx{std::norm(draws.bs_to_target[v]), 0.0};
        }
    }
    for (std::size_t d = 0; d < links.size(); ++d) {
        const auto& tx_ris = draws.vehicle_ris[static_cast<std::size_t>(links[d].tx)];
        r.composite_v2v[d] =
            ris_enabled ? composite_v2v_gain(draws.bs_ris, theta, tx_ris, draws.tx_to_bs[d]) : draws.tx_to_bs[d];
    }
    return r;
}

}  // namespace ccrsim
