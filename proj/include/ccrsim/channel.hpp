#pragma once

#include <complex>
#include <span>
#include <vector>

#include "ccrsim/config.hpp"
#include "ccrsim/geometry.hpp"
#include "ccrsim/rng.hpp"
#include "ccrsim/scenario.hpp"

namespace ccrsim {

using cplx = std::complex<double>;
using CVec = std::vector<cplx>;

/// Rayleigh small-scale coefficient: |h|^2 ~ Exp(1), phase ~ U[0, 2pi).
cplx sample_fading(Rng& rng);

/// Large-scale amplitude sqrt(rho * 10^(shadow/10) * d^-eta).
double pathloss_amplitude(double distance_m, LinkClass cls, const LargeScaleParams& params, double shadow_db);

/// A node identity plus where it is; identical ids denote the same radio.
struct Endpoint {
    int id = 0;
    Vec3 position;
};

/// Direct link gain. Exactly zero for a self-pair; throws on coincident
/// positions of distinct nodes.
cplx direct_gain(const Endpoint& tx, const Endpoint& rx, LinkClass cls, const LargeScaleParams& params,
                 double shadow_db, cplx fading);

/// Same gain evaluated at a given distance (must be > 0).
cplx direct_gain_at(double distance_m, LinkClass cls, const LargeScaleParams& params, double shadow_db,
                    cplx fading);

/// Uniform linear array response, element f = exp(-j 2 pi (d_e/lambda) f sin(theta)).
CVec array_response(double theta_rad, int elements, double wavelength_m, double spacing_m);

/// Azimuth of `node` seen from the RIS, measured from the RIS boresight (-y)
/// towards the array axis (+x). Zero when the node is directly above/below.
double ris_incidence_angle(const Vec3& node, const Vec3& ris);

/// Node <-> RIS segment: large-scale amplitude, propagation phase
/// exp(-j 2 pi d / lambda) and the array response at the incidence angle.
CVec ris_segment_gain(const Vec3& node, const Vec3& ris, int elements, const LargeScaleParams& params,
                      double shadow_db);

struct RISState {
    std::vector<double> amplitudes;
    std::vector<int> phase_indices;

    static RISState uniform(int elements, double amplitude, int phase_index = 0);
};

/// Phase 2 pi q / Q for index q.
double phase_angle(int index, int levels);

/// Diagonal of the reflection matrix: beta_f * exp(j 2 pi q_f / Q).
/// Quarter-turn phases are produced exactly.
CVec reflection_matrix(const RISState& state, int levels);

/// (a)^H diag(theta) b + direct, accumulated onto `direct`.
cplx cascaded_gain(std::span<const cplx> conj_side, std::span<const cplx> theta, std::span<const cplx> other_side,
                   cplx direct);

/// g_v = (g_{R,v})^H Theta g_{B,R} + g_{B,v}
cplx composite_v2i_gain(std::span<const cplx> ris_to_vehicle, std::span<const cplx> theta,
                        std::span<const cplx> bs_to_ris, cplx bs_to_vehicle);

/// g_d = (g_{R,B})^H Theta g_{d,R} + g_{d,B}, with d the link transmitter.
cplx composite_v2v_gain(std::span<const cplx> ris_to_bs, std::span<const cplx> theta,
                        std::span<const cplx> tx_to_ris, cplx tx_to_bs);

/// Echo gain h h^H with h = (g_{B,R})^H Theta g_{R,j} + g_{B,j}; real and >= 0.
cplx echo_gain(std::span<const cplx> bs_to_ris, std::span<const cplx> theta, std::span<const cplx> ris_to_target,
               cplx bs_to_target);

/// Random draws for one slot, independent of the RIS configuration.
struct SlotDraws {
    CVec bs_to_vehicle;        // per vehicle, V2I class
    CVec tx_to_bs;             // per V2V link, transmitter -> BS, V2I class
    CVec bs_to_target;         // per vehicle, sensing class, zero for non-targets
    CVec v2v_direct;           // per V2V link, transmitter -> receiver, V2V class
    CVec bs_ris;               // BS <-> RIS segment
    std::vector<CVec> vehicle_ris;  // per vehicle
};

/// Composite gains for one slot under one reflection configuration.
struct ChannelRealization {
    CVec composite_v2i;  // per vehicle
    CVec composite_v2v;  // per V2V link
    CVec echo;           // per vehicle, zero for non-targets
};

/// Draws every shadowing, fading and segment term for the slot in a fixed
/// order, so the stream consumed does not depend on the action or on whether
/// the RIS is enabled.
SlotDraws draw_slot(std::span<const VehicleState> vehicles, std::span<const V2VLink> links,
                    const ScenarioConfig& config, Rng& rng);

ChannelRealization realize(const SlotDraws& draws, std::span<const cplx> theta, std::span<const VehicleState> vehicles,
                           std::span<const V2VLink> links, bool ris_enabled);

}  // namespace ccrsim
