#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <set>

#include "ccrsim/channel.hpp"

using namespace ccrsim;

namespace {

constexpr double kPi = std::numbers::pi;

// sum_f conj(a_f) t_f b_f + c, written out in real arithmetic.
cplx triple_product(const CVec& a, const CVec& t, const CVec& b, cplx c) {
    double re = c.real(), im = c.imag();
    for (std::size_t f = 0; f < a.size(); ++f) {
        const double ar = a[f].real(), ai = -a[f].imag();
        const double pr = ar * t[f].real() - ai * t[f].imag();
        const double pi = ar * t[f].imag() + ai * t[f].real();
        re += pr * b[f].real() - pi * b[f].imag();
        im += pr * b[f].imag() + pi * b[f].real();
    }
    return {re, im};
}

CVec random_vec(Rng& rng, int n, double scale) {
    CVec v(static_cast<std::size_t>(n));
    for (auto& x : v) x = {scale * rng.normal(), scale * rng.normal()};
    return v;
}

double rel_err(cplx got, cplx want) {
    return std::abs(got - want) / std::max(std::abs(want), 1e-300);
}

}  // namespace

TEST_CASE("fading statistics") {
    Rng rng(2024);
    const int n = 1000000;
    double sum = 0.0;
    int below_one = 0;
    double phase_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        const cplx h = sample_fading(rng);
        const double p = std::norm(h);
        sum += p;
        below_one += p <= 1.0 ? 1 : 0;
        phase_sum += std::arg(h);
    }
    CHECK(std::abs(sum / n - 1.0) < 0.01);
    CHECK(std::abs(static_cast<double>(below_one) / n - (1.0 - std::exp(-1.0))) < 0.01);
    CHECK(std::abs(phase_sum / n) < 0.01);  // arg is symmetric on (-pi, pi]
    Rng a(5), b(5);
    CHECK(sample_fading(a) == sample_fading(b));
}

TEST_CASE("direct gain at the reference distance") {
    LargeScaleParams p;
    const cplx g = direct_gain_at(1.0, LinkClass::V2I, p, 0.0, {1.0, 0.0});
    CHECK(std::abs(g) == doctest::Approx(std::sqrt(p.pathloss_const)).epsilon(1e-15));
}

TEST_CASE("path-loss power law per class") {
    LargeScaleParams p;
    const cplx fading{0.3, -0.8};
    for (auto cls : {LinkClass::V2I, LinkClass::V2V, LinkClass::Sense, LinkClass::Ris}) {
        for (double d : {1.0, 7.5, 120.0, 900.0}) {
            const double ratio = std::norm(direct_gain_at(d, cls, p, 2.5, fading)) /
                                 std::norm(direct_gain_at(2 * d, cls, p, 2.5, fading));
            CHECK(std::abs(ratio - std::pow(2.0, p.exponent(cls))) < 1e-9);
        }
    }
}

TEST_CASE("self pair is exactly zero; coincident distinct nodes are an error") {
    LargeScaleParams p;
    const Endpoint a{3, {1, 2, 3}};
    CHECK(direct_gain(a, a, LinkClass::V2V, p, 1.0, {1, 1}) == cplx{0.0, 0.0});
    const Endpoint b{4, {1, 2, 3}};
    CHECK_THROWS_WITH(direct_gain(a, b, LinkClass::V2V, p, 1.0, {1, 1}), "coincident nodes");
    CHECK_THROWS_WITH(direct_gain_at(0.0, LinkClass::V2V, p, 0.0, {1, 0}), "coincident nodes");
}

TEST_CASE("array response") {
    const auto broadside = array_response(0.0, 6, 0.15, 0.075);
    for (const auto& e : broadside) CHECK(e == cplx{1.0, 0.0});
    CHECK(array_response(1.0, 1, 0.15, 0.075) == CVec{{1.0, 0.0}});
    const auto endfire = array_response(kPi / 2, 2, 1.0, 0.5);
    CHECK(endfire[0] == cplx{1.0, 0.0});
    CHECK(std::abs(endfire[1] - cplx{-1.0, 0.0}) < 1e-15);

    const double theta = 0.37, lam = 0.15, de = 0.075;
    const auto a = array_response(theta, 9, lam, de);
    for (int f = 0; f < 9; ++f) {
        const double ph = -2.0 * kPi * (de / lam) * f * std::sin(theta);
        CHECK(std::abs(a[f] - cplx{std::cos(ph), std::sin(ph)}) < 1e-12);
        CHECK(std::abs(std::abs(a[f]) - 1.0) < 1e-15);
    }
}

TEST_CASE("RIS segment gain against hand evaluation") {
    LargeScaleParams p;
    const Vec3 ris{290, 380, 25};
    const Vec3 node{180, 270, 25};
    const double shadow = -1.7;
    const auto g = ris_segment_gain(node, ris, 12, p, shadow);

    const double dx = node.x - ris.x, dy = node.y - ris.y, dz = node.z - ris.z;
    const double d = std::sqrt(dx * dx + dy * dy + dz * dz);
    const double amp = std::sqrt(p.pathloss_const * std::pow(10.0, shadow / 10.0) * std::pow(d, -p.exponent_ris));
    const double theta = std::atan2(dx, -dy);
    for (int f = 0; f < 12; ++f) {
        const double ph = -2.0 * kPi * d / p.wavelength_m -
                          2.0 * kPi * (p.element_spacing_m / p.wavelength_m) * f * std::sin(theta);
        const cplx want = amp * cplx{std::cos(ph), std::sin(ph)};
        CHECK(rel_err(g[f], want) < 1e-12);
        CHECK(std::abs(std::abs(g[f]) - amp) < 1e-12 * amp);
    }
    CHECK_THROWS(ris_segment_gain(ris, ris, 4, p, 0.0));
}

TEST_CASE("reflection matrix") {
    CHECK(phase_angle(2, 8) == kPi / 2);
    auto s = RISState::uniform(1, 1.0, 2);
    CHECK(reflection_matrix(s, 8)[0] == cplx{0.0, 1.0});

    const auto off = reflection_matrix(RISState::uniform(5, 0.0, 3), 8);
    for (const auto& e : off) CHECK(e == cplx{0.0, 0.0});

    std::set<std::pair<double, double>> distinct;
    for (int q = 0; q < 8; ++q) {
        const auto t = reflection_matrix(RISState::uniform(1, 1.0, q), 8)[0];
        distinct.insert({std::round(t.real() * 1e9), std::round(t.imag() * 1e9)});
    }
    CHECK(distinct.size() == 8);

    s.phase_indices[0] = 8;
    CHECK_THROWS(reflection_matrix(s, 8));
    s.phase_indices[0] = -1;
    CHECK_THROWS(reflection_matrix(s, 8));
}

TEST_CASE("phase quantization closure") {
    Rng rng(11);
    for (int Q : {2, 3, 4, 5, 8, 16}) {
        RISState s = RISState::uniform(32, 1.0);
        for (auto& q : s.phase_indices) q = rng.uniform_int(Q);
        const auto t = reflection_matrix(s, Q);
        for (std::size_t f = 0; f < t.size(); ++f) {
            const double want = 2.0 * kPi * s.phase_indices[f] / Q;
            const cplx unit{std::cos(want), std::sin(want)};
            CHECK(std::abs(t[f] - unit) < 1e-12);
        }
    }
}

TEST_CASE("composite scalar case") {
    const CVec one{{1.0, 0.0}};
    CHECK(composite_v2i_gain(one, one, one, {1.0, 0.0}) == cplx{2.0, 0.0});
    CHECK(composite_v2v_gain(one, one, one, {1.0, 0.0}) == cplx{2.0, 0.0});
    CHECK(echo_gain(one, one, one, {1.0, 0.0}) == cplx{4.0, 0.0});
}

TEST_CASE("composites match the triple-product oracle") {
    Rng rng(77);
    for (int trial = 0; trial < 500; ++trial) {
        const int F = 1 + rng.uniform_int(16);
        const auto a = random_vec(rng, F, 1e-4);
        const auto b = random_vec(rng, F, 1e-3);
        RISState s = RISState::uniform(F, rng.uniform());
        for (auto& q : s.phase_indices) q = rng.uniform_int(8);
        const auto t = reflection_matrix(s, 8);
        const cplx direct{1e-6 * rng.normal(), 1e-6 * rng.normal()};

        const cplx want = triple_product(a, t, b, direct);
        CHECK(rel_err(composite_v2i_gain(a, t, b, direct), want) < 1e-12);
        CHECK(rel_err(composite_v2v_gain(a, t, b, direct), want) < 1e-12);
        const cplx echo = echo_gain(a, t, b, direct);
        CHECK(echo.imag() == 0.0);
        CHECK(echo.real() >= 0.0);
        const double h2 = want.real() * want.real() + want.imag() * want.imag();
        CHECK(std::abs(echo.real() - h2) <= 1e-12 * h2);
    }
}

TEST_CASE("RIS off leaves direct gains bit-exact") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        const int F = 1 + rng.uniform_int(16);
        const auto a = random_vec(rng, F, 1.0);
        const auto b = random_vec(rng, F, 1.0);
        const CVec zero(static_cast<std::size_t>(F));
        const cplx direct{rng.normal(), rng.normal()};
        CHECK(composite_v2i_gain(a, zero, b, direct) == direct);
        CHECK(composite_v2v_gain(a, zero, b, direct) == direct);
        CHECK(echo_gain(a, zero, b, direct) == cplx{std::norm(direct), 0.0});
    }
}

TEST_CASE("echo of the direct path alone is its square magnitude") {
    const CVec a{{1, 1}, {2, 0}}, zero(2);
    CHECK(echo_gain(a, zero, a, {0.0, 3.0}).real() == 9.0);
}

TEST_CASE("length mismatch is an error") {
    const CVec two(2), three(3);
    CHECK_THROWS(composite_v2i_gain(two, three, two, {}));
    CHECK_THROWS(composite_v2v_gain(two, two, three, {}));
    CHECK_THROWS(echo_gain(three, two, two, {}));
}

TEST_CASE("slot draws do not depend on the RIS switch and realize consistently") {
    ScenarioConfig c;
    const auto vehicles = build_grid_scenario(c, 3);
    const auto links = v2v_links(vehicles);
    Rng r1(9), r2(9);
    const auto d1 = draw_slot(vehicles, links, c, r1);
    c.ris_enabled = false;
    const auto d2 = draw_slot(vehicles, links, c, r2);
    CHECK(d1.bs_to_vehicle == d2.bs_to_vehicle);
    CHECK(d1.vehicle_ris == d2.vehicle_ris);
    CHECK(r1.next_u64() == r2.next_u64());

    const auto theta_off = reflection_matrix(RISState::uniform(c.ris_elements, 0.0), c.phase_levels);
    const auto zero_amp = realize(d1, theta_off, vehicles, links, true);
    const auto disabled = realize(d1, theta_off, vehicles, links, false);
    CHECK(zero_amp.composite_v2i == disabled.composite_v2i);
    CHECK(zero_amp.composite_v2v == disabled.composite_v2v);
    CHECK(zero_amp.echo == disabled.echo);
    CHECK(disabled.composite_v2i == d1.bs_to_vehicle);
    CHECK(disabled.composite_v2v == d1.tx_to_bs);

    for (std::size_t v = 0; v < vehicles.size(); ++v) {
        if (!vehicles[v].is_target) {
            CHECK(zero_amp.echo[v] == cplx{});
            CHECK(d1.bs_to_target[v] == cplx{});
        }
    }

    const auto theta = reflection_matrix(RISState::uniform(c.ris_elements, 1.0, 3), c.phase_levels);
    const auto on = realize(d1, theta, vehicles, links, true);
    for (std::size_t v = 0; v < vehicles.size(); ++v) {
        const cplx want = triple_product(d1.vehicle_ris[v], theta, d1.bs_ris, d1.bs_to_vehicle[v]);
        CHECK(rel_err(on.composite_v2i[v], want) < 1e-12);
    }
}
