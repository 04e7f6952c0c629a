#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "oracle.hpp"
#include "tssp/norms.hpp"
#include "tssp/observables.hpp"
#include "tssp/propagators.hpp"

using namespace tssp;

namespace {

SplitConfig raw_config(Scheme scheme, double tau, double beta, double sigma, GridPtr g) {
    // aggregate construction so tau = 0 and tau < 0 cases stay reachable
    return SplitConfig{scheme, tau, SemiSmoothNonlinearity{beta, sigma}, zero_potential(g)};
}

} // namespace

TEST_CASE("kinetic_flow") {
    GridPtr g = make_grid(0.0, 1.0, 8);
    SpectralField c = oracle::random_spectral(g, 3);

    SpectralField id = kinetic_flow(c, 0.0);
    CHECK(oracle::max_diff(id.coeffs, c.coeffs) == 0.0);

    SpectralField one = make_spectral(g);
    one.coeffs[0] = Complex(1.0, 0.0);
    SpectralField rot = kinetic_flow(one, 1.0 / M_PI); // mu_1^2 = pi^2, phase e^{-i pi}
    CHECK(std::abs(rot.coeffs[0] - Complex(-1.0, 0.0)) < 1e-14);

    CHECK(l2_norm(kinetic_flow(c, 0.37)) == doctest::Approx(l2_norm(c)).epsilon(1e-14));

    // backward flow inverts
    SpectralField back = kinetic_flow(kinetic_flow(c, 0.2), -0.2);
    CHECK(oracle::max_diff(back.coeffs, c.coeffs) < 1e-15 * 10);
}

TEST_CASE("phase_flow") {
    GridPtr g = make_grid(0.0, 1.0, 8);
    const SemiSmoothNonlinearity cubic{1.0, 1.0};
    const Potential zero = zero_potential(g);

    NodalField v = oracle::random_nodal(g, 11);
    NodalField id = phase_flow(v, zero, cubic, 0.0);
    CHECK(oracle::max_diff(id.values, v.values) == 0.0);

    NodalField one = make_nodal(g);
    one.values[3] = Complex(1.0, 0.0);
    NodalField flipped = phase_flow(one, zero, cubic, M_PI); // e^{-i pi f(1)} = -1
    CHECK(std::abs(flipped.values[3] - Complex(-1.0, 0.0)) < 1e-14);

    // pure phase: the modulus of every node and every l^p norm is unchanged
    NodalField w = phase_flow(v, zero, SemiSmoothNonlinearity{-2.0, 0.3}, 0.83);
    for (int j = 0; j <= g->N; ++j)
        CHECK(std::abs(w.values[j]) == doctest::Approx(std::abs(v.values[j])).epsilon(1e-14));
    CHECK(lp_norm_nodal(w, 2.0) == doctest::Approx(lp_norm_nodal(v, 2.0)).epsilon(1e-14));
    CHECK(lp_norm_nodal(w, kInfNorm) ==
          doctest::Approx(lp_norm_nodal(v, kInfNorm)).epsilon(1e-14));

    GridPtr other = make_grid(0.0, 2.0, 8);
    CHECK_THROWS_AS(phase_flow(v, zero_potential(other), cubic, 0.1), ConfigError);
}

TEST_CASE("tssp_step examples") {
    GridPtr g = make_grid(0.0, 1.0, 8);

    SUBCASE("beta = 0 degenerates to the free flow") {
        SplitConfig cfg = raw_config(Scheme::LieKineticLast, 0.01, 0.0, 1.0, g);
        SpectralField one = make_spectral(g);
        one.coeffs[2] = Complex(1.0, 0.0);
        SimulationState s = make_state(dst_synthesize(one));
        s = tssp_step(s, cfg);
        SpectralField after = dst_analyze(s.field);
        const double theta = 0.01 * g->mu[2] * g->mu[2];
        CHECK(std::abs(after.coeffs[2] - Complex(std::cos(theta), -std::sin(theta))) < 1e-13);
    }

    SUBCASE("tau = 0 is the analyze/synthesize round trip") {
        SplitConfig cfg = raw_config(Scheme::LieKineticLast, 0.0, -1.0, 0.5, g);
        NodalField v = oracle::random_nodal(g, 21);
        SimulationState s = tssp_step(make_state(v), cfg);
        CHECK(oracle::max_diff(s.field.values, v.values) <= 1e-12 * oracle::max_abs(v.values));
        CHECK(s.step_index == 1);
    }

    SUBCASE("one step matches a composition assembled from the direct-sum oracle") {
        SplitConfig cfg = raw_config(Scheme::LieKineticLast, 0.01, -1.0, 0.5, g);
        NodalField v0 =
            sample_nodal(g, [](double x) { return Complex(std::sin(M_PI * x), 0.0); });
        SimulationState s = tssp_step(make_state(v0), cfg);

        // oracle composition: scalar phases, direct analyze, scalar kinetic
        // phases, direct synthesize
        NodalField v1 = make_nodal(g);
        for (int j = 1; j < g->N; ++j) {
            const double rho = std::norm(v0.values[j]);
            const double theta = 0.01 * (-1.0 * std::sqrt(rho));
            v1.values[j] = v0.values[j] * Complex(std::cos(theta), -std::sin(theta));
        }
        SpectralField c1 = make_spectral(g);
        c1.coeffs = oracle::direct_analyze(v1);
        for (int l = 0; l < g->modes(); ++l) {
            const double theta = 0.01 * g->mu[l] * g->mu[l];
            c1.coeffs[l] *= Complex(std::cos(theta), -std::sin(theta));
        }
        auto expected = oracle::direct_synthesize(c1);
        CHECK(oracle::max_diff(s.field.values, expected) <= 1e-12 * oracle::max_abs(expected));
    }

    SUBCASE("scheme mismatch is rejected") {
        SplitConfig cfg = raw_config(Scheme::Strang, 0.01, -1.0, 0.5, g);
        CHECK_THROWS_AS(tssp_step(make_state(make_nodal(g)), cfg), ConfigError);
    }
}

TEST_CASE("tssp_step_alt") {
    GridPtr g = make_grid(0.0, 1.0, 16);

    SUBCASE("flows commute when beta = 0 and V = 0") {
        SplitConfig last = raw_config(Scheme::LieKineticLast, 0.02, 0.0, 1.0, g);
        SplitConfig first = raw_config(Scheme::LieKineticFirst, 0.02, 0.0, 1.0, g);
        NodalField v = oracle::random_nodal(g, 31);
        SimulationState a = tssp_step(make_state(v), last);
        SimulationState b = tssp_step_alt(make_state(v), first);
        CHECK(oracle::max_diff(a.field.values, b.field.values) <=
              1e-12 * oracle::max_abs(v.values));
    }

    SUBCASE("orderings differ by O(tau^2)") {
        NodalField v = oracle::smooth_field(g);
        auto diff_at = [&](double tau) {
            SplitConfig last = raw_config(Scheme::LieKineticLast, tau, -1.0, 1.0, g);
            SplitConfig first = raw_config(Scheme::LieKineticFirst, tau, -1.0, 1.0, g);
            SimulationState a = tssp_step(make_state(v), last);
            SimulationState b = tssp_step_alt(make_state(v), first);
            NodalField d = make_nodal(g);
            for (int j = 0; j <= g->N; ++j) d.values[j] = a.field.values[j] - b.field.values[j];
            return lp_norm_nodal(d, 2.0);
        };
        const double d1 = diff_at(0.02);
        const double d2 = diff_at(0.01);
        CHECK(d1 / d2 == doctest::Approx(4.0).epsilon(0.25));
    }
}

TEST_CASE("strang_step") {
    GridPtr g = make_grid(0.0, 1.0, 16);

    SUBCASE("beta = 0 equals one kinetic flow (phases add)") {
        SplitConfig cfg = raw_config(Scheme::Strang, 0.02, 0.0, 1.0, g);
        NodalField v = oracle::random_nodal(g, 41);
        SimulationState s = strang_step(make_state(v), cfg);
        NodalField expected = dst_synthesize(kinetic_flow(dst_analyze(v), 0.02));
        CHECK(oracle::max_diff(s.field.values, expected.values) <=
              1e-13 * oracle::max_abs(v.values));
    }

    SUBCASE("tau = 0 is the identity up to round trips") {
        SplitConfig cfg = raw_config(Scheme::Strang, 0.0, -1.0, 0.5, g);
        NodalField v = oracle::random_nodal(g, 43);
        SimulationState s = strang_step(make_state(v), cfg);
        CHECK(oracle::max_diff(s.field.values, v.values) <= 1e-12 * oracle::max_abs(v.values));
    }

    SUBCASE("time symmetry: forward then backward returns the state") {
        NodalField v = oracle::smooth_field(g);
        SplitConfig fwd = raw_config(Scheme::Strang, 0.02, -1.0, 0.5, g);
        SplitConfig bwd = raw_config(Scheme::Strang, -0.02, -1.0, 0.5, g);
        SimulationState s = strang_step(make_state(v), fwd);
        s = strang_step(s, bwd);
        NodalField d = make_nodal(g);
        for (int j = 0; j <= g->N; ++j) d.values[j] = s.field.values[j] - v.values[j];
        CHECK(lp_norm_nodal(d, 2.0) <= 1e-10 * lp_norm_nodal(v, 2.0));
    }
}

TEST_CASE("evolve") {
    GridPtr g = make_grid(-1.0, 1.0, 32);
    SplitConfig cfg = raw_config(Scheme::LieKineticLast, 0.005, -1.0, 0.5, g);
    NodalField v = oracle::smooth_field(g);

    SUBCASE("zero steps is the identity") {
        SimulationState s = evolve(make_state(v), cfg, 0);
        CHECK(oracle::max_diff(s.field.values, v.values) == 0.0);
        CHECK(s.step_index == 0);
    }

    SUBCASE("1 + 1 steps equal 2 steps bit for bit") {
        SimulationState a = evolve(evolve(make_state(v), cfg, 1), cfg, 1);
        SimulationState b = evolve(make_state(v), cfg, 2);
        REQUIRE(a.step_index == b.step_index);
        CHECK(a.time == b.time);
        for (int j = 0; j <= g->N; ++j) CHECK(a.field.values[j] == b.field.values[j]);
    }

    SUBCASE("deterministic rerun") {
        SimulationState a = evolve(make_state(v), cfg, 57);
        SimulationState b = evolve(make_state(v), cfg, 57);
        for (int j = 0; j <= g->N; ++j) CHECK(a.field.values[j] == b.field.values[j]);
    }

    SUBCASE("observer cadence") {
        std::vector<std::int64_t> seen;
        EvolveHooks hooks;
        hooks.every = 5;
        hooks.observe = [&](const SimulationState& s) { seen.push_back(s.step_index); };
        evolve(make_state(v), cfg, 12, hooks);
        CHECK(seen == std::vector<std::int64_t>{5, 10});
    }

    SUBCASE("negative step count is rejected") {
        CHECK_THROWS_AS(evolve(make_state(v), cfg, -1), ConfigError);
    }
}

TEST_CASE("mass is conserved over long runs for all schemes") {
    GridPtr g = make_grid(-1.0, 1.0, 64);
    NodalField v = oracle::smooth_field(g);
    const double m0 = lp_norm_nodal(v, 2.0);
    for (Scheme scheme : {Scheme::LieKineticLast, Scheme::LieKineticFirst, Scheme::Strang}) {
        SplitConfig cfg = raw_config(scheme, 0.001, -1.0, 0.5, g);
        SimulationState s = evolve(make_state(v), cfg, 10000);
        CAPTURE(scheme_name(scheme));
        CHECK(std::abs(lp_norm_nodal(s.field, 2.0) - m0) <= 1e-11 * m0);
    }
}

TEST_CASE("gauge covariance: constant potential shift is a global phase") {
    GridPtr g = make_grid(-1.0, 1.0, 32);
    const double shift = 1.7, tau = 0.01;
    const int n = 10;
    NodalField v = oracle::smooth_field(g);

    Potential v0 = zero_potential(g);
    Potential vc = zero_potential(g);
    for (double& x : vc.values) x = shift;

    SplitConfig cfg0{Scheme::LieKineticLast, tau, SemiSmoothNonlinearity{-1.0, 0.5}, v0};
    SplitConfig cfgc{Scheme::LieKineticLast, tau, SemiSmoothNonlinearity{-1.0, 0.5}, vc};
    SimulationState a = evolve(make_state(v), cfg0, n);
    SimulationState b = evolve(make_state(v), cfgc, n);

    const double theta = shift * n * tau;
    const Complex phase(std::cos(theta), std::sin(theta)); // remove e^{-i c n tau}
    double worst = 0.0;
    for (int j = 0; j <= g->N; ++j)
        worst = std::max(worst, std::abs(phase * b.field.values[j] - a.field.values[j]));
    CHECK(worst <= 1e-12 * oracle::max_abs(a.field.values));
}
