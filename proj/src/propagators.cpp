#include "tssp/propagators.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace tssp {

Potential zero_potential(GridPtr g) {
    Potential p;
    p.values.assign(g->N + 1, 0.0);
    p.grid = std::move(g);
    return p;
}

Potential harmonic_potential(GridPtr g, double omega) {
    Potential p;
    p.values.resize(g->N + 1);
    for (int j = 0; j <= g->N; ++j) {
        const double x = g->nodes[j];
        p.values[j] = 0.5 * omega * omega * x * x;
    }
    p.grid = std::move(g);
    return p;
}

Potential sampled_potential(GridPtr g, std::vector<double> values) {
    if (static_cast<int>(values.size()) != g->N + 1)
        throw ConfigError("potential: expected N+1 = " + std::to_string(g->N + 1) +
                          " samples, got " + std::to_string(values.size()));
    return Potential{std::move(g), std::move(values)};
}

const char* scheme_name(Scheme s) {
    switch (s) {
        case Scheme::LieKineticLast: return "lie";
        case Scheme::LieKineticFirst: return "lie_alt";
        case Scheme::Strang: return "strang";
    }
    return "?";
}

std::optional<Scheme> scheme_from_name(std::string_view name) {
    if (name == "lie") return Scheme::LieKineticLast;
    if (name == "lie_alt") return Scheme::LieKineticFirst;
    if (name == "strang") return Scheme::Strang;
    return std::nullopt;
}

SplitConfig make_split_config(Scheme scheme, double tau, const SemiSmoothNonlinearity& nl,
                              Potential pot) {
    if (!(tau > 0.0)) throw ConfigError("split config: require tau > 0");
    if (!(nl.sigma > 0.0)) throw ConfigError("split config: require sigma > 0");
    if (!pot.grid) throw ConfigError("split config: potential has no grid");
    return SplitConfig{scheme, tau, nl, std::move(pot)};
}

SimulationState make_state(NodalField initial) {
    require_nodal(initial);
    return SimulationState{std::move(initial), 0, 0.0};
}

SpectralField kinetic_flow(const SpectralField& c, double t) {
    require_spectral(c);
    SpectralField out = make_spectral(c.grid);
    for (int l = 0; l < c.grid->modes(); ++l) {
        const double theta = t * c.grid->mu[l] * c.grid->mu[l];
        out.coeffs[l] = c.coeffs[l] * Complex(std::cos(theta), -std::sin(theta));
    }
    return out;
}

NodalField phase_flow(const NodalField& v, const Potential& pot,
                      const SemiSmoothNonlinearity& nl, double t) {
    require_nodal(v);
    if (!pot.grid || !same_grid(*pot.grid, *v.grid))
        throw ConfigError("phase_flow: potential grid does not match the field grid");
    NodalField out = make_nodal(v.grid);
    for (int j = 1; j < v.grid->N; ++j) {
        const double rho = std::norm(v.values[j]);
        const double theta = t * (pot.values[j] + f_eval(nl, rho));
        out.values[j] = v.values[j] * Complex(std::cos(theta), -std::sin(theta));
    }
    return out;
}

namespace {

SimulationState stepped(const SimulationState& s, NodalField next, double tau) {
    SimulationState out;
    out.field = std::move(next);
    out.step_index = s.step_index + 1;
    out.time = static_cast<double>(out.step_index) * tau;
    return out;
}

void require_scheme(const SplitConfig& cfg, Scheme expected, const char* who) {
    if (cfg.scheme != expected)
        throw ConfigError(std::string(who) + ": config scheme is " + scheme_name(cfg.scheme) +
                          ", expected " + scheme_name(expected));
}

} // namespace

SimulationState tssp_step(const SimulationState& s, const SplitConfig& cfg) {
    require_scheme(cfg, Scheme::LieKineticLast, "tssp_step");
    NodalField v1 = phase_flow(s.field, cfg.pot, cfg.nl, cfg.tau);
    SpectralField c = kinetic_flow(dst_analyze(v1), cfg.tau);
    return stepped(s, dst_synthesize(c), cfg.tau);
}

SimulationState tssp_step_alt(const SimulationState& s, const SplitConfig& cfg) {
    require_scheme(cfg, Scheme::LieKineticFirst, "tssp_step_alt");
    SpectralField c = kinetic_flow(dst_analyze(s.field), cfg.tau);
    NodalField v1 = phase_flow(dst_synthesize(c), cfg.pot, cfg.nl, cfg.tau);
    return stepped(s, std::move(v1), cfg.tau);
}

SimulationState strang_step(const SimulationState& s, const SplitConfig& cfg) {
    require_scheme(cfg, Scheme::Strang, "strang_step");
    const double half = 0.5 * cfg.tau;
    NodalField v1 = dst_synthesize(kinetic_flow(dst_analyze(s.field), half));
    NodalField v2 = phase_flow(v1, cfg.pot, cfg.nl, cfg.tau);
    NodalField v3 = dst_synthesize(kinetic_flow(dst_analyze(v2), half));
    return stepped(s, std::move(v3), cfg.tau);
}

SimulationState advance(const SimulationState& s, const SplitConfig& cfg) {
    switch (cfg.scheme) {
        case Scheme::LieKineticLast: return tssp_step(s, cfg);
        case Scheme::LieKineticFirst: return tssp_step_alt(s, cfg);
        case Scheme::Strang: return strang_step(s, cfg);
    }
    throw ConfigError("advance: unknown scheme");
}

SimulationState evolve(SimulationState s, const SplitConfig& cfg, std::int64_t n_steps,
                       const EvolveHooks& hooks) {
    if (n_steps < 0) throw ConfigError("evolve: require n_steps >= 0");
    if (std::abs(cfg.tau) >= 1.0)
        std::fprintf(stderr,
                     "tssp: warning: |tau| = %g >= 1 exceeds the d=1 step size guideline\n",
                     cfg.tau);
    for (std::int64_t k = 0; k < n_steps; ++k) {
        try {
            s = advance(s, cfg);
        } catch (const std::exception& e) {
            throw std::runtime_error("evolve: step " + std::to_string(s.step_index + 1) +
                                     " failed: " + e.what());
        }
        if (hooks.every > 0 && hooks.observe && s.step_index % hooks.every == 0) hooks.observe(s);
    }
    return s;
}

} // namespace tssp
