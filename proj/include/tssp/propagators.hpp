#pragma once
#include <cstdint>
#include <functional>
#include <optional>
#include <string_view>

#include "tssp/dst.hpp"
#include "tssp/grid.hpp"
#include "tssp/nonlinearity.hpp"

namespace tssp {

// Time-independent real potential sampled at the nodes.
struct Potential {
    GridPtr grid;
    std::vector<double> values; // size N+1
};

Potential zero_potential(GridPtr g);
Potential harmonic_potential(GridPtr g, double omega); // V(x) = omega^2 x^2 / 2
Potential sampled_potential(GridPtr g, std::vector<double> values);

// Splitting variants. Lie steps are first order; Strang is the symmetric
// second-order composition kinetic(t/2) -> phase(t) -> kinetic(t/2) used
// for reference solutions.
enum class Scheme {
    LieKineticLast,  // phase, then kinetic
    LieKineticFirst, // kinetic, then phase
    Strang,
};

const char* scheme_name(Scheme s);
std::optional<Scheme> scheme_from_name(std::string_view name);

struct SplitConfig {
    Scheme scheme = Scheme::LieKineticLast;
    double tau = 0.0; // > 0
    SemiSmoothNonlinearity nl{};
    Potential pot{};
};

/// Validates tau > 0 and the potential grid.
SplitConfig make_split_config(Scheme scheme, double tau, const SemiSmoothNonlinearity& nl,
                              Potential pot);

struct SimulationState {
    NodalField field;
    std::int64_t step_index = 0;
    double time = 0.0; // = step_index * tau
};

SimulationState make_state(NodalField initial);

// Exact sub-flows. Both are isometries: the kinetic flow multiplies each
// coefficient by the unit phase e^{-i t mu_l^2}; the phase flow multiplies
// each node by e^{-i t (V(x_j) + f(|v_j|^2))} and leaves every |v_j|
// unchanged. Negative t is allowed (backward flow).
SpectralField kinetic_flow(const SpectralField& c, double t);
NodalField phase_flow(const NodalField& v, const Potential& pot,
                      const SemiSmoothNonlinearity& nl, double t);

/// One Lie step, phase flow first:
///   v^(1)_j = e^{-i tau (V_j + f(|v_j|^2))} v_j,  then
///   c <- analyze(v^(1)),  c_l <- e^{-i tau mu_l^2} c_l,  v <- synthesize(c).
/// Requires cfg.scheme == LieKineticLast.
SimulationState tssp_step(const SimulationState& s, const SplitConfig& cfg);

/// The alternate Lie ordering (kinetic flow first). Requires LieKineticFirst.
SimulationState tssp_step_alt(const SimulationState& s, const SplitConfig& cfg);

/// Symmetric composition kinetic(tau/2), phase(tau), kinetic(tau/2).
/// Requires cfg.scheme == Strang.
SimulationState strang_step(const SimulationState& s, const SplitConfig& cfg);

/// Dispatches on cfg.scheme.
SimulationState advance(const SimulationState& s, const SplitConfig& cfg);

// Observation hooks for evolve. The callback must not mutate the state.
struct EvolveHooks {
    std::int64_t every = 0; // 0: never observe
    std::function<void(const SimulationState&)> observe;
};

/// Applies the configured step n_steps times; steps are applied literally
/// one after another (no fusion), so two consecutive evolve calls equal a
/// single longer one bit for bit. Observation fires after each step whose
/// index is a multiple of hooks.every. A step error is rethrown with the
/// failing step index. Prints a one-line warning when tau >= 1 (the d = 1
/// step size guideline); never enforces it.
SimulationState evolve(SimulationState s, const SplitConfig& cfg, std::int64_t n_steps,
                       const EvolveHooks& hooks = {});

} // namespace tssp
