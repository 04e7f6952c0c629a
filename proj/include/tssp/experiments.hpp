#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "tssp/grid.hpp"
#include "tssp/observables.hpp"
#include "tssp/propagators.hpp"

namespace tssp {

// Deterministic cross-platform uniforms: the SplitMix64 finalizer applied
// to seed + (counter+1)*0x9E3779B97F4A7C15 (i.e. SplitMix64 evaluated in
// counter mode). uniform_pm1 maps the top 53 bits to [0,1) and then to
// [-1,1).
std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter);
double uniform_pm1(std::uint64_t seed, std::uint64_t counter);

struct InitialData {
    enum class Kind { TypeI, TypeII };
    Kind kind = Kind::TypeI;
    std::uint64_t seed = 1; // TypeII only
    double decay = 2.5;     // TypeII spectral decay exponent

    bool operator==(const InitialData&) const = default;
};

/// Smooth odd datum x e^{-x^2/2} sampled at the nodes (endpoints forced
/// to exactly zero).
NodalField make_type1(const GridPtr& g);

/// Random H^2-type datum: coefficients (uniform_pm1 + i uniform_pm1) for
/// even l, zero for odd l, scaled by |mu_l|^{-decay}, synthesized and
/// normalized to unit L^2 norm. Mode l draws counters 2l and 2l+1, so the
/// same seed defines one function regardless of N.
NodalField make_type2(const GridPtr& g, std::uint64_t seed, double decay = 2.5);

/// The normalized Type II coefficient vector itself.
SpectralField type2_coeffs(const GridPtr& g, std::uint64_t seed, double decay = 2.5);

/// Nodal restriction of a fine field onto a nested coarse grid (stride
/// subsampling; exact since the coarse nodes are fine nodes).
NodalField restrict_to(const NodalField& fine, const GridPtr& coarse);

struct ReferenceSpec {
    int N = 4096;      // reference mesh subintervals
    double tau = 1e-5; // reference time step

    bool operator==(const ReferenceSpec&) const = default;
};

struct StudyConfig {
    double a = -16.0, b = 16.0;
    double sigma = 0.5;
    double beta = -1.0;
    double T = 1.0;
    Scheme scheme = Scheme::LieKineticLast; // scheme under study
    std::vector<double> tau_list;           // temporal axis (dyadic, decreasing)
    std::vector<int> N_list;                // spatial axis (dyadic, increasing)
    ReferenceSpec reference{};
    std::string cache_dir; // empty disables the reference cache
    int threads = 1;       // independent runs within a sweep may run in parallel

    bool operator==(const StudyConfig&) const = default;
};

/// The study's initial datum on an arbitrary run grid. Type I samples the
/// analytic formula; Type II is constructed on the reference grid and
/// carried to the run grid exactly (restriction for coarser grids,
/// coefficient embedding for finer ones).
NodalField initial_on(const StudyConfig& cfg, const InitialData& init, const GridPtr& run_grid);

/// Evolves the datum to time T with the Strang stepper on the reference
/// grid and step, returning the spectral representation of the final
/// state. Results are cached on disk keyed by a content hash of the
/// configuration and datum; a cache hit returns bit-identical
/// coefficients. refine > 1 reruns the same continuous datum at
/// (refine*N_ref, tau_ref/refine) for self-convergence checks.
SpectralField reference_solution(const StudyConfig& cfg, const InitialData& init,
                                 int refine = 1);

/// L^2 distance between the reference and the (2 N_ref, tau_ref/2) rerun.
double reference_self_convergence(const StudyConfig& cfg, const InitialData& init);

struct OrderFit {
    std::vector<double> resolutions;
    std::vector<double> errors;
    double slope = 0.0;
    std::vector<double> pair_slopes; // adjacent-pair slopes
    bool degenerate = false;         // some error below the rounding floor
};

/// Least-squares slope of log2(error) against log2(resolution); at least
/// three points, errors strictly positive. Any error below
/// degeneracy_floor flags the fit as degenerate.
OrderFit fit_order(const std::vector<double>& resolutions, const std::vector<double>& errors,
                   double degeneracy_floor = 0.0);

struct SweepResult {
    std::vector<double> resolution; // tau (temporal) or h (spatial)
    std::vector<ErrorNorms> errors; // one row per resolution
    OrderFit l2, h1, linf;
};

/// Temporal convergence at fixed reference mesh: one run per tau in
/// cfg.tau_list, errors against the reference at t = T, slopes per norm.
SweepResult temporal_sweep(const StudyConfig& cfg, const InitialData& init);

/// Spatial convergence at fixed tau = cfg.reference.tau over cfg.N_list.
SweepResult spatial_sweep(const StudyConfig& cfg, const InitialData& init);

struct DriftSeries {
    double tau = 0.0;
    std::vector<double> time;
    std::vector<double> rel_energy_err; // |E^k - E^0| / |E^0|
    double sup_raw = 0.0;               // sup_t rel_energy_err
    double sup_normalized = 0.0;        // sup_t rel_energy_err / tau
    double max_mass_drift = 0.0;        // sup_t |M^k - M^0| / M^0
};

/// Energy drift on a fixed mesh (cfg.N_list.front()) for each tau in
/// tau_list, up to time T_long. tau_list here is the figure's own list
/// and is exempt from the dyadic requirement; T_long/tau must still be
/// integral.
std::vector<DriftSeries> energy_drift_study(const StudyConfig& cfg, const InitialData& init,
                                            const std::vector<double>& tau_list, double T_long);

/// Sweep CSV: resolution,e_l2,e_h1,e_linf rows, a slope footer row, and a
/// trailing metadata comment.
void write_sweep_csv(std::ostream& os, const SweepResult& r, std::string_view metadata);

/// Drift CSV: tau,time,rel_energy_err,rel_energy_err_over_tau rows plus
/// per-tau sup footer rows and a metadata comment.
void write_drift_csv(std::ostream& os, const std::vector<DriftSeries>& series,
                     std::string_view metadata);

} // namespace tssp
