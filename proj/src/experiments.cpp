#include "tssp/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <limits>
#include <ostream>
#include <thread>

#include "tssp/dst.hpp"
#include "tssp/field_io.hpp"
#include "tssp/hash.hpp"
#include "tssp/norms.hpp"
#include "tssp/version.hpp"

namespace tssp {

std::uint64_t splitmix64_at(std::uint64_t seed, std::uint64_t counter) {
    std::uint64_t z = seed + (counter + 1) * 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

double uniform_pm1(std::uint64_t seed, std::uint64_t counter) {
    const double u = static_cast<double>(splitmix64_at(seed, counter) >> 11) * 0x1.0p-53;
    return 2.0 * u - 1.0;
}

NodalField make_type1(const GridPtr& g) {
    return sample_nodal(g, [](double x) { return Complex(x * std::exp(-0.5 * x * x), 0.0); });
}

SpectralField type2_coeffs(const GridPtr& g, std::uint64_t seed, double decay) {
    SpectralField c = make_spectral(g);
    for (int l = 2; l < g->N; l += 2) {
        const double scale = std::pow(g->mu[l - 1], -decay);
        c.coeffs[l - 1] = Complex(uniform_pm1(seed, 2 * static_cast<std::uint64_t>(l)),
                                  uniform_pm1(seed, 2 * static_cast<std::uint64_t>(l) + 1)) *
                          scale;
    }
    const double nrm = l2_norm(c);
    if (nrm == 0.0) throw ConfigError("type2: datum vanishes (no even modes on this grid)");
    for (Complex& z : c.coeffs) z /= nrm;
    return c;
}

NodalField make_type2(const GridPtr& g, std::uint64_t seed, double decay) {
    return dst_synthesize(type2_coeffs(g, seed, decay));
}

NodalField restrict_to(const NodalField& fine, const GridPtr& coarse) {
    require_nodal(fine);
    if (!refines(*coarse, *fine.grid))
        throw ConfigError("restrict_to: target grid must be nested in the source grid");
    const int stride = fine.grid->N / coarse->N;
    NodalField out = make_nodal(coarse);
    for (int j = 1; j < coarse->N; ++j) out.values[j] = fine.values[j * stride];
    return out;
}

namespace {

std::int64_t steps_for(double T, double tau, const char* who) {
    if (!(tau > 0.0)) throw ConfigError(std::string(who) + ": require tau > 0");
    const double ratio = T / tau;
    const auto n = static_cast<std::int64_t>(std::llround(ratio));
    if (n <= 0 || std::abs(n * tau - T) > 1e-9 * std::max(1.0, std::abs(T)))
        throw ConfigError(std::string(who) + ": T/tau = " + std::to_string(ratio) +
                          " is not a positive integer (T=" + std::to_string(T) +
                          ", tau=" + std::to_string(tau) + ")");
    return n;
}

void require_dyadic_decreasing(const std::vector<double>& taus) {
    if (taus.size() < 3) throw ConfigError("tau_list: need at least 3 dyadic steps");
    for (std::size_t i = 1; i < taus.size(); ++i)
        if (std::abs(taus[i] - 0.5 * taus[i - 1]) > 1e-9 * taus[i - 1])
            throw ConfigError("tau_list: entries must halve (dyadic, decreasing)");
}

void require_dyadic_increasing(const std::vector<int>& ns) {
    if (ns.size() < 3) throw ConfigError("N_list: need at least 3 dyadic resolutions");
    for (std::size_t i = 1; i < ns.size(); ++i)
        if (ns[i] != 2 * ns[i - 1])
            throw ConfigError("N_list: entries must double (dyadic, increasing)");
}

std::string reference_key(const StudyConfig& cfg, const InitialData& init, int refine) {
    char buf[256];
    std::snprintf(buf, sizeof buf, "ref1|%.17g|%.17g|%d|%.17g|%.17g|%.17g|%.17g|%s|%llu|%.17g",
                  cfg.a, cfg.b, cfg.reference.N * refine, cfg.reference.tau / refine, cfg.T,
                  cfg.sigma, cfg.beta, init.kind == InitialData::Kind::TypeI ? "t1" : "t2",
                  static_cast<unsigned long long>(init.seed), init.decay);
    return buf;
}

void run_indexed(std::size_t count, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const int k = static_cast<int>(std::min(static_cast<std::size_t>(threads), count));
    pool.reserve(k);
    for (int t = 0; t < k; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

} // namespace

NodalField initial_on(const StudyConfig& cfg, const InitialData& init, const GridPtr& run_grid) {
    if (init.kind == InitialData::Kind::TypeI) return make_type1(run_grid);
    GridPtr ref_grid = make_grid(cfg.a, cfg.b, cfg.reference.N);
    SpectralField c = type2_coeffs(ref_grid, init.seed, init.decay);
    if (same_grid(*run_grid, *ref_grid)) return dst_synthesize(c);
    if (refines(*run_grid, *ref_grid)) return restrict_to(dst_synthesize(c), run_grid);
    if (refines(*ref_grid, *run_grid)) return dst_synthesize(embed_to(c, run_grid));
    throw ConfigError("initial_on: run grid is not nested with the reference grid");
}

SpectralField reference_solution(const StudyConfig& cfg, const InitialData& init, int refine) {
    if (refine < 1) throw ConfigError("reference_solution: require refine >= 1");
    const int N = cfg.reference.N * refine;
    const double tau = cfg.reference.tau / refine;
    GridPtr grid = make_grid(cfg.a, cfg.b, N);

    namespace fs = std::filesystem;
    fs::path cache_path;
    if (!cfg.cache_dir.empty()) {
        cache_path = fs::path(cfg.cache_dir) /
                     ("ref_" + hex_u64(fnv1a64(reference_key(cfg, init, refine))) + ".fld");
        if (fs::exists(cache_path)) {
            FieldRecord rec = load_field(cache_path);
            SpectralField c = spectral_of(rec);
            if (!same_grid(*c.grid, *grid))
                throw ConfigError("reference cache: grid mismatch in " + cache_path.string());
            return c;
        }
    }

    const std::int64_t n = steps_for(cfg.T, tau, "reference_solution");
    SplitConfig run = make_split_config(Scheme::Strang, tau,
                                        make_nonlinearity(cfg.beta, cfg.sigma),
                                        zero_potential(grid));
    SimulationState s = make_state(initial_on(cfg, init, grid));
    s = evolve(std::move(s), run, n);
    SpectralField result = dst_analyze(s.field);

    if (!cache_path.empty()) {
        fs::create_directories(cache_path.parent_path());
        FieldRecord rec = record_of(result);
        rec.state = StateHeader{s.step_index, s.time, Scheme::Strang};
        save_field(cache_path, rec);
    }
    return result;
}

double reference_self_convergence(const StudyConfig& cfg, const InitialData& init) {
    SpectralField base = reference_solution(cfg, init, 1);
    SpectralField fine = reference_solution(cfg, init, 2);
    SpectralField diff = embed_to(base, fine.grid);
    for (int l = 0; l < fine.grid->modes(); ++l) diff.coeffs[l] -= fine.coeffs[l];
    return l2_norm(diff);
}

OrderFit fit_order(const std::vector<double>& resolutions, const std::vector<double>& errors,
                   double degeneracy_floor) {
    if (resolutions.size() != errors.size())
        throw ConfigError("fit_order: size mismatch");
    if (resolutions.size() < 3) throw ConfigError("fit_order: need at least 3 points");
    OrderFit fit;
    fit.resolutions = resolutions;
    fit.errors = errors;
    std::vector<double> x(resolutions.size()), y(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(resolutions[i] > 0.0)) throw ConfigError("fit_order: resolutions must be positive");
        if (!(errors[i] > 0.0)) throw ConfigError("fit_order: errors must be positive");
        x[i] = std::log2(resolutions[i]);
        y[i] = std::log2(errors[i]);
        if (errors[i] < degeneracy_floor) fit.degenerate = true;
    }
    double xm = 0.0, ym = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        xm += x[i];
        ym += y[i];
    }
    xm /= x.size();
    ym /= y.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - xm) * (y[i] - ym);
        sxx += (x[i] - xm) * (x[i] - xm);
    }
    if (sxx == 0.0) throw ConfigError("fit_order: resolutions must be distinct");
    fit.slope = sxy / sxx;
    fit.pair_slopes.resize(x.size() - 1);
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        fit.pair_slopes[i] = (y[i + 1] - y[i]) / (x[i + 1] - x[i]);
    return fit;
}

namespace {

SweepResult fit_sweep(std::vector<double> resolution, std::vector<ErrorNorms> errors,
                      double floor) {
    SweepResult r;
    std::vector<double> l2(errors.size()), h1(errors.size()), li(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) {
        l2[i] = errors[i].l2;
        h1[i] = errors[i].h1;
        li[i] = errors[i].linf;
    }
    r.resolution = std::move(resolution);
    r.errors = std::move(errors);
    r.l2 = fit_order(r.resolution, l2, floor);
    r.h1 = fit_order(r.resolution, h1, floor);
    r.linf = fit_order(r.resolution, li, floor);
    return r;
}

} // namespace

SweepResult temporal_sweep(const StudyConfig& cfg, const InitialData& init) {
    require_dyadic_decreasing(cfg.tau_list);
    SpectralField ref = reference_solution(cfg, init);
    GridPtr grid = ref.grid;
    const NodalField datum = initial_on(cfg, init, grid);
    const SemiSmoothNonlinearity nl = make_nonlinearity(cfg.beta, cfg.sigma);

    std::vector<ErrorNorms> errors(cfg.tau_list.size());
    run_indexed(cfg.tau_list.size(), cfg.threads, [&](std::size_t i) {
        const double tau = cfg.tau_list[i];
        const std::int64_t n = steps_for(cfg.T, tau, "temporal_sweep");
        SplitConfig run = make_split_config(cfg.scheme, tau, nl, zero_potential(grid));
        SimulationState s = evolve(make_state(datum), run, n);
        errors[i] = error_norms(s.field, ref);
    });
    return fit_sweep(cfg.tau_list, std::move(errors), 100.0 * std::numeric_limits<double>::epsilon() * l2_norm(ref));
}

SweepResult spatial_sweep(const StudyConfig& cfg, const InitialData& init) {
    require_dyadic_increasing(cfg.N_list);
    SpectralField ref = reference_solution(cfg, init);
    const SemiSmoothNonlinearity nl = make_nonlinearity(cfg.beta, cfg.sigma);
    const double tau = cfg.reference.tau;
    const std::int64_t n = steps_for(cfg.T, tau, "spatial_sweep");

    std::vector<double> resolution(cfg.N_list.size());
    std::vector<ErrorNorms> errors(cfg.N_list.size());
    run_indexed(cfg.N_list.size(), cfg.threads, [&](std::size_t i) {
        GridPtr grid = make_grid(cfg.a, cfg.b, cfg.N_list[i]);
        resolution[i] = grid->h;
        SplitConfig run = make_split_config(cfg.scheme, tau, nl, zero_potential(grid));
        SimulationState s = evolve(make_state(initial_on(cfg, init, grid)), run, n);
        errors[i] = error_norms(s.field, ref);
    });
    return fit_sweep(std::move(resolution), std::move(errors), 100.0 * std::numeric_limits<double>::epsilon() * l2_norm(ref));
}

std::vector<DriftSeries> energy_drift_study(const StudyConfig& cfg, const InitialData& init,
                                            const std::vector<double>& tau_list, double T_long) {
    if (cfg.N_list.empty()) throw ConfigError("energy_drift_study: N_list must name the mesh");
    GridPtr grid = make_grid(cfg.a, cfg.b, cfg.N_list.front());
    const NodalField datum = initial_on(cfg, init, grid);
    const SemiSmoothNonlinearity nl = make_nonlinearity(cfg.beta, cfg.sigma);
    const Potential pot = zero_potential(grid);

    std::vector<DriftSeries> out(tau_list.size());
    run_indexed(tau_list.size(), cfg.threads, [&](std::size_t i) {
        const double tau = tau_list[i];
        const std::int64_t n = steps_for(T_long, tau, "energy_drift_study");
        DriftSeries d;
        d.tau = tau;
        d.time.reserve(n + 1);
        d.rel_energy_err.reserve(n + 1);
        SimulationState s = make_state(datum);
        const double e0 = energy(s.field, pot, nl);
        const double m0 = mass(s.field);
        if (e0 == 0.0 || m0 == 0.0)
            throw ConfigError("energy_drift_study: datum has vanishing mass or energy");
        d.time.push_back(0.0);
        d.rel_energy_err.push_back(0.0);
        SplitConfig run = make_split_config(cfg.scheme, tau, nl, pot);
        EvolveHooks hooks;
        hooks.every = 1;
        hooks.observe = [&](const SimulationState& st) {
            const double rel = std::abs(energy(st.field, pot, nl) - e0) / std::abs(e0);
            d.time.push_back(st.time);
            d.rel_energy_err.push_back(rel);
            d.sup_raw = std::max(d.sup_raw, rel);
            d.max_mass_drift =
                std::max(d.max_mass_drift, std::abs(mass(st.field) - m0) / m0);
        };
        evolve(std::move(s), run, n, hooks);
        d.sup_normalized = d.sup_raw / tau;
        out[i] = std::move(d);
    });
    return out;
}

void write_sweep_csv(std::ostream& os, const SweepResult& r, std::string_view metadata) {
    os << "resolution,e_l2,e_h1,e_linf\n";
    os.precision(17);
    for (std::size_t i = 0; i < r.resolution.size(); ++i)
        os << r.resolution[i] << ',' << r.errors[i].l2 << ',' << r.errors[i].h1 << ','
           << r.errors[i].linf << '\n';
    os << "slope," << r.l2.slope << ',' << r.h1.slope << ',' << r.linf.slope << '\n';
    if (r.l2.degenerate || r.h1.degenerate || r.linf.degenerate) {
        os << "# degenerate_fit=";
        bool first = true;
        for (const auto& [name, fit] :
             {std::pair<const char*, const OrderFit*>{"l2", &r.l2}, {"h1", &r.h1},
              {"linf", &r.linf}}) {
            if (fit->degenerate) {
                if (!first) os << ',';
                os << name;
                first = false;
            }
        }
        os << '\n';
    }
    os << "# " << metadata << '\n';
}

void write_drift_csv(std::ostream& os, const std::vector<DriftSeries>& series,
                     std::string_view metadata) {
    os << "tau,time,rel_energy_err,rel_energy_err_over_tau\n";
    os.precision(17);
    for (const auto& d : series)
        for (std::size_t k = 0; k < d.time.size(); ++k)
            os << d.tau << ',' << d.time[k] << ',' << d.rel_energy_err[k] << ','
               << d.rel_energy_err[k] / d.tau << '\n';
    for (const auto& d : series)
        os << "# sup tau=" << d.tau << " raw=" << d.sup_raw
           << " normalized=" << d.sup_normalized << " mass_drift=" << d.max_mass_drift << '\n';
    os << "# " << metadata << '\n';
}

} // namespace tssp
