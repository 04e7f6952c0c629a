// tssp: split-step sine-pseudospectral solver for the 1D nonlinear
// Schroedinger equation with power-law nonlinearity, plus a convergence
// and conservation study harness.
//
// Exit codes: 0 success, 2 config error, 3 assertion failure, 4 runtime
// failure.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tssp/config.hpp"
#include "tssp/dst.hpp"
#include "tssp/experiments.hpp"
#include "tssp/field_io.hpp"
#include "tssp/hash.hpp"
#include "tssp/norms.hpp"
#include "tssp/observables.hpp"
#include "tssp/selftest.hpp"
#include "tssp/svg.hpp"
#include "tssp/version.hpp"

namespace {

using namespace tssp;

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open config file: " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string resolve_out_dir(const std::string& config_dir, const std::string& cli_dir) {
    if (!cli_dir.empty()) return cli_dir;
    if (const char* env = std::getenv("TSSP_OUT_DIR"); env && *env) return env;
    return config_dir;
}

std::string metadata_for(const Ini& ini) {
    return "config_hash=" + config_hash_hex(ini) + " version=" + std::string(kVersion);
}

int cmd_simulate(const std::string& config_path, const std::string& out_override) {
    const Ini ini = parse_ini(slurp(config_path));
    const RunConfig cfg = run_config_from_ini(ini);
    const std::string out_dir = resolve_out_dir(cfg.out_dir, out_override);
    std::filesystem::create_directories(out_dir);

    GridPtr grid = make_grid(cfg.a, cfg.b, cfg.N);
    const Potential pot = build_potential(cfg.potential, grid);
    const SemiSmoothNonlinearity nl = make_nonlinearity(cfg.beta, cfg.sigma);
    const SplitConfig run = make_split_config(cfg.scheme, cfg.tau, nl, pot);
    const auto n_steps = static_cast<std::int64_t>(std::llround(cfg.T / cfg.tau));

    SimulationState s = make_state(build_initial(cfg, grid));
    std::vector<ObservableRecord> rows;
    rows.push_back(observe(s, pot, nl));

    EvolveHooks hooks;
    hooks.every = 1;
    hooks.observe = [&](const SimulationState& st) {
        if (cfg.observe_every > 0 && st.step_index % cfg.observe_every == 0)
            rows.push_back(observe(st, pot, nl));
        if (cfg.checkpoint_every > 0 && st.step_index % cfg.checkpoint_every == 0) {
            char name[64];
            std::snprintf(name, sizeof name, "checkpoint_%08lld.fld",
                          static_cast<long long>(st.step_index));
            save_field(std::filesystem::path(out_dir) / name, record_of(st, cfg.scheme));
        }
    };

    const auto t0 = std::chrono::steady_clock::now();
    s = evolve(std::move(s), run, n_steps, hooks);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (rows.back().time != s.time) rows.push_back(observe(s, pot, nl));
    {
        std::ofstream os(std::filesystem::path(out_dir) / "observables.csv");
        write_observable_csv(os, rows, metadata_for(ini));
    }
    save_field(std::filesystem::path(out_dir) / "final.fld", record_of(s, cfg.scheme));

    nlohmann::json summary;
    summary["final_mass"] = rows.back().mass;
    summary["final_energy"] = rows.back().energy;
    summary["steps"] = s.step_index;
    summary["final_time"] = s.time;
    summary["wall_seconds"] = wall;
    summary["config_hash"] = config_hash_hex(ini);
    summary["version"] = kVersion;
    std::ofstream(std::filesystem::path(out_dir) / "summary.json") << summary.dump(2) << "\n";

    std::cout << "simulate: " << s.step_index << " steps to t=" << s.time << ", mass "
              << rows.back().mass << ", energy " << rows.back().energy << ", wrote " << out_dir
              << "\n";
    return 0;
}

struct NormSlopes {
    double l2, h1, linf;
    bool degenerate;
};

int cmd_converge(const std::string& config_path, const std::string& axis,
                 const std::string& out_override, bool paper_scale, int threads,
                 std::uint64_t seed_override, bool have_seed, bool svg) {
    if (axis != "time" && axis != "space")
        throw ConfigError("converge: --axis must be time or space");
    const Ini ini = parse_ini(slurp(config_path));
    StudyFileConfig cfg = study_config_from_ini(ini);
    if (paper_scale) apply_paper_scale(cfg.study);
    cfg.study.threads = threads;
    if (have_seed) cfg.seeds = {seed_override};
    if (cfg.init.kind == InitialData::Kind::TypeI && cfg.seeds.size() > 1)
        cfg.seeds.resize(1); // Type I has no seed dependence
    const std::string out_dir = resolve_out_dir(cfg.out_dir, out_override);
    std::filesystem::create_directories(out_dir);
    if (cfg.study.cache_dir.empty())
        cfg.study.cache_dir = (std::filesystem::path(out_dir) / "cache").string();

    std::vector<SweepResult> sweeps;
    for (std::uint64_t seed : cfg.seeds) {
        InitialData init = cfg.init;
        init.seed = seed;
        SweepResult r = axis == "time" ? temporal_sweep(cfg.study, init)
                                       : spatial_sweep(cfg.study, init);
        std::string name = "sweep_" + axis;
        if (cfg.seeds.size() > 1) name += "_seed" + std::to_string(seed);
        std::ofstream os(std::filesystem::path(out_dir) / (name + ".csv"));
        write_sweep_csv(os, r, metadata_for(ini));
        std::cout << "converge[" << axis << " seed=" << seed << "]: slopes l2=" << r.l2.slope
                  << " h1=" << r.h1.slope << " linf=" << r.linf.slope
                  << (r.l2.degenerate || r.h1.degenerate ? "  (degenerate fit)" : "") << "\n";
        sweeps.push_back(std::move(r));
    }

    if (svg) {
        LogLogPlot plot;
        plot.title = "convergence (" + axis + ")";
        plot.xlabel = axis == "time" ? "tau" : "h";
        plot.ylabel = "error";
        for (std::size_t i = 0; i < sweeps.size(); ++i) {
            SvgSeries l2{"L2 seed" + std::to_string(cfg.seeds[i]), sweeps[i].resolution, {}};
            SvgSeries h1{"H1 seed" + std::to_string(cfg.seeds[i]), sweeps[i].resolution, {}};
            for (const auto& e : sweeps[i].errors) {
                l2.y.push_back(e.l2);
                h1.y.push_back(e.h1);
            }
            plot.series.push_back(std::move(l2));
            plot.series.push_back(std::move(h1));
        }
        if (cfg.asserts.l2_min) plot.guide_orders.push_back(*cfg.asserts.l2_min);
        if (cfg.asserts.h1_min) plot.guide_orders.push_back(*cfg.asserts.h1_min);
        if (plot.guide_orders.empty()) plot.guide_orders.push_back(sweeps.front().l2.slope);
        std::ofstream os(std::filesystem::path(out_dir) / ("sweep_" + axis + ".svg"));
        write_loglog_svg(os, plot);
    }

    // min slope over seeds is what the assertions judge
    NormSlopes min_slopes{sweeps.front().l2.slope, sweeps.front().h1.slope,
                          sweeps.front().linf.slope,
                          sweeps.front().l2.degenerate || sweeps.front().h1.degenerate ||
                              sweeps.front().linf.degenerate};
    for (const auto& r : sweeps) {
        min_slopes.l2 = std::min(min_slopes.l2, r.l2.slope);
        min_slopes.h1 = std::min(min_slopes.h1, r.h1.slope);
        min_slopes.linf = std::min(min_slopes.linf, r.linf.slope);
        min_slopes.degenerate |= r.l2.degenerate || r.h1.degenerate || r.linf.degenerate;
    }

    const bool have_asserts =
        cfg.asserts.l2_min || cfg.asserts.h1_min || cfg.asserts.linf_min;
    if (min_slopes.degenerate) {
        std::cout << "converge: degenerate fit (errors at rounding level); no order reported\n";
        if (have_asserts) throw AssertionFailure("degenerate fit: slope assertions not evaluable");
        return 0;
    }
    if (have_asserts) {
        std::string failed;
        auto check = [&](const char* name, std::optional<double> want, double got) {
            if (want && got < *want)
                failed += std::string(failed.empty() ? "" : "; ") + name + " slope " +
                          std::to_string(got) + " < " + std::to_string(*want);
        };
        check("l2", cfg.asserts.l2_min, min_slopes.l2);
        check("h1", cfg.asserts.h1_min, min_slopes.h1);
        check("linf", cfg.asserts.linf_min, min_slopes.linf);
        if (!failed.empty()) throw AssertionFailure("slope assertion failed: " + failed);
        std::cout << "converge: all slope assertions passed\n";
    }
    return 0;
}

int cmd_observables(const std::string& config_path, const std::string& checkpoint_path) {
    const Ini ini = parse_ini(slurp(config_path));
    const RunConfig cfg = run_config_from_ini(ini);
    FieldRecord rec = load_field(checkpoint_path);
    NodalField v = rec.spectral ? dst_synthesize(spectral_of(rec)) : nodal_of(rec);
    const Potential pot = build_potential(cfg.potential, v.grid);
    const SemiSmoothNonlinearity nl = make_nonlinearity(cfg.beta, cfg.sigma);
    SimulationState s{v, rec.state ? rec.state->step_index : 0,
                      rec.state ? rec.state->time : 0.0};
    std::vector<ObservableRecord> rows{observe(s, pot, nl)};
    write_observable_csv(std::cout, rows, metadata_for(ini));
    return 0;
}

int cmd_reference(const std::string& config_path, const std::string& out_override,
                  bool paper_scale, int threads) {
    const Ini ini = parse_ini(slurp(config_path));
    StudyFileConfig cfg = study_config_from_ini(ini);
    if (paper_scale) apply_paper_scale(cfg.study);
    cfg.study.threads = threads;
    const std::string out_dir = resolve_out_dir(cfg.out_dir, out_override);
    if (cfg.study.cache_dir.empty())
        cfg.study.cache_dir = (std::filesystem::path(out_dir) / "cache").string();
    for (std::uint64_t seed : cfg.seeds) {
        InitialData init = cfg.init;
        init.seed = seed;
        const auto t0 = std::chrono::steady_clock::now();
        SpectralField ref = reference_solution(cfg.study, init);
        const double wall =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cout << "reference[seed=" << seed << "]: N=" << ref.grid->N
                  << " tau=" << cfg.study.reference.tau << " |psi(T)|_L2=" << l2_norm(ref)
                  << " (" << wall << "s, cache " << cfg.study.cache_dir << ")\n";
        if (cfg.init.kind == InitialData::Kind::TypeI) break;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"split-step sine-pseudospectral NLSE solver and study harness"};
    app.require_subcommand(1);

    std::string config_path, out_dir, axis = "time", checkpoint_path;
    std::uint64_t seed = 0;
    bool paper_scale = false, svg = false, inject_qeps = false;
    int threads = 1;

    auto* sim = app.add_subcommand("simulate", "run one simulation from a config file");
    sim->add_option("--config", config_path, "config file")->required();
    sim->add_option("--out", out_dir, "output directory (overrides config and TSSP_OUT_DIR)");

    auto* conv = app.add_subcommand("converge", "run a convergence study");
    conv->add_option("--config", config_path, "study config file")->required();
    conv->add_option("--axis", axis, "time or space")->required();
    conv->add_option("--out", out_dir, "output directory");
    conv->add_option("--seed", seed, "override the Type II seed list with one seed");
    conv->add_option("--threads", threads, "parallel runs within a sweep");
    conv->add_flag("--paper-scale", paper_scale, "reference at h=2^-9, tau=1e-6");
    conv->add_flag("--svg", svg, "emit a log-log SVG plot");

    auto* obs = app.add_subcommand("observables", "print observables of a checkpoint");
    obs->add_option("--config", config_path, "config file")->required();
    obs->add_option("--checkpoint", checkpoint_path, "checkpoint file")->required();

    auto* self = app.add_subcommand("selftest", "run the certified property suites");
    self->add_flag("--inject-qeps-fault", inject_qeps, "corrupt one Q_eps coefficient (test hook)")
        ->group("");

    auto* ref = app.add_subcommand("reference", "build reference solutions");
    ref->add_flag("--build-cache", "populate the reference cache");
    ref->add_option("--config", config_path, "study config file")->required();
    ref->add_option("--out", out_dir, "output directory");
    ref->add_option("--threads", threads, "parallel runs");
    ref->add_flag("--paper-scale", paper_scale, "reference at h=2^-9, tau=1e-6");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sim->parsed()) return cmd_simulate(config_path, out_dir);
        if (conv->parsed())
            return cmd_converge(config_path, axis, out_dir, paper_scale, threads, seed,
                                conv->count("--seed") > 0, svg);
        if (obs->parsed()) return cmd_observables(config_path, checkpoint_path);
        if (self->parsed()) return run_selftest(std::cout, inject_qeps);
        if (ref->parsed()) return cmd_reference(config_path, out_dir, paper_scale, threads);
    } catch (const ConfigError& e) {
        std::cerr << "tssp: config error: " << e.what() << "\n";
        return 2;
    } catch (const AssertionFailure& e) {
        std::cerr << "tssp: assertion failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "tssp: error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
