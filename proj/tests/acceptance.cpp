// Acceptance suite: runs each criterion at its stated tolerance and
// prints one pass/fail line per criterion.
//
//   acceptance warmup [--cache-dir D] [--threads K]   precompute references
//   acceptance run [--criterion K] [--cache-dir D] [--tssp-bin PATH]
//
// Criterion 8 (the paper-scale protocol) is not an automated check; `run`
// prints an informational line for it.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <functional>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "tssp/experiments.hpp"
#include "tssp/norms.hpp"
#include "tssp/selftest.hpp"

using namespace tssp;

namespace {

std::string g_cache_dir = "acceptance_cache";
std::string g_tssp_bin;
int g_threads = 1;

StudyConfig type2_study(double sigma) {
    StudyConfig cfg;
    cfg.a = -1.0;
    cfg.b = 1.0;
    cfg.sigma = sigma;
    cfg.beta = -1.0;
    cfg.T = 1.0;
    cfg.tau_list = {0.1, 0.05, 0.025, 0.0125, 0.00625, 0.003125};
    cfg.N_list = {64, 128, 256, 512};
    cfg.cache_dir = g_cache_dir;
    return cfg;
}

StudyConfig type1_study(double sigma) {
    StudyConfig cfg = type2_study(sigma);
    cfg.a = -16.0;
    cfg.b = 16.0;
    return cfg;
}

InitialData type2_init(std::uint64_t seed) {
    InitialData init;
    init.kind = InitialData::Kind::TypeII;
    init.seed = seed;
    return init;
}

struct Criterion {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail += (detail.empty() ? "" : "; ") + what + (ok ? " [ok]" : " [FAIL]");
    }
};

std::string fmt(const char* pattern, double a, double b = 0, double c = 0) {
    char buf[200];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

bool suite_passes(const std::vector<CheckResult>& results, std::string& detail) {
    int ok = 0;
    std::string failed;
    for (const auto& r : results)
        if (r.pass) ++ok;
        else failed += " " + r.name;
    detail = std::to_string(ok) + "/" + std::to_string(results.size()) + " checks";
    if (!failed.empty()) detail += "; failed:" + failed;
    return ok == static_cast<int>(results.size());
}

Criterion criterion_1() {
    Criterion c;
    c.pass = suite_passes(certify_transforms(), c.detail);
    return c;
}

Criterion criterion_2() {
    Criterion c;
    c.pass = suite_passes(certify_conservation(), c.detail);
    return c;
}

Criterion criterion_3() {
    Criterion c;
    c.pass = suite_passes(certify_regularization(false), c.detail);
    return c;
}

Criterion criterion_4() {
    Criterion c;
    c.pass = suite_passes(certify_norm_equivalence(), c.detail);
    return c;
}

Criterion criterion_5() {
    Criterion c;
    // (a) sigma = 0.5, Type II, minimum slope over 3 seeds
    double min_l2 = 1e9, min_h1 = 1e9;
    for (std::uint64_t seed : {1ull, 2ull, 3ull}) {
        SweepResult r = temporal_sweep(type2_study(0.5), type2_init(seed));
        min_l2 = std::min(min_l2, r.l2.slope);
        min_h1 = std::min(min_h1, r.h1.slope);
    }
    c.require(min_l2 >= 0.85, fmt("5a sigma=0.5 TypeII min L2 slope %.3f >= 0.85", min_l2));
    c.require(min_h1 >= 0.35, fmt("5a min H1 slope %.3f >= 0.35", min_h1));

    // (b) sigma in {0.1..0.4}, Type I: proved lower bound 1/2 + sigma - 0.15
    for (double sigma : {0.1, 0.2, 0.3, 0.4}) {
        SweepResult r = temporal_sweep(type1_study(sigma), InitialData{});
        const double bound = 0.5 + sigma - 0.15;
        c.require(r.l2.slope >= bound,
                  fmt("5b sigma=%.1f TypeI L2 slope %.3f >= %.2f (observed ~1 reported, not asserted)",
                      sigma, r.l2.slope, bound));
    }

    // (c) sigma = 0.75, Type I, H1
    SweepResult r = temporal_sweep(type1_study(0.75), InitialData{});
    c.require(r.h1.slope >= 0.6, fmt("5c sigma=0.75 TypeI H1 slope %.3f >= 0.6", r.h1.slope));
    return c;
}

Criterion criterion_6() {
    Criterion c;
    SweepResult t2 = spatial_sweep(type2_study(0.5), type2_init(1));
    c.require(t2.l2.slope >= 1.8, fmt("6 sigma=0.5 TypeII L2 slope %.3f >= 1.8", t2.l2.slope));
    c.require(t2.h1.slope >= 0.8, fmt("6 sigma=0.5 TypeII H1 slope %.3f >= 0.8", t2.h1.slope));

    for (double sigma : {0.1, 0.3}) {
        SweepResult r = spatial_sweep(type1_study(sigma), InitialData{});
        const double bound = 1.0 + 2.0 * sigma - 0.2;
        c.require(r.l2.slope >= bound,
                  fmt("6 sigma=%.1f TypeI L2 slope %.3f >= %.2f", sigma, r.l2.slope, bound));
    }
    return c;
}

Criterion criterion_7() {
    Criterion c;
    // self-convergence of every acceptance study's reference (Type II
    // multi-seed studies are represented by seed 1)
    {
        const double d = reference_self_convergence(type2_study(0.5), type2_init(1));
        c.require(d <= 1e-7, fmt("7 selfconv TypeII sigma=0.5 L2 diff %.3g <= 1e-7", d));
    }
    for (double sigma : {0.1, 0.2, 0.3, 0.4, 0.75, 1.0}) {
        const double d = reference_self_convergence(type1_study(sigma), InitialData{});
        c.require(d <= 1e-7, fmt("7 selfconv TypeI sigma=%.2f L2 diff %.3g <= 1e-7", sigma, d));
    }

    // Strang temporal order ~2 on the smooth cubic case
    StudyConfig strang = type1_study(1.0);
    strang.scheme = Scheme::Strang;
    strang.tau_list = {0.1, 0.05, 0.025, 0.0125, 0.00625};
    SweepResult r = temporal_sweep(strang, InitialData{});
    c.require(r.l2.slope >= 1.8,
              fmt("7 Strang sigma=1 TypeI L2 slope %.3f >= 1.8", r.l2.slope));
    return c;
}

Criterion criterion_9() {
    Criterion c;
    if (g_tssp_bin.empty()) {
        c.pass = false;
        c.detail = "9 needs --tssp-bin PATH to run `tssp selftest`";
        return c;
    }
    const std::string cmd = g_tssp_bin + " selftest > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    c.require(WEXITSTATUS(rc) == 0,
              "9 `tssp selftest` exit " + std::to_string(WEXITSTATUS(rc)) + " == 0");
    return c;
}

void run_parallel(const std::vector<std::function<void()>>& jobs) {
    if (g_threads <= 1) {
        for (const auto& j : jobs) j();
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    const std::size_t k = std::min<std::size_t>(g_threads, jobs.size());
    for (std::size_t t = 0; t < k; ++t)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < jobs.size(); i = next.fetch_add(1))
                jobs[i]();
        });
    for (auto& th : pool) th.join();
}

int warmup() {
    std::vector<std::function<void()>> jobs;
    for (std::uint64_t seed : {1ull, 2ull, 3ull})
        jobs.push_back([seed] { reference_solution(type2_study(0.5), type2_init(seed)); });
    jobs.push_back([] { reference_solution(type2_study(0.5), type2_init(1), 2); });
    for (double sigma : {0.1, 0.2, 0.3, 0.4, 0.75, 1.0}) {
        jobs.push_back([sigma] { reference_solution(type1_study(sigma), InitialData{}); });
        jobs.push_back([sigma] { reference_solution(type1_study(sigma), InitialData{}, 2); });
    }
    const auto t0 = std::chrono::steady_clock::now();
    run_parallel(jobs);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("warmup: %zu references ready in %s (%.1fs)\n", jobs.size(),
                g_cache_dir.c_str(), wall);
    return 0;
}

int run(int which) {
    struct Entry {
        int id;
        const char* name;
        std::function<Criterion()> fn;
    };
    const std::vector<Entry> entries = {
        {1, "transform-correctness", criterion_1},
        {2, "conservation", criterion_2},
        {3, "regularization-certificates", criterion_3},
        {4, "norm-equivalence", criterion_4},
        {5, "temporal-orders", criterion_5},
        {6, "spatial-orders", criterion_6},
        {7, "strang-reference-validity", criterion_7},
        {9, "selftest-fresh-build", criterion_9},
    };

    bool all_pass = true;
    bool ran_any = false;
    for (const auto& e : entries) {
        if (which != 0 && which != e.id) continue;
        ran_any = true;
        Criterion c = e.fn();
        std::printf("[%d] %-28s %s  (%s)\n", e.id, e.name, c.pass ? "PASS" : "FAIL",
                    c.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && c.pass;
    }
    if (which == 0 || which == 8) {
        ran_any = true;
        std::printf("[8] paper-scale-protocol       NOTE  (not part of automated acceptance; "
                    "run `tssp converge --paper-scale` for the h=2^-9, tau=1e-6 protocol)\n");
    }
    if (!ran_any) {
        std::fprintf(stderr, "acceptance: unknown criterion\n");
        return 2;
    }
    return all_pass ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    std::string mode = argc > 1 ? argv[1] : "run";
    int which = 0;
    for (int i = 2; i < argc; ++i) {
        const std::string arg = argv[i];
        auto next = [&]() -> std::string {
            if (i + 1 >= argc) {
                std::fprintf(stderr, "acceptance: %s needs a value\n", arg.c_str());
                std::exit(2);
            }
            return argv[++i];
        };
        if (arg == "--cache-dir") g_cache_dir = next();
        else if (arg == "--threads") g_threads = std::atoi(next().c_str());
        else if (arg == "--criterion") which = std::atoi(next().c_str());
        else if (arg == "--tssp-bin") g_tssp_bin = next();
        else {
            std::fprintf(stderr, "acceptance: unknown argument %s\n", arg.c_str());
            return 2;
        }
    }
    std::filesystem::create_directories(g_cache_dir);

    try {
        if (mode == "warmup") return warmup();
        if (mode == "run") return run(which);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "acceptance: error: %s\n", e.what());
        return 4;
    }
    std::fprintf(stderr, "acceptance: usage: acceptance warmup|run [options]\n");
    return 2;
}
