#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "tssp/config.hpp"
#include "tssp/dst.hpp"
#include "tssp/field_io.hpp"
#include "tssp/norms.hpp"
#include "tssp/svg.hpp"

using namespace tssp;
namespace fs = std::filesystem;

#ifndef TSSP_BIN
#define TSSP_BIN "tssp"
#endif

namespace {

std::string slurp_file(const fs::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::stringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

struct RunResult {
    int exit_code;
    std::string output;
};

RunResult run_cli(const std::string& args, const fs::path& dir) {
    const fs::path log = dir / "cli.log";
    const std::string cmd =
        std::string(TSSP_BIN) + " " + args + " > " + log.string() + " 2>&1";
    const int rc = std::system(cmd.c_str());
    return RunResult{WEXITSTATUS(rc), slurp_file(log)};
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("tssp_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream os(p);
    os << text;
}

const char* kFreeRunConfig =
    "[problem]\n"
    "a = 0\nb = 1\nsigma = 1\nbeta = 0\npotential = zero\n"
    "[discretization]\n"
    "N = 16\ntau = 0.001\nscheme = lie\n"
    "[initial]\nkind = mode(2)\n"
    "[horizon]\nT = 0.1\nobserve_every = 20\n"
    "[io]\nout_dir = OUT\n";

} // namespace

TEST_CASE("ini parse / serialize round trip") {
    const std::string text =
        "[alpha]\nx = 1\ny = two words  # trailing comment\n\n[beta]\nz = 3\n";
    Ini a = parse_ini(text);
    CHECK(a.require("alpha", "y") == "two words");
    Ini b = parse_ini(serialize_ini(a));
    CHECK(a == b);
    CHECK(config_hash(a) == config_hash(b));
    CHECK_THROWS_AS(parse_ini("key = 1\n"), ConfigError);    // key before section
    CHECK_THROWS_AS(parse_ini("[s]\nnot a pair\n"), ConfigError);
    CHECK(a.find("alpha", "missing") == nullptr);
    CHECK_THROWS_AS(a.require("alpha", "missing"), ConfigError);
}

TEST_CASE("run config round trip and validation") {
    Ini ini = parse_ini(kFreeRunConfig);
    RunConfig cfg = run_config_from_ini(ini);
    CHECK(cfg.init.kind == RunInitial::Kind::Mode);
    CHECK(cfg.init.mode_l == 2);
    RunConfig again = run_config_from_ini(run_config_to_ini(cfg));
    CHECK(cfg == again);

    Ini bad = ini;
    bad.set("horizon", "T", "0.1001");
    CHECK_THROWS_WITH_AS(static_cast<void>(run_config_from_ini(bad)),
                         doctest::Contains("horizon.T"), ConfigError);
    bad = ini;
    bad.set("problem", "sigma", "0");
    CHECK_THROWS_AS(static_cast<void>(run_config_from_ini(bad)), ConfigError);
}

TEST_CASE("study config round trip") {
    const std::string text =
        "[problem]\na = -1\nb = 1\nsigma = 0.5\nbeta = -1\n"
        "[study]\nkind = type2\nseeds = 1,2,3\nT = 1\nscheme = lie\n"
        "tau_list = 0.1,0.05,0.025\n"
        "[reference]\nN = 4096\ntau = 1e-5\n"
        "[assert]\nl2_slope_min = 0.85\nh1_slope_min = 0.35\n";
    StudyFileConfig cfg = study_config_from_ini(parse_ini(text));
    CHECK(cfg.seeds == std::vector<std::uint64_t>{1, 2, 3});
    CHECK(cfg.study.tau_list.size() == 3);
    CHECK(cfg.asserts.l2_min == doctest::Approx(0.85));
    StudyFileConfig again = study_config_from_ini(study_config_to_ini(cfg));
    CHECK(cfg == again);

    StudyConfig paper = cfg.study;
    apply_paper_scale(paper);
    CHECK(paper.reference.N == 1024); // (b-a) * 512
    CHECK(paper.reference.tau == 1e-6);
}

TEST_CASE("potential spec") {
    CHECK(parse_potential_spec("zero").kind == PotentialSpec::Kind::Zero);
    PotentialSpec h = parse_potential_spec("harmonic(2.5)");
    CHECK(h.kind == PotentialSpec::Kind::Harmonic);
    CHECK(h.omega == doctest::Approx(2.5));
    CHECK(parse_potential_spec("samples(/tmp/v.txt)").path == "/tmp/v.txt");
    CHECK_THROWS_AS(parse_potential_spec("well(1)"), ConfigError);

    GridPtr g = make_grid(-1.0, 1.0, 4);
    Potential pot = build_potential(h, g);
    CHECK(pot.values[0] == doctest::Approx(0.5 * 2.5 * 2.5));
    CHECK(pot.values[2] == 0.0);
}

TEST_CASE("field checkpoint binary round trip") {
    const fs::path dir = scratch("fieldio");
    GridPtr g = make_grid(-2.0, 2.0, 16);
    SpectralField c = make_spectral(g);
    for (int l = 0; l < g->modes(); ++l) c.coeffs[l] = Complex(0.1 * l, -0.2 * l);

    FieldRecord rec = record_of(c);
    rec.state = StateHeader{42, 0.42, Scheme::Strang};
    save_field(dir / "c.fld", rec);
    FieldRecord back = load_field(dir / "c.fld");
    CHECK(back.spectral);
    CHECK(same_grid(*back.grid, *g));
    REQUIRE(back.state.has_value());
    CHECK(back.state->step_index == 42);
    CHECK(back.state->scheme == Scheme::Strang);
    for (int l = 0; l < g->modes(); ++l) CHECK(back.data[l] == c.coeffs[l]);

    // nodal record without state
    NodalField v = dst_synthesize(c);
    save_field(dir / "v.fld", record_of(v));
    FieldRecord vb = load_field(dir / "v.fld");
    CHECK_FALSE(vb.spectral);
    CHECK_FALSE(vb.state.has_value());
    NodalField v2 = nodal_of(vb);
    for (int j = 0; j <= g->N; ++j) CHECK(v2.values[j] == v.values[j]);

    // corrupted magic is rejected
    write_file(dir / "bad.fld", "NOTMAGIC........");
    CHECK_THROWS_AS(load_field(dir / "bad.fld"), ConfigError);
    fs::remove_all(dir);
}

TEST_CASE("field JSON round trip") {
    GridPtr g = make_grid(0.0, 1.0, 8);
    NodalField v = make_nodal(g);
    v.values[3] = Complex(0.5, -0.25);
    FieldRecord rec = record_of(v);
    rec.state = StateHeader{7, 0.007, Scheme::LieKineticLast};
    FieldRecord back = field_from_json(field_to_json(rec));
    CHECK_FALSE(back.spectral);
    CHECK(back.data[3] == v.values[3]);
    REQUIRE(back.state.has_value());
    CHECK(back.state->step_index == 7);
    CHECK_THROWS_AS(field_from_json("{\"a\":0,\"b\":1,\"N\":8,\"repr\":\"odd\",\"values\":[]}"),
                    ConfigError);
}

TEST_CASE("svg log-log plot carries checkable guide lines") {
    LogLogPlot plot;
    plot.title = "t";
    plot.xlabel = "h";
    plot.ylabel = "err";
    SvgSeries s{"series", {}, {}};
    for (int k = 0; k < 5; ++k) {
        const double h = 0.1 * std::pow(0.5, k);
        s.x.push_back(h);
        s.y.push_back(0.3 * std::pow(h, 1.5));
    }
    plot.series.push_back(s);
    plot.guide_orders = {2.0};
    std::ostringstream os;
    write_loglog_svg(os, plot);
    const std::string text = os.str();
    CHECK(text.find("<svg") != std::string::npos);
    CHECK(text.find("class=\"guide\"") != std::string::npos);

    const auto pos = text.find("<!-- guide order=2 ");
    REQUIRE(pos != std::string::npos);
    double order, x0, y0, x1, y1;
    REQUIRE(std::sscanf(text.c_str() + pos, "<!-- guide order=%lf x0=%lf y0=%lf x1=%lf y1=%lf",
                        &order, &x0, &y0, &x1, &y1) == 5);
    const double slope = std::log2(y1 / y0) / std::log2(x1 / x0);
    CHECK(slope == doctest::Approx(order).epsilon(1e-9));
}

TEST_CASE("cli: non-integral T/tau is rejected at parse time naming the field") {
    const fs::path dir = scratch("badratio");
    std::string cfg = kFreeRunConfig;
    cfg.replace(cfg.find("T = 0.1"), 7, "T = 0.1003");
    write_file(dir / "run.ini", cfg);
    RunResult r = run_cli("simulate --config " + (dir / "run.ini").string(), dir);
    CHECK(r.exit_code == 2);
    CHECK(r.output.find("horizon.T") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli: free run matches the analytic phase and reruns byte-identically") {
    const fs::path dir = scratch("freerun");
    write_file(dir / "run.ini", kFreeRunConfig);
    const fs::path out1 = dir / "out1";
    const fs::path out2 = dir / "out2";

    RunResult r1 =
        run_cli("simulate --config " + (dir / "run.ini").string() + " --out " + out1.string(),
                dir);
    CHECK(r1.exit_code == 0);

    FieldRecord rec = load_field(out1 / "final.fld");
    NodalField v = nodal_of(rec);
    GridPtr g = v.grid;
    const double theta = 0.1 * g->mu[1] * g->mu[1]; // mode l = 2
    double worst = 0.0;
    for (int j = 0; j <= g->N; ++j) {
        const Complex expected = Complex(std::sin(g->mu[1] * g->nodes[j]), 0.0) *
                                 Complex(std::cos(theta), -std::sin(theta));
        worst = std::max(worst, std::abs(v.values[j] - expected));
    }
    CHECK(worst <= 1e-10);

    RunResult r2 =
        run_cli("simulate --config " + (dir / "run.ini").string() + " --out " + out2.string(),
                dir);
    CHECK(r2.exit_code == 0);
    CHECK(slurp_file(out1 / "observables.csv") == slurp_file(out2 / "observables.csv"));
    CHECK(slurp_file(out1 / "observables.csv").find("time,mass,energy") == 0);
    fs::remove_all(dir);
}

TEST_CASE("cli: observables command reads a checkpoint") {
    const fs::path dir = scratch("obs");
    write_file(dir / "run.ini", kFreeRunConfig);
    const fs::path out = dir / "out";
    REQUIRE(run_cli("simulate --config " + (dir / "run.ini").string() + " --out " + out.string(),
                    dir)
                .exit_code == 0);
    RunResult r = run_cli("observables --config " + (dir / "run.ini").string() +
                              " --checkpoint " + (out / "final.fld").string(),
                          dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("time,mass,energy,l2,h1,linf") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli: converge on the linear problem reports a degenerate fit") {
    const fs::path dir = scratch("degenerate");
    const std::string study =
        "[problem]\na = -1\nb = 1\nsigma = 1\nbeta = 0\n"
        "[study]\nkind = type2\nseeds = 2\nT = 0.1\nscheme = lie\n"
        "tau_list = 0.01,0.005,0.0025\n"
        "[reference]\nN = 32\ntau = 0.001\n";
    write_file(dir / "study.ini", study);
    RunResult r = run_cli("converge --axis time --config " + (dir / "study.ini").string() +
                              " --out " + (dir / "out").string(),
                          dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("degenerate") != std::string::npos);

    // with slope assertions configured the degenerate fit is a failure
    write_file(dir / "study2.ini", study + "[assert]\nl2_slope_min = 0.5\n");
    RunResult r2 = run_cli("converge --axis time --config " + (dir / "study2.ini").string() +
                               " --out " + (dir / "out2").string(),
                           dir);
    CHECK(r2.exit_code == 3);
    CHECK(r2.output.find("degenerate") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli: converge passes slope assertions on the cubic problem") {
    const fs::path dir = scratch("converge");
    const std::string study =
        "[problem]\na = -1\nb = 1\nsigma = 1\nbeta = -1\n"
        "[study]\nkind = type2\nseeds = 2\nT = 0.5\nscheme = lie\n"
        "tau_list = 0.05,0.025,0.0125,0.00625\n"
        "[reference]\nN = 64\ntau = 0.001\n"
        "[assert]\nl2_slope_min = 0.8\n";
    write_file(dir / "study.ini", study);
    RunResult r = run_cli("converge --axis time --config " + (dir / "study.ini").string() +
                              " --out " + (dir / "out").string() + " --svg",
                          dir);
    CHECK(r.exit_code == 0);
    CHECK(r.output.find("all slope assertions passed") != std::string::npos);
    CHECK(fs::exists(dir / "out" / "sweep_time.csv"));
    CHECK(fs::exists(dir / "out" / "sweep_time.svg"));
    const std::string csv = slurp_file(dir / "out" / "sweep_time.csv");
    CHECK(csv.find("resolution,e_l2,e_h1,e_linf") == 0);
    CHECK(csv.find("slope,") != std::string::npos);
    CHECK(csv.find("# config_hash=") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("cli: selftest fault injection fails and names the junction check") {
    const fs::path dir = scratch("fault");
    RunResult r = run_cli("selftest --inject-qeps-fault", dir);
    CHECK(r.exit_code == 3);
    CHECK(r.output.find("c3_junction") != std::string::npos);
    CHECK(r.output.find("FAIL") != std::string::npos);
    fs::remove_all(dir);
}
