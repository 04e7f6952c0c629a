#include "tssp/config.hpp"

#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "tssp/dst.hpp"
#include "tssp/hash.hpp"

namespace tssp {
namespace {

std::string trim(std::string_view s) {
    std::size_t lo = 0, hi = s.size();
    while (lo < hi && std::isspace(static_cast<unsigned char>(s[lo]))) ++lo;
    while (hi > lo && std::isspace(static_cast<unsigned char>(s[hi - 1]))) --hi;
    return std::string(s.substr(lo, hi - lo));
}

double parse_double(const std::string& where, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double x = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: " + where + ": not a number: '" + v + "'");
    }
}

std::int64_t parse_int(const std::string& where, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long x = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing characters");
        return x;
    } catch (const std::exception&) {
        throw ConfigError("config: " + where + ": not an integer: '" + v + "'");
    }
}

std::vector<std::string> split_csv(const std::string& v) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : v) {
        if (c == ',') {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!trim(cur).empty() || !out.empty()) out.push_back(trim(cur));
    return out;
}

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

Scheme parse_scheme(const std::string& where, const std::string& v) {
    auto s = scheme_from_name(v);
    if (!s) throw ConfigError("config: " + where + ": unknown scheme '" + v +
                              "' (expected lie, lie_alt, or strang)");
    return *s;
}

InitialData::Kind parse_kind(const std::string& where, const std::string& v) {
    if (v == "type1") return InitialData::Kind::TypeI;
    if (v == "type2") return InitialData::Kind::TypeII;
    throw ConfigError("config: " + where + ": unknown initial data kind '" + v + "'");
}

} // namespace

std::string hex_u64(std::uint64_t v) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016" PRIx64, v);
    return buf;
}

const std::string* Ini::find(const std::string& section, const std::string& key) const {
    for (const auto& sec : sections)
        if (sec.name == section)
            for (const auto& [k, v] : sec.entries)
                if (k == key) return &v;
    return nullptr;
}

std::string Ini::require(const std::string& section, const std::string& key) const {
    const std::string* v = find(section, key);
    if (!v) throw ConfigError("config: missing required key " + section + "." + key);
    return *v;
}

std::string Ini::get_or(const std::string& section, const std::string& key,
                        const std::string& fallback) const {
    const std::string* v = find(section, key);
    return v ? *v : fallback;
}

void Ini::set(const std::string& section, const std::string& key, const std::string& value) {
    for (auto& sec : sections) {
        if (sec.name != section) continue;
        for (auto& [k, v] : sec.entries) {
            if (k == key) {
                v = value;
                return;
            }
        }
        sec.entries.emplace_back(key, value);
        return;
    }
    sections.push_back(Section{section, {{key, value}}});
}

Ini parse_ini(const std::string& text) {
    Ini ini;
    Ini::Section* current = nullptr;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        if (t.front() == '[') {
            if (t.back() != ']')
                throw ConfigError("config: line " + std::to_string(lineno) + ": bad section header");
            ini.sections.push_back(Ini::Section{trim(t.substr(1, t.size() - 2)), {}});
            current = &ini.sections.back();
            continue;
        }
        const std::size_t eq = t.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: line " + std::to_string(lineno) + ": expected key = value");
        if (!current) throw ConfigError("config: line " + std::to_string(lineno) +
                                        ": key before any [section]");
        current->entries.emplace_back(trim(t.substr(0, eq)), trim(t.substr(eq + 1)));
    }
    return ini;
}

std::string serialize_ini(const Ini& ini) {
    std::string out;
    for (const auto& sec : ini.sections) {
        out += "[" + sec.name + "]\n";
        for (const auto& [k, v] : sec.entries) out += k + " = " + v + "\n";
        out += "\n";
    }
    return out;
}

std::uint64_t config_hash(const Ini& ini) { return fnv1a64(serialize_ini(ini)); }

std::string config_hash_hex(const Ini& ini) { return hex_u64(config_hash(ini)); }

PotentialSpec parse_potential_spec(const std::string& text) {
    PotentialSpec spec;
    if (text == "zero") {
        spec.kind = PotentialSpec::Kind::Zero;
        return spec;
    }
    if (text.starts_with("harmonic(") && text.ends_with(")")) {
        spec.kind = PotentialSpec::Kind::Harmonic;
        spec.omega = parse_double("potential harmonic omega", text.substr(9, text.size() - 10));
        return spec;
    }
    if (text.starts_with("samples(") && text.ends_with(")")) {
        spec.kind = PotentialSpec::Kind::Samples;
        spec.path = text.substr(8, text.size() - 9);
        return spec;
    }
    throw ConfigError("config: problem.potential: expected zero, harmonic(omega), or samples(path)");
}

std::string potential_spec_to_string(const PotentialSpec& spec) {
    switch (spec.kind) {
        case PotentialSpec::Kind::Zero: return "zero";
        case PotentialSpec::Kind::Harmonic: return "harmonic(" + fmt_double(spec.omega) + ")";
        case PotentialSpec::Kind::Samples: return "samples(" + spec.path + ")";
    }
    return "zero";
}

Potential build_potential(const PotentialSpec& spec, const GridPtr& g) {
    switch (spec.kind) {
        case PotentialSpec::Kind::Zero: return zero_potential(g);
        case PotentialSpec::Kind::Harmonic: return harmonic_potential(g, spec.omega);
        case PotentialSpec::Kind::Samples: {
            std::FILE* f = std::fopen(spec.path.c_str(), "r");
            if (!f) throw ConfigError("potential: cannot open samples file " + spec.path);
            std::vector<double> values;
            double x;
            while (std::fscanf(f, "%lf", &x) == 1) values.push_back(x);
            std::fclose(f);
            return sampled_potential(g, std::move(values));
        }
    }
    throw ConfigError("potential: unknown kind");
}

RunConfig run_config_from_ini(const Ini& ini) {
    RunConfig cfg;
    cfg.a = parse_double("problem.a", ini.require("problem", "a"));
    cfg.b = parse_double("problem.b", ini.require("problem", "b"));
    cfg.sigma = parse_double("problem.sigma", ini.require("problem", "sigma"));
    cfg.beta = parse_double("problem.beta", ini.require("problem", "beta"));
    cfg.potential = parse_potential_spec(ini.get_or("problem", "potential", "zero"));
    cfg.N = static_cast<int>(parse_int("discretization.N", ini.require("discretization", "N")));
    cfg.tau = parse_double("discretization.tau", ini.require("discretization", "tau"));
    cfg.scheme = parse_scheme("discretization.scheme",
                              ini.get_or("discretization", "scheme", "lie"));
    const std::string kind = ini.get_or("initial", "kind", "type1");
    if (kind == "type1") {
        cfg.init.kind = RunInitial::Kind::Type1;
    } else if (kind == "type2") {
        cfg.init.kind = RunInitial::Kind::Type2;
    } else if (kind.starts_with("mode(") && kind.ends_with(")")) {
        cfg.init.kind = RunInitial::Kind::Mode;
        cfg.init.mode_l =
            static_cast<int>(parse_int("initial.kind mode(l)", kind.substr(5, kind.size() - 6)));
    } else {
        throw ConfigError("config: initial.kind: expected type1, type2, or mode(l)");
    }
    cfg.init.seed = static_cast<std::uint64_t>(
        parse_int("initial.seed", ini.get_or("initial", "seed", "1")));
    cfg.init.decay = parse_double("initial.decay", ini.get_or("initial", "decay", "2.5"));
    cfg.T = parse_double("horizon.T", ini.require("horizon", "T"));
    cfg.observe_every =
        parse_int("horizon.observe_every", ini.get_or("horizon", "observe_every", "1"));
    cfg.checkpoint_every =
        parse_int("io.checkpoint_every", ini.get_or("io", "checkpoint_every", "0"));
    cfg.out_dir = ini.get_or("io", "out_dir", "out");

    if (cfg.N < 2) throw ConfigError("config: discretization.N: require N >= 2");
    if (!(cfg.sigma > 0.0)) throw ConfigError("config: problem.sigma: require sigma > 0");
    if (!(cfg.tau > 0.0)) throw ConfigError("config: discretization.tau: require tau > 0");
    if (!(cfg.b > cfg.a)) throw ConfigError("config: problem: require b > a");
    const double ratio = cfg.T / cfg.tau;
    const auto n = static_cast<std::int64_t>(std::llround(ratio));
    if (n <= 0 || std::abs(n * cfg.tau - cfg.T) > 1e-9 * std::max(1.0, cfg.T))
        throw ConfigError("config: horizon.T / discretization.tau must be a positive integer, got " +
                          std::to_string(ratio));
    if (cfg.observe_every < 0 || cfg.checkpoint_every < 0)
        throw ConfigError("config: observation cadences must be >= 0");
    return cfg;
}

Ini run_config_to_ini(const RunConfig& cfg) {
    Ini ini;
    ini.set("problem", "a", fmt_double(cfg.a));
    ini.set("problem", "b", fmt_double(cfg.b));
    ini.set("problem", "sigma", fmt_double(cfg.sigma));
    ini.set("problem", "beta", fmt_double(cfg.beta));
    ini.set("problem", "potential", potential_spec_to_string(cfg.potential));
    ini.set("discretization", "N", std::to_string(cfg.N));
    ini.set("discretization", "tau", fmt_double(cfg.tau));
    ini.set("discretization", "scheme", scheme_name(cfg.scheme));
    switch (cfg.init.kind) {
        case RunInitial::Kind::Type1: ini.set("initial", "kind", "type1"); break;
        case RunInitial::Kind::Type2: ini.set("initial", "kind", "type2"); break;
        case RunInitial::Kind::Mode:
            ini.set("initial", "kind", "mode(" + std::to_string(cfg.init.mode_l) + ")");
            break;
    }
    ini.set("initial", "seed", std::to_string(cfg.init.seed));
    ini.set("initial", "decay", fmt_double(cfg.init.decay));
    ini.set("horizon", "T", fmt_double(cfg.T));
    ini.set("horizon", "observe_every", std::to_string(cfg.observe_every));
    ini.set("io", "checkpoint_every", std::to_string(cfg.checkpoint_every));
    ini.set("io", "out_dir", cfg.out_dir);
    return ini;
}

StudyFileConfig study_config_from_ini(const Ini& ini) {
    StudyFileConfig cfg;
    cfg.study.a = parse_double("problem.a", ini.require("problem", "a"));
    cfg.study.b = parse_double("problem.b", ini.require("problem", "b"));
    cfg.study.sigma = parse_double("problem.sigma", ini.require("problem", "sigma"));
    cfg.study.beta = parse_double("problem.beta", ini.require("problem", "beta"));
    cfg.study.T = parse_double("study.T", ini.get_or("study", "T", "1"));
    cfg.study.scheme = parse_scheme("study.scheme", ini.get_or("study", "scheme", "lie"));
    for (const auto& t : split_csv(ini.get_or("study", "tau_list", "")))
        cfg.study.tau_list.push_back(parse_double("study.tau_list", t));
    for (const auto& t : split_csv(ini.get_or("study", "N_list", "")))
        cfg.study.N_list.push_back(static_cast<int>(parse_int("study.N_list", t)));
    cfg.study.reference.N =
        static_cast<int>(parse_int("reference.N", ini.get_or("reference", "N", "4096")));
    cfg.study.reference.tau =
        parse_double("reference.tau", ini.get_or("reference", "tau", "1e-5"));
    cfg.study.cache_dir = ini.get_or("io", "cache_dir", "");
    cfg.init.kind = parse_kind("study.kind", ini.get_or("study", "kind", "type1"));
    cfg.init.decay = parse_double("study.decay", ini.get_or("study", "decay", "2.5"));
    for (const auto& s : split_csv(ini.get_or("study", "seeds", "1")))
        cfg.seeds.push_back(static_cast<std::uint64_t>(parse_int("study.seeds", s)));
    if (cfg.seeds.empty()) cfg.seeds.push_back(1);
    cfg.init.seed = cfg.seeds.front();
    if (const std::string* v = ini.find("assert", "l2_slope_min"))
        cfg.asserts.l2_min = parse_double("assert.l2_slope_min", *v);
    if (const std::string* v = ini.find("assert", "h1_slope_min"))
        cfg.asserts.h1_min = parse_double("assert.h1_slope_min", *v);
    if (const std::string* v = ini.find("assert", "linf_slope_min"))
        cfg.asserts.linf_min = parse_double("assert.linf_slope_min", *v);
    cfg.out_dir = ini.get_or("io", "out_dir", "out");

    if (!(cfg.study.sigma > 0.0)) throw ConfigError("config: problem.sigma: require sigma > 0");
    if (!(cfg.study.b > cfg.study.a)) throw ConfigError("config: problem: require b > a");
    return cfg;
}

Ini study_config_to_ini(const StudyFileConfig& cfg) {
    Ini ini;
    ini.set("problem", "a", fmt_double(cfg.study.a));
    ini.set("problem", "b", fmt_double(cfg.study.b));
    ini.set("problem", "sigma", fmt_double(cfg.study.sigma));
    ini.set("problem", "beta", fmt_double(cfg.study.beta));
    ini.set("study", "T", fmt_double(cfg.study.T));
    ini.set("study", "scheme", scheme_name(cfg.study.scheme));
    std::string taus, ns, seeds;
    for (double t : cfg.study.tau_list) taus += (taus.empty() ? "" : ",") + fmt_double(t);
    for (int n : cfg.study.N_list) ns += (ns.empty() ? "" : ",") + std::to_string(n);
    for (std::uint64_t s : cfg.seeds) seeds += (seeds.empty() ? "" : ",") + std::to_string(s);
    if (!taus.empty()) ini.set("study", "tau_list", taus);
    if (!ns.empty()) ini.set("study", "N_list", ns);
    ini.set("study", "kind", cfg.init.kind == InitialData::Kind::TypeI ? "type1" : "type2");
    ini.set("study", "decay", fmt_double(cfg.init.decay));
    ini.set("study", "seeds", seeds);
    ini.set("reference", "N", std::to_string(cfg.study.reference.N));
    ini.set("reference", "tau", fmt_double(cfg.study.reference.tau));
    if (cfg.asserts.l2_min) ini.set("assert", "l2_slope_min", fmt_double(*cfg.asserts.l2_min));
    if (cfg.asserts.h1_min) ini.set("assert", "h1_slope_min", fmt_double(*cfg.asserts.h1_min));
    if (cfg.asserts.linf_min)
        ini.set("assert", "linf_slope_min", fmt_double(*cfg.asserts.linf_min));
    if (!cfg.study.cache_dir.empty()) ini.set("io", "cache_dir", cfg.study.cache_dir);
    ini.set("io", "out_dir", cfg.out_dir);
    return ini;
}

void apply_paper_scale(StudyConfig& cfg) {
    const double width = cfg.b - cfg.a;
    cfg.reference.N = static_cast<int>(std::llround(width * 512.0)); // h_e = 2^-9
    cfg.reference.tau = 1e-6;
}

NodalField build_initial(const RunConfig& cfg, const GridPtr& g) {
    switch (cfg.init.kind) {
        case RunInitial::Kind::Type1: return make_type1(g);
        case RunInitial::Kind::Type2: return make_type2(g, cfg.init.seed, cfg.init.decay);
        case RunInitial::Kind::Mode: {
            if (cfg.init.mode_l < 1 || cfg.init.mode_l > g->modes())
                throw ConfigError("config: initial mode(l): l out of range 1..N-1");
            SpectralField c = make_spectral(g);
            c.coeffs[cfg.init.mode_l - 1] = Complex(1.0, 0.0);
            return dst_synthesize(c);
        }
    }
    throw ConfigError("config: unknown initial kind");
}

} // namespace tssp
