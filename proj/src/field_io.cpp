#include "tssp/field_io.hpp"

#include <cstring>
#include <fstream>

#include "json.hpp"
#include "tssp/hash.hpp"

namespace tssp {
namespace {

constexpr char kMagic[8] = {'T', 'S', 'S', 'P', 'F', 'L', 'D', '1'};

std::uint32_t scheme_tag(Scheme s) {
    switch (s) {
        case Scheme::LieKineticLast: return 0;
        case Scheme::LieKineticFirst: return 1;
        case Scheme::Strang: return 2;
    }
    return 0;
}

Scheme scheme_from_tag(std::uint32_t tag) {
    switch (tag) {
        case 0: return Scheme::LieKineticLast;
        case 1: return Scheme::LieKineticFirst;
        case 2: return Scheme::Strang;
    }
    throw ConfigError("checkpoint: unknown scheme tag " + std::to_string(tag));
}

template <class T>
void put(std::ostream& os, const T& v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
void take(std::istream& is, T& v) {
    is.read(reinterpret_cast<char*>(&v), sizeof v);
}

} // namespace

FieldRecord record_of(const NodalField& v) {
    require_nodal(v);
    return FieldRecord{v.grid, false, v.values, std::nullopt};
}

FieldRecord record_of(const SpectralField& c) {
    require_spectral(c);
    return FieldRecord{c.grid, true, c.coeffs, std::nullopt};
}

FieldRecord record_of(const SimulationState& s, Scheme scheme) {
    FieldRecord r = record_of(s.field);
    r.state = StateHeader{s.step_index, s.time, scheme};
    return r;
}

NodalField nodal_of(const FieldRecord& r) {
    if (r.spectral) throw ConfigError("checkpoint: expected a nodal record");
    NodalField v{r.grid, r.data};
    require_nodal(v);
    return v;
}

SpectralField spectral_of(const FieldRecord& r) {
    if (!r.spectral) throw ConfigError("checkpoint: expected a spectral record");
    SpectralField c{r.grid, r.data};
    require_spectral(c);
    return c;
}

void save_field(const std::filesystem::path& path, const FieldRecord& r) {
    if (!r.grid) throw ConfigError("save_field: record has no grid");
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("save_field: cannot open " + tmp.string());
        os.write(kMagic, sizeof kMagic);
        put(os, r.grid->a);
        put(os, r.grid->b);
        put(os, static_cast<std::uint64_t>(r.grid->N));
        put(os, static_cast<std::uint32_t>(r.spectral ? 1 : 0));
        put(os, static_cast<std::uint32_t>(r.state ? 1 : 0));
        const StateHeader st = r.state.value_or(StateHeader{});
        put(os, static_cast<std::int64_t>(st.step_index));
        put(os, st.time);
        put(os, r.state ? scheme_tag(st.scheme) : 0u);
        put(os, std::uint32_t{0});
        put(os, static_cast<std::uint64_t>(r.data.size()));
        for (const Complex& z : r.data) {
            put(os, z.real());
            put(os, z.imag());
        }
        if (!os) throw std::runtime_error("save_field: write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

FieldRecord load_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("load_field: cannot open " + path.string());
    char magic[8];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
        throw ConfigError("load_field: bad magic in " + path.string());
    double a, b;
    std::uint64_t n64, count;
    std::uint32_t repr, has_state, tag, reserved;
    std::int64_t step_index;
    double time;
    take(is, a);
    take(is, b);
    take(is, n64);
    take(is, repr);
    take(is, has_state);
    take(is, step_index);
    take(is, time);
    take(is, tag);
    take(is, reserved);
    take(is, count);
    if (!is) throw ConfigError("load_field: truncated header in " + path.string());

    FieldRecord r;
    r.grid = make_grid(a, b, static_cast<int>(n64));
    r.spectral = repr == 1;
    const std::uint64_t expected = r.spectral ? n64 - 1 : n64 + 1;
    if (count != expected)
        throw ConfigError("load_field: value count " + std::to_string(count) + " does not match N");
    r.data.resize(count);
    for (Complex& z : r.data) {
        double re, im;
        take(is, re);
        take(is, im);
        z = Complex(re, im);
    }
    if (!is) throw ConfigError("load_field: truncated data in " + path.string());
    if (has_state) r.state = StateHeader{step_index, time, scheme_from_tag(tag)};
    return r;
}

std::string field_to_json(const FieldRecord& r) {
    nlohmann::json j;
    j["a"] = r.grid->a;
    j["b"] = r.grid->b;
    j["N"] = r.grid->N;
    j["repr"] = r.spectral ? "spectral" : "nodal";
    auto& values = j["values"] = nlohmann::json::array();
    for (const Complex& z : r.data) values.push_back({z.real(), z.imag()});
    if (r.state) {
        j["state"] = {{"step_index", r.state->step_index},
                      {"time", r.state->time},
                      {"scheme", scheme_name(r.state->scheme)}};
    }
    return j.dump(2);
}

FieldRecord field_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    FieldRecord r;
    r.grid = make_grid(j.at("a").get<double>(), j.at("b").get<double>(), j.at("N").get<int>());
    const std::string repr = j.at("repr").get<std::string>();
    if (repr != "nodal" && repr != "spectral")
        throw ConfigError("field json: repr must be nodal or spectral");
    r.spectral = repr == "spectral";
    for (const auto& pair : j.at("values"))
        r.data.emplace_back(pair.at(0).get<double>(), pair.at(1).get<double>());
    const std::size_t expected = r.spectral ? r.grid->N - 1 : r.grid->N + 1;
    if (r.data.size() != expected) throw ConfigError("field json: value count does not match N");
    if (j.contains("state")) {
        const auto& st = j.at("state");
        auto scheme = scheme_from_name(st.at("scheme").get<std::string>());
        if (!scheme) throw ConfigError("field json: unknown scheme");
        r.state = StateHeader{st.at("step_index").get<std::int64_t>(),
                              st.at("time").get<double>(), *scheme};
    }
    return r;
}

} // namespace tssp
