#pragma once
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tssp/experiments.hpp"
#include "tssp/propagators.hpp"

namespace tssp {

// Declarative key-value config with [sections]. Lines are `key = value`;
// `#` starts a comment; order is preserved so parse -> serialize -> parse
// is the identity.
struct Ini {
    struct Section {
        std::string name;
        std::vector<std::pair<std::string, std::string>> entries;

        bool operator==(const Section&) const = default;
    };
    std::vector<Section> sections;

    const std::string* find(const std::string& section, const std::string& key) const;
    std::string require(const std::string& section, const std::string& key) const;
    std::string get_or(const std::string& section, const std::string& key,
                       const std::string& fallback) const;
    void set(const std::string& section, const std::string& key, const std::string& value);

    bool operator==(const Ini&) const = default;
};

Ini parse_ini(const std::string& text);
std::string serialize_ini(const Ini& ini);

/// FNV-1a 64 of the canonical serialized form.
std::uint64_t config_hash(const Ini& ini);
std::string config_hash_hex(const Ini& ini);

// Potential specification: "zero", "harmonic(omega)", or "samples(path)".
struct PotentialSpec {
    enum class Kind { Zero, Harmonic, Samples };
    Kind kind = Kind::Zero;
    double omega = 1.0;
    std::string path;

    bool operator==(const PotentialSpec&) const = default;
};

PotentialSpec parse_potential_spec(const std::string& text);
std::string potential_spec_to_string(const PotentialSpec& spec);
Potential build_potential(const PotentialSpec& spec, const GridPtr& g);

// Initial datum of a simulation run: the study data types plus a single
// sine mode (handy for exercising the exact linear solution).
struct RunInitial {
    enum class Kind { Type1, Type2, Mode };
    Kind kind = Kind::Type1;
    std::uint64_t seed = 1; // type2
    double decay = 2.5;     // type2
    int mode_l = 1;         // mode(l)

    bool operator==(const RunInitial&) const = default;
};

// Configuration of a single simulation run (the `simulate` command).
struct RunConfig {
    double a = 0.0, b = 1.0;
    double sigma = 1.0, beta = 0.0;
    PotentialSpec potential{};
    int N = 64;
    double tau = 1e-3;
    Scheme scheme = Scheme::LieKineticLast;
    RunInitial init{};
    double T = 1.0;
    std::int64_t observe_every = 1;
    std::int64_t checkpoint_every = 0; // 0: final checkpoint only
    std::string out_dir = "out";

    bool operator==(const RunConfig&) const = default;
};

/// Builds the configured datum on the run grid.
NodalField build_initial(const RunConfig& cfg, const GridPtr& g);

RunConfig run_config_from_ini(const Ini& ini);
Ini run_config_to_ini(const RunConfig& cfg);

// Optional slope assertions for the `converge` command.
struct SlopeAsserts {
    std::optional<double> l2_min, h1_min, linf_min;
    bool operator==(const SlopeAsserts&) const = default;
};

// Configuration of a convergence study (the `converge` command).
struct StudyFileConfig {
    StudyConfig study{};
    InitialData init{};
    std::vector<std::uint64_t> seeds; // Type II reruns; slope = min over seeds
    SlopeAsserts asserts{};
    std::string out_dir = "out";

    bool operator==(const StudyFileConfig&) const = default;
};

StudyFileConfig study_config_from_ini(const Ini& ini);
Ini study_config_to_ini(const StudyFileConfig& cfg);

/// Applies --paper-scale: reference mesh h = 2^-9 (N = (b-a)*512) and
/// reference step 1e-6.
void apply_paper_scale(StudyConfig& cfg);

} // namespace tssp
