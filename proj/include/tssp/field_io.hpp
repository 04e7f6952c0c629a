#pragma once
#include <filesystem>
#include <optional>
#include <string>

#include "tssp/grid.hpp"
#include "tssp/propagators.hpp"

namespace tssp {

// Checkpoint file: fixed little-endian header followed by interleaved
// (re, im) float64 values.
//
//   bytes 0..7    magic "TSSPFLD1"
//   f64 a, f64 b, u64 N
//   u32 repr          0 = nodal, 1 = spectral
//   u32 has_state     0 or 1
//   i64 step_index, f64 time, u32 scheme_tag, u32 reserved
//   u64 count
//   count x (f64 re, f64 im)
//
// scheme_tag: 0 lie, 1 lie_alt, 2 strang. The state block is zeroed when
// has_state = 0.

struct StateHeader {
    std::int64_t step_index = 0;
    double time = 0.0;
    Scheme scheme = Scheme::LieKineticLast;
};

struct FieldRecord {
    GridPtr grid;
    bool spectral = false;
    std::vector<Complex> data; // N+1 nodal values or N-1 coefficients
    std::optional<StateHeader> state;
};

FieldRecord record_of(const NodalField& v);
FieldRecord record_of(const SpectralField& c);
FieldRecord record_of(const SimulationState& s, Scheme scheme);

NodalField nodal_of(const FieldRecord& r);
SpectralField spectral_of(const FieldRecord& r);

/// Writes via a temporary file and atomic rename.
void save_field(const std::filesystem::path& path, const FieldRecord& r);
FieldRecord load_field(const std::filesystem::path& path);

/// JSON text form (for small N and tests).
std::string field_to_json(const FieldRecord& r);
FieldRecord field_from_json(const std::string& text);

} // namespace tssp
