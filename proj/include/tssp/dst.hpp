#pragma once
#include "tssp/grid.hpp"

namespace tssp {

// Discrete sine transform pair between Y_N and X_N.
//
// Conventions (fixed; any transform backend is wrapped to match):
//   analysis    c_l = (2/N) sum_{j=1}^{N-1} v_j sin(pi j l / N)
//   synthesis   v_j =       sum_{l=1}^{N-1} c_l sin(pi j l / N)
// so analyze gives the interpolation coefficients of I_N v and
// synthesize(analyze(v)) reproduces v at the nodes. The fast path is a
// DST-I of the N-1 interior points (FFTW RODFT00, one transform per
// real/imaginary part); plans are cached per size and execution is
// thread-safe.

/// Interpolation coefficients of I_N v. Requires v in Y_N.
SpectralField dst_analyze(const NodalField& v);

/// Nodal values of the sine series; endpoint values are exactly zero.
NodalField dst_synthesize(const SpectralField& c);

/// Pointwise series value at x in [a,b]; rejects x outside the interval.
Complex evaluate_series(const SpectralField& c, double x);

/// L^2 projection onto the coarse space: keeps modes l = 1..N_coarse-1.
/// Requires shared endpoints and coarse N dividing fine N.
SpectralField truncate_to(const SpectralField& fine, const GridPtr& coarse);

/// Exact inclusion X_{N_coarse} into X_{N_fine} by zero-padding.
SpectralField embed_to(const SpectralField& coarse, const GridPtr& fine);

} // namespace tssp
