#pragma once
#include <limits>

#include "tssp/grid.hpp"

namespace tssp {

// Norms of the sine series (exact by mode orthogonality):
//   ||f||_{L^2}^2     = ((b-a)/2) sum |c_l|^2
//   |f|_{H^1}^2       = ((b-a)/2) sum mu_l^2 |c_l|^2
//   ||f||_{H^2}^2     = ((b-a)/2) sum (1 + mu_l^2 + mu_l^4) |c_l|^2

double l2_norm(const SpectralField& c);
double h1_seminorm(const SpectralField& c);
double h2_norm(const SpectralField& c);

/// Discrete norm (h sum_{j=0}^{N-1} |v_j|^p)^{1/p}; max over j = 0..N-1
/// for p = infinity. Rejects p < 1.
double lp_norm_nodal(const NodalField& v, double p);

inline constexpr double kInfNorm = std::numeric_limits<double>::infinity();

} // namespace tssp
