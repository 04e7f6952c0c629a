#pragma once
#include <iosfwd>
#include <vector>

#include "tssp/grid.hpp"
#include "tssp/propagators.hpp"

namespace tssp {

struct ObservableRecord {
    double time = 0.0;
    double mass = 0.0;
    double energy = 0.0;
    double l2 = 0.0;
    double h1 = 0.0;
    double linf = 0.0;
};

/// Mass of I_N v: the squared L^2 norm of its sine coefficients (equal to
/// the discrete l^2 norm squared by Parseval).
double mass(const NodalField& v);

/// Discrete energy: spectral kinetic term |I_N v|_{H^1}^2 plus the
/// h-weighted node sum of V|v|^2 + F(|v|^2) over interior nodes.
double energy(const NodalField& v, const Potential& pot, const SemiSmoothNonlinearity& nl);

/// Record of time plus mass, energy, and L^2/H^1/l^inf norms of v itself.
ObservableRecord observe(const SimulationState& s, const Potential& pot,
                         const SemiSmoothNonlinearity& nl);

struct ErrorNorms {
    double l2 = 0.0;
    double h1 = 0.0;   // full norm sqrt(L2^2 + seminorm^2)
    double linf = 0.0; // at the coarse nodes
};

/// Norms of I_N(numeric) - reference. The reference lives on the same grid
/// or on one refining it dyadically; the comparison embeds the coarse
/// coefficients into the fine space (exact inclusion), never interpolates
/// pointwise.
ErrorNorms error_norms(const NodalField& numeric, const SpectralField& reference);

/// Forward differences (v_{j+1} - v_j)/h, j = 0..N-1.
std::vector<Complex> forward_diff(const NodalField& v);

/// Central second differences (v_{j+1} - 2 v_j + v_{j-1})/h^2, j = 1..N-1.
std::vector<Complex> central_second_diff(const NodalField& v);

/// Discrete l^2 norm of the forward difference, h-weighted over j = 0..N-1.
double forward_diff_l2(const NodalField& v);

// ||dx+ phi||_{l2} <= ||grad I_N phi||_{L2} <= (pi/2) ||dx+ phi||_{l2}
// for phi in X_N, with the explicit constants 1 and pi/2.
struct NormEquivalence {
    double lhs = 0.0; // forward-difference l^2 norm
    double mid = 0.0; // spectral H^1 seminorm
    double rhs = 0.0; // (pi/2) * lhs
    bool pass = false;
};

NormEquivalence norm_equivalence_check(const SpectralField& phi);

// Monitored inequality ratios (reported, never asserted; their constants
// are not explicit).
double gagliardo_nirenberg_ratio(const NodalField& v); // ||v||_{l4} / (||v||_{l2}^{3/4} ||dx+ v||_{l2}^{1/4})
double embedding_ratio(const SpectralField& phi);      // ||dx+ phi||_{l4} / ||phi||_{H2}

/// CSV with header time,mass,energy,l2,h1,linf and a trailing metadata
/// comment line.
void write_observable_csv(std::ostream& os, const std::vector<ObservableRecord>& rows,
                          std::string_view metadata);

} // namespace tssp
