#pragma once
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "tssp/errors.hpp"

namespace tssp {

using Complex = std::complex<double>;

// Uniform grid on [a,b] with N subintervals, nodes x_j = a + j*h, and the
// sine frequencies mu_l = pi*l/(b-a) of the Dirichlet basis sin(mu_l(x-a)),
// l = 1..N-1. Immutable after construction; share via GridPtr.
struct Grid1D {
    double a = 0.0;
    double b = 1.0;
    int N = 2;
    double h = 0.5;
    std::vector<double> nodes; // size N+1, nodes[N] == b exactly
    std::vector<double> mu;    // size N-1, mu[l-1] = pi*l/(b-a)

    int modes() const { return N - 1; }
};

using GridPtr = std::shared_ptr<const Grid1D>;

/// Builds a grid; rejects b <= a or N < 2.
GridPtr make_grid(double a, double b, int N);

/// Same discretization: identical endpoints and N.
bool same_grid(const Grid1D& g1, const Grid1D& g2);

/// True when `coarse` divides `fine` on the same interval (nested nodes).
bool refines(const Grid1D& coarse, const Grid1D& fine);

// Grid values v_j, j = 0..N, with v_0 = v_N = 0 (the space Y_N).
struct NodalField {
    GridPtr grid;
    std::vector<Complex> values; // size N+1
};

// Sine coefficients c_l, l = 1..N-1, of the function
// sum_l c_l sin(mu_l(x-a)) in X_N; coeffs[l-1] = c_l.
struct SpectralField {
    GridPtr grid;
    std::vector<Complex> coeffs; // size N-1
};

/// Zero field on `g`.
NodalField make_nodal(GridPtr g);
SpectralField make_spectral(GridPtr g);

/// Samples fn at the nodes and forces the endpoint values to exactly zero.
template <class Fn>
NodalField sample_nodal(GridPtr g, Fn&& fn) {
    NodalField v;
    v.grid = std::move(g);
    v.values.resize(v.grid->N + 1);
    for (int j = 1; j < v.grid->N; ++j) v.values[j] = fn(v.grid->nodes[j]);
    v.values.front() = Complex(0.0, 0.0);
    v.values.back() = Complex(0.0, 0.0);
    return v;
}

/// Throws ConfigError unless v carries a grid, has N+1 values, and both
/// endpoint values are exactly zero.
void require_nodal(const NodalField& v);
void require_spectral(const SpectralField& c);

} // namespace tssp
