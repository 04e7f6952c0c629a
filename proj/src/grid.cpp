#include "tssp/grid.hpp"

#include <cmath>

namespace tssp {

GridPtr make_grid(double a, double b, int N) {
    if (!(b > a)) throw ConfigError("grid: require b > a, got a=" + std::to_string(a) +
                                    " b=" + std::to_string(b));
    if (N < 2) throw ConfigError("grid: require N >= 2, got N=" + std::to_string(N));
    if (!std::isfinite(a) || !std::isfinite(b)) throw ConfigError("grid: endpoints must be finite");

    auto g = std::make_shared<Grid1D>();
    g->a = a;
    g->b = b;
    g->N = N;
    g->h = (b - a) / N;
    g->nodes.resize(N + 1);
    for (int j = 0; j <= N; ++j) g->nodes[j] = a + j * g->h;
    g->nodes[N] = b;
    g->mu.resize(N - 1);
    const double base = M_PI / (b - a);
    for (int l = 1; l < N; ++l) g->mu[l - 1] = base * l;
    return g;
}

bool same_grid(const Grid1D& g1, const Grid1D& g2) {
    return g1.a == g2.a && g1.b == g2.b && g1.N == g2.N;
}

bool refines(const Grid1D& coarse, const Grid1D& fine) {
    return coarse.a == fine.a && coarse.b == fine.b && fine.N % coarse.N == 0;
}

NodalField make_nodal(GridPtr g) {
    NodalField v;
    v.values.assign(g->N + 1, Complex(0.0, 0.0));
    v.grid = std::move(g);
    return v;
}

SpectralField make_spectral(GridPtr g) {
    SpectralField c;
    c.coeffs.assign(g->N - 1, Complex(0.0, 0.0));
    c.grid = std::move(g);
    return c;
}

void require_nodal(const NodalField& v) {
    if (!v.grid) throw ConfigError("nodal field: missing grid");
    if (static_cast<int>(v.values.size()) != v.grid->N + 1)
        throw ConfigError("nodal field: expected N+1 values");
    if (v.values.front() != Complex(0.0, 0.0) || v.values.back() != Complex(0.0, 0.0))
        throw ConfigError("nodal field: endpoint values must be exactly zero");
}

void require_spectral(const SpectralField& c) {
    if (!c.grid) throw ConfigError("spectral field: missing grid");
    if (static_cast<int>(c.coeffs.size()) != c.grid->N - 1)
        throw ConfigError("spectral field: expected N-1 coefficients");
}

} // namespace tssp
