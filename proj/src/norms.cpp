#include "tssp/norms.hpp"

#include <cmath>

namespace tssp {

double l2_norm(const SpectralField& c) {
    require_spectral(c);
    double sum = 0.0;
    for (const Complex& z : c.coeffs) sum += std::norm(z);
    return std::sqrt(0.5 * (c.grid->b - c.grid->a) * sum);
}

double h1_seminorm(const SpectralField& c) {
    require_spectral(c);
    double sum = 0.0;
    for (int l = 0; l < c.grid->modes(); ++l)
        sum += c.grid->mu[l] * c.grid->mu[l] * std::norm(c.coeffs[l]);
    return std::sqrt(0.5 * (c.grid->b - c.grid->a) * sum);
}

double h2_norm(const SpectralField& c) {
    require_spectral(c);
    double sum = 0.0;
    for (int l = 0; l < c.grid->modes(); ++l) {
        const double m2 = c.grid->mu[l] * c.grid->mu[l];
        sum += (1.0 + m2 + m2 * m2) * std::norm(c.coeffs[l]);
    }
    return std::sqrt(0.5 * (c.grid->b - c.grid->a) * sum);
}

double lp_norm_nodal(const NodalField& v, double p) {
    require_nodal(v);
    if (!(p >= 1.0)) throw ConfigError("lp_norm_nodal: require p >= 1");
    const Grid1D& g = *v.grid;
    if (std::isinf(p)) {
        double m = 0.0;
        for (int j = 0; j < g.N; ++j) m = std::max(m, std::abs(v.values[j]));
        return m;
    }
    if (p == 2.0) {
        double sum = 0.0;
        for (int j = 0; j < g.N; ++j) sum += std::norm(v.values[j]);
        return std::sqrt(g.h * sum);
    }
    double sum = 0.0;
    for (int j = 0; j < g.N; ++j) sum += std::pow(std::abs(v.values[j]), p);
    return std::pow(g.h * sum, 1.0 / p);
}

} // namespace tssp
