#include "tssp/observables.hpp"

#include <cmath>
#include <ostream>

#include "tssp/dst.hpp"
#include "tssp/norms.hpp"

namespace tssp {

double mass(const NodalField& v) {
    const double n = l2_norm(dst_analyze(v));
    return n * n;
}

double energy(const NodalField& v, const Potential& pot, const SemiSmoothNonlinearity& nl) {
    require_nodal(v);
    if (!pot.grid || !same_grid(*pot.grid, *v.grid))
        throw ConfigError("energy: potential grid does not match the field grid");
    const Grid1D& g = *v.grid;
    const double kin = h1_seminorm(dst_analyze(v));
    double node_sum = 0.0; // endpoints vanish
    for (int j = 1; j < g.N; ++j) {
        const double rho = std::norm(v.values[j]);
        node_sum += pot.values[j] * rho + F_eval(nl, rho);
    }
    return kin * kin + g.h * node_sum;
}

ObservableRecord observe(const SimulationState& s, const Potential& pot,
                         const SemiSmoothNonlinearity& nl) {
    ObservableRecord r;
    r.time = s.time;
    SpectralField c = dst_analyze(s.field);
    r.l2 = l2_norm(c);
    r.mass = r.l2 * r.l2;
    const double semi = h1_seminorm(c);
    r.h1 = std::sqrt(r.l2 * r.l2 + semi * semi);
    r.linf = lp_norm_nodal(s.field, kInfNorm);
    r.energy = energy(s.field, pot, nl);
    return r;
}

ErrorNorms error_norms(const NodalField& numeric, const SpectralField& reference) {
    require_nodal(numeric);
    require_spectral(reference);
    const Grid1D& gc = *numeric.grid;
    const Grid1D& gf = *reference.grid;
    if (!refines(gc, gf))
        throw ConfigError("error_norms: reference grid must refine the numeric grid");

    SpectralField diff = embed_to(dst_analyze(numeric), reference.grid);
    for (int l = 0; l < gf.modes(); ++l) diff.coeffs[l] -= reference.coeffs[l];

    ErrorNorms e;
    e.l2 = l2_norm(diff);
    const double semi = h1_seminorm(diff);
    e.h1 = std::sqrt(e.l2 * e.l2 + semi * semi);

    NodalField ref_nodal = dst_synthesize(reference);
    const int stride = gf.N / gc.N;
    double m = 0.0;
    for (int j = 0; j < gc.N; ++j)
        m = std::max(m, std::abs(numeric.values[j] - ref_nodal.values[j * stride]));
    e.linf = m;
    return e;
}

std::vector<Complex> forward_diff(const NodalField& v) {
    require_nodal(v);
    const Grid1D& g = *v.grid;
    std::vector<Complex> d(g.N);
    for (int j = 0; j < g.N; ++j) d[j] = (v.values[j + 1] - v.values[j]) / g.h;
    return d;
}

std::vector<Complex> central_second_diff(const NodalField& v) {
    require_nodal(v);
    const Grid1D& g = *v.grid;
    std::vector<Complex> d(g.N - 1);
    for (int j = 1; j < g.N; ++j)
        d[j - 1] = (v.values[j + 1] - 2.0 * v.values[j] + v.values[j - 1]) / (g.h * g.h);
    return d;
}

double forward_diff_l2(const NodalField& v) {
    const Grid1D& g = *v.grid;
    std::vector<Complex> d = forward_diff(v);
    double sum = 0.0;
    for (const Complex& z : d) sum += std::norm(z);
    return std::sqrt(g.h * sum);
}

NormEquivalence norm_equivalence_check(const SpectralField& phi) {
    NormEquivalence r;
    r.lhs = forward_diff_l2(dst_synthesize(phi));
    r.mid = h1_seminorm(phi);
    r.rhs = 0.5 * M_PI * r.lhs;
    const double slack = 1e-12;
    r.pass = r.lhs <= r.mid * (1.0 + slack) && r.mid <= r.rhs * (1.0 + slack);
    return r;
}

double gagliardo_nirenberg_ratio(const NodalField& v) {
    const double l4 = lp_norm_nodal(v, 4.0);
    const double l2 = lp_norm_nodal(v, 2.0);
    const double d2 = forward_diff_l2(v);
    if (l2 == 0.0 || d2 == 0.0) return 0.0;
    return l4 / (std::pow(l2, 0.75) * std::pow(d2, 0.25));
}

double embedding_ratio(const SpectralField& phi) {
    const double h2 = h2_norm(phi);
    if (h2 == 0.0) return 0.0;
    NodalField v = dst_synthesize(phi);
    std::vector<Complex> d = forward_diff(v);
    double sum = 0.0;
    for (const Complex& z : d) {
        const double a = std::norm(z);
        sum += a * a;
    }
    const double l4 = std::pow(v.grid->h * sum, 0.25);
    return l4 / h2;
}

void write_observable_csv(std::ostream& os, const std::vector<ObservableRecord>& rows,
                          std::string_view metadata) {
    os << "time,mass,energy,l2,h1,linf\n";
    os.precision(17);
    for (const auto& r : rows)
        os << r.time << ',' << r.mass << ',' << r.energy << ',' << r.l2 << ',' << r.h1 << ','
           << r.linf << '\n';
    os << "# " << metadata << '\n';
}

} // namespace tssp
