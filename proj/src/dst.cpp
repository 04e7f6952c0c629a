#include "tssp/dst.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace tssp {
namespace {

// Cached FFTW plans per transform size. Plans are created once under a
// lock with FFTW_ESTIMATE (deterministic plan choice, unlike MEASURE) and
// FFTW_UNALIGNED so the new-array execute below accepts any buffers.
// fftw_execute_r2r on distinct arrays is thread-safe.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(int n) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = plans_.find(n);
        if (it != plans_.end()) return it->second;
        double* buf = fftw_alloc_real(n);
        fftw_plan p = fftw_plan_r2r_1d(n, buf, buf, FFTW_RODFT00,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        plans_.emplace(n, p);
        return p;
    }

private:
    PlanCache() = default;
    std::mutex mu_;
    std::unordered_map<int, fftw_plan> plans_;
};

// DST-I of size n: out_k = 2 sum_j in_j sin(pi (j+1)(k+1) / (n+1)).
// Out-of-place r2r leaves the input intact.
void rodft00(int n, const double* in, double* out) {
    fftw_execute_r2r(PlanCache::instance().get(n), const_cast<double*>(in), out);
}

} // namespace

SpectralField dst_analyze(const NodalField& v) {
    require_nodal(v);
    const Grid1D& g = *v.grid;
    const int n = g.N - 1;
    std::vector<double> re(n), im(n), re_t(n), im_t(n);
    for (int j = 0; j < n; ++j) {
        re[j] = v.values[j + 1].real();
        im[j] = v.values[j + 1].imag();
    }
    rodft00(n, re.data(), re_t.data());
    rodft00(n, im.data(), im_t.data());
    SpectralField c = make_spectral(v.grid);
    const double scale = 1.0 / g.N; // RODFT00 gives 2*sum; convention wants (2/N)*sum
    for (int l = 0; l < n; ++l) c.coeffs[l] = Complex(re_t[l] * scale, im_t[l] * scale);
    return c;
}

NodalField dst_synthesize(const SpectralField& c) {
    require_spectral(c);
    const Grid1D& g = *c.grid;
    const int n = g.N - 1;
    std::vector<double> re(n), im(n), re_t(n), im_t(n);
    for (int l = 0; l < n; ++l) {
        re[l] = c.coeffs[l].real();
        im[l] = c.coeffs[l].imag();
    }
    rodft00(n, re.data(), re_t.data());
    rodft00(n, im.data(), im_t.data());
    NodalField v = make_nodal(c.grid);
    for (int j = 1; j < g.N; ++j) v.values[j] = Complex(re_t[j - 1] * 0.5, im_t[j - 1] * 0.5);
    return v;
}

Complex evaluate_series(const SpectralField& c, double x) {
    require_spectral(c);
    const Grid1D& g = *c.grid;
    if (x < g.a || x > g.b)
        throw ConfigError("evaluate_series: x=" + std::to_string(x) + " outside [" +
                          std::to_string(g.a) + ", " + std::to_string(g.b) + "]");
    Complex sum(0.0, 0.0);
    for (int l = 0; l < g.modes(); ++l) sum += c.coeffs[l] * std::sin(g.mu[l] * (x - g.a));
    return sum;
}

SpectralField truncate_to(const SpectralField& fine, const GridPtr& coarse) {
    require_spectral(fine);
    if (!refines(*coarse, *fine.grid))
        throw ConfigError("truncate_to: coarse grid must divide the fine grid on the same interval");
    SpectralField out = make_spectral(coarse);
    for (int l = 0; l < coarse->modes(); ++l) out.coeffs[l] = fine.coeffs[l];
    return out;
}

SpectralField embed_to(const SpectralField& coarse, const GridPtr& fine) {
    require_spectral(coarse);
    if (!refines(*coarse.grid, *fine))
        throw ConfigError("embed_to: target grid must refine the source grid on the same interval");
    SpectralField out = make_spectral(fine);
    for (int l = 0; l < coarse.grid->modes(); ++l) out.coeffs[l] = coarse.coeffs[l];
    return out;
}

} // namespace tssp
