#include "tssp/nonlinearity.hpp"

#include <cmath>
#include <string>

namespace tssp {
namespace {

// rho^p for rho > 0 via exp(p log rho); callers short-circuit rho = 0.
inline double pow_pos(double rho, double p) { return std::exp(p * std::log(rho)); }

void require_rho(double rho, const char* who) {
    if (rho < 0.0 || std::isnan(rho))
        throw ConfigError(std::string(who) + ": require rho >= 0, got " + std::to_string(rho));
}

} // namespace

SemiSmoothNonlinearity make_nonlinearity(double beta, double sigma) {
    if (!(sigma > 0.0))
        throw ConfigError("nonlinearity: require sigma > 0, got " + std::to_string(sigma));
    return SemiSmoothNonlinearity{beta, sigma};
}

double f_eval(const SemiSmoothNonlinearity& nl, double rho) {
    require_rho(rho, "f_eval");
    if (rho == 0.0) return 0.0;
    return nl.beta * pow_pos(rho, nl.sigma);
}

double F_eval(const SemiSmoothNonlinearity& nl, double rho) {
    require_rho(rho, "F_eval");
    if (rho == 0.0) return 0.0;
    return nl.beta / (nl.sigma + 1.0) * pow_pos(rho, nl.sigma + 1.0);
}

std::complex<double> G_eval(const SemiSmoothNonlinearity& nl, std::complex<double> z) {
    const double r = std::abs(z);
    if (r == 0.0) return {0.0, 0.0};
    const std::complex<double> w = z / r; // unit modulus
    return nl.beta * nl.sigma * pow_pos(r, 2.0 * nl.sigma) * w * w;
}

double gen_binom(int j, double sigma) {
    if (j < 0 || j > 3) throw ConfigError("gen_binom: require 0 <= j <= 3");
    double num = 1.0, den = 1.0;
    for (int k = 0; k < j; ++k) {
        num *= (j - sigma - k);
        den *= (k + 1);
    }
    return num / den;
}

double abs_binom_sum(double sigma) {
    double s = 0.0;
    for (int j = 0; j <= 3; ++j) s += std::abs(gen_binom(j, sigma));
    return s;
}

RegularizedNonlinearity make_regularized(const SemiSmoothNonlinearity& nl, double eps) {
    if (!(nl.sigma > 0.0)) throw ConfigError("regularization: require sigma > 0");
    if (!(eps > 0.0 && eps < 1.0))
        throw ConfigError("regularization: require 0 < eps < 1, got " + std::to_string(eps));
    RegularizedNonlinearity rnl;
    rnl.base = nl;
    rnl.eps = eps;
    const double scale = nl.beta * std::pow(eps, 2.0 * nl.sigma - 2.0);
    for (int j = 0; j <= 3; ++j) rnl.q_coeffs[j] = scale * gen_binom(j, nl.sigma);
    return rnl;
}

double q_eps_eval(const RegularizedNonlinearity& rnl, double rho) {
    const double u = 1.0 - rho / (rnl.eps * rnl.eps);
    const auto& q = rnl.q_coeffs;
    return q[0] + u * (q[1] + u * (q[2] + u * q[3]));
}

double f_eps_eval(const RegularizedNonlinearity& rnl, double rho) {
    require_rho(rho, "f_eps_eval");
    if (rho >= rnl.eps * rnl.eps) return f_eval(rnl.base, rho);
    return rho * q_eps_eval(rnl, rho);
}

double f_eps_power_branch(const RegularizedNonlinearity& rnl, double rho, int k) {
    if (k < 0 || k > 3) throw ConfigError("f_eps_power_branch: require 0 <= k <= 3");
    if (k == 0) return f_eval(rnl.base, rho);
    require_rho(rho, "f_eps_power_branch");
    const double sigma = rnl.base.sigma;
    double factor = rnl.base.beta;
    for (int i = 0; i < k; ++i) factor *= (sigma - i);
    return factor * pow_pos(rho, sigma - k);
}

double f_eps_poly_branch(const RegularizedNonlinearity& rnl, double rho, int k) {
    if (k < 0 || k > 3) throw ConfigError("f_eps_poly_branch: require 0 <= k <= 3");
    require_rho(rho, "f_eps_poly_branch");
    const double e2 = rnl.eps * rnl.eps;
    const double u = 1.0 - rho / e2;
    const double du = -1.0 / e2; // du/drho
    const auto& q = rnl.q_coeffs;
    // Q and its rho-derivatives
    const double Q0 = q[0] + u * (q[1] + u * (q[2] + u * q[3]));
    const double Q1 = du * (q[1] + u * (2.0 * q[2] + u * 3.0 * q[3]));
    const double Q2 = du * du * (2.0 * q[2] + u * 6.0 * q[3]);
    const double Q3 = du * du * du * 6.0 * q[3];
    switch (k) {
        case 0: return rho * Q0;
        case 1: return Q0 + rho * Q1;
        case 2: return 2.0 * Q1 + rho * Q2;
        default: return 3.0 * Q2 + rho * Q3;
    }
}

double f_eps_deriv(const RegularizedNonlinearity& rnl, double rho, int k) {
    if (k < 1 || k > 3) throw ConfigError("f_eps_deriv: require 1 <= k <= 3");
    require_rho(rho, "f_eps_deriv");
    if (rho >= rnl.eps * rnl.eps) return f_eps_power_branch(rnl, rho, k);
    return f_eps_poly_branch(rnl, rho, k);
}

} // namespace tssp
