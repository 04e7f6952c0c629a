#pragma once
#include <array>
#include <complex>

#include "tssp/errors.hpp"

namespace tssp {

// Power-law nonlinearity f(rho) = beta * rho^sigma acting on the density
// rho = |psi|^2. For 0 < sigma < 1 the function is continuous but not
// differentiable at rho = 0.
struct SemiSmoothNonlinearity {
    double beta = 0.0;
    double sigma = 1.0;
};

/// Validated constructor; rejects sigma <= 0.
SemiSmoothNonlinearity make_nonlinearity(double beta, double sigma);

/// beta * rho^sigma, evaluated as beta*exp(sigma*log(rho)) with an exact
/// zero at rho = 0. Rejects negative rho.
double f_eval(const SemiSmoothNonlinearity& nl, double rho);

/// Antiderivative F(rho) = (beta/(sigma+1)) rho^(sigma+1).
double F_eval(const SemiSmoothNonlinearity& nl, double rho);

/// G(z) = beta*sigma*|z|^(2sigma-2) z^2 for z != 0, G(0) = 0. Computed as
/// beta*sigma*|z|^(2sigma) (z/|z|)^2 so small |z| cannot overflow.
/// Satisfies |G(z)| = |beta|*sigma*|z|^(2sigma).
std::complex<double> G_eval(const SemiSmoothNonlinearity& nl, std::complex<double> z);

/// Generalized binomial coefficient binom(j - sigma, j) for j = 0..3:
/// 1 for j = 0, otherwise prod_{k=0}^{j-1} (j - sigma - k) / j!.
double gen_binom(int j, double sigma);

/// S_sigma = sum_{j=0}^{3} |binom(j - sigma, j)|.
double abs_binom_sum(double sigma);

// Local C^3 regularization: f_eps equals f on rho >= eps^2 and
// rho*Q_eps(rho) below, with Q_eps the cubic
//   Q_eps(rho) = sum_j q_coeffs[j] * (1 - rho/eps^2)^j,
//   q_coeffs[j] = beta * eps^(2sigma-2) * binom(j - sigma, j),
// which makes f_eps three times continuously differentiable across
// rho = eps^2 and keeps f_eps(0) = 0. Meaningful for 0 < sigma < 1; for
// sigma >= 1 the formulas stay valid but the solver never uses them
// (f is already C^1 at zero).
struct RegularizedNonlinearity {
    SemiSmoothNonlinearity base{};
    double eps = 0.1;
    std::array<double, 4> q_coeffs{};
};

/// Rejects eps outside (0,1).
RegularizedNonlinearity make_regularized(const SemiSmoothNonlinearity& nl, double eps);

/// The cubic Q_eps(rho); valid for any rho but used on [0, eps^2).
double q_eps_eval(const RegularizedNonlinearity& rnl, double rho);

/// Piecewise value of f_eps. Rejects negative rho.
double f_eps_eval(const RegularizedNonlinearity& rnl, double rho);

/// Analytic k-th derivative of f_eps, k = 1..3, dispatching on the branch
/// (power law for rho >= eps^2, polynomial below).
double f_eps_deriv(const RegularizedNonlinearity& rnl, double rho, int k);

// One-sided branch evaluators (k = 0 is the value). Each formula is valid
// on the closure of its branch; comparing them at rho = eps^2 certifies
// the C^3 junction.
double f_eps_power_branch(const RegularizedNonlinearity& rnl, double rho, int k);
double f_eps_poly_branch(const RegularizedNonlinearity& rnl, double rho, int k);

} // namespace tssp
