#pragma once

#include <complex>

namespace fermichain {

using Complex = std::complex<double>;

namespace constants {
inline constexpr double pi = 3.14159265358979323846264338327950288;
inline constexpr double two_pi = 6.28318530717958647692528676655900577;
// Euler-Mascheroni constant, 0.57721566490153286060651209...
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
}  // namespace constants

namespace specfun {

/// Riemann zeta for real nu > 1 (Euler-Maclaurin, relative error ~1e-15).
double zeta(double nu);

/// Sum_{n >= first} n^{-s} for s > 1 and first >= 1.
double power_tail(double s, long first);

/// Li_nu(e^{ip}) for nu > 1 and any real p, through the Bose-type integral
/// representation. Absolute accuracy ~1e-12.
Complex polylog_circle(double nu, double p);

/// Complex digamma psi(z) for Re z > 0.
Complex digamma(Complex z);

/// Re psi(1/2 + i w).
double digamma_real_part(double w);

/// log[G(1+beta) G(1-beta)] for |Re beta| < 1/2, G the Barnes G-function.
Complex log_barnes_pair(Complex beta);

/// Renyi single-mode entropy s_alpha(x) of an eigenvalue x of 2A-1:
/// (1-alpha)^{-1} log[((1+x)/2)^alpha + ((1-x)/2)^alpha], Shannon limit at
/// alpha = 1 and min-entropy at alpha = inf. Inputs within 1e-9 outside [-1,1] are clamped.
double entropy_kernel(double alpha, double x);

}  // namespace specfun
}  // namespace fermichain
