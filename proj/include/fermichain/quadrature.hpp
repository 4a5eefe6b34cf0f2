#pragma once

#include <functional>
#include <initializer_list>
#include <span>
#include <string>

namespace fermichain::quad {

struct Options {
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int max_intervals = 4000;
};

struct Result {
  double value = 0.0;
  double abs_error = 0.0;
  int evaluations = 0;
  bool converged = false;
};

using Integrand = std::function<double(double)>;

/// Globally adaptive 15-point Gauss-Kronrod integration over the panels
/// [b0,b1], [b1,b2], ... given by `breakpoints` (sorted, at least two).
/// Never throws on non-convergence; inspect `converged`.
Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& opt = {});
Result integrate(const Integrand& f, double a, double b, const Options& opt = {});

/// Integral over [a, inf) through x = a + t/(1-t).
Result integrate_to_infinity(const Integrand& f, double a, const Options& opt = {});

/// Throws Error(convergence) carrying the achieved error estimate when the
/// result did not converge; returns the value otherwise.
double value_or_throw(const Result& r, const std::string& context);

}  // namespace fermichain::quad
