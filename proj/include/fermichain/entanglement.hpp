#pragma once

#include <span>
#include <vector>

#include "fermichain/criticality.hpp"
#include "fermichain/spectral.hpp"

namespace fermichain {

/// Renyi entropy of the block from its correlation spectrum. alpha may be
/// +infinity (min-entropy).
double renyi_exact(const CorrelationSpectrum& spectrum, double alpha);

/// Model-dependent factor f(p_0, ..., p_m) of the asymptotic entropy.
double f_factor(std::span<const double> roots);

/// (1 + alpha) / (6 alpha).
double i1(double alpha);
/// The same coefficient by quadrature of (2/pi^2) Int_{-1}^{1} s_alpha(x)/(1-x^2) dx.
double i1_quadrature(double alpha);

/// Universal constant C~_alpha (single integral over t). Accepts alpha = inf.
double c_tilde(double alpha);
/// C~_alpha through the digamma representation; an independent check of c_tilde.
double c_tilde_oracle(double alpha);

struct EntropyReport {
  double alpha = 1.0;
  long L = 0;
  double s_exact = 0.0;
  double s_asymptotic = 0.0;
  double c_alpha = 0.0;
  double c_tilde = 0.0;
  double f_factor = 0.0;
  double r_L = 0.0;  // s_asymptotic / s_exact - 1
};

/// Asymptotic entropy for a critical analysis; s_exact and r_L are NaN.
EntropyReport renyi_asymptotic(const FermiAnalysis& analysis, long L, double alpha);

/// Exact and asymptotic entropy of the block of length L.
EntropyReport entropy_report(const FermiAnalysis& analysis, long L, double alpha);

/// entropy_report over several block lengths, evaluated in parallel.
/// With `with_asymptotic` false only s_exact is filled (any phase allowed).
std::vector<EntropyReport> entropy_sweep(const FermiAnalysis& analysis, std::span<const long> L_list, double alpha,
                                         bool with_asymptotic, unsigned threads = 0);

}  // namespace fermichain
