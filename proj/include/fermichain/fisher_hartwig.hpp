#pragma once

#include <span>
#include <vector>

#include "fermichain/criticality.hpp"
#include "fermichain/specfun.hpp"

namespace fermichain {

/// Parameters of the piecewise-constant symbol of lambda + 1 - 2 A_L.
struct FHSymbol {
  Complex lambda;
  Complex beta;                      // log((lambda+1)/(lambda-1)) / (2 pi i)
  std::vector<Complex> beta_j;       // (-1)^j beta
  Complex b;                         // (lambda+1) ((lambda+1)/(lambda-1))^{-P}
  double P = 0.0;
  std::vector<double> roots;         // p_0 < ... < p_m
  std::vector<double> jump_angles;   // +-p_i, 2(m+1) values
};

FHSymbol symbol_params(std::span<const double> roots, Complex lambda);

/// Asymptotic log D_L(lambda) for a sea containing the origin.
Complex log_dl_asymptotic(const FHSymbol& symbol, long L);

struct FHDeviation {
  long L = 0;
  Complex exact;
  Complex asymptotic;
  double deviation = 0.0;  // |exact - asymptotic| modulo 2 pi i
};

/// Exact against asymptotic log-determinants for each L.
std::vector<FHDeviation> fh_deviation(const FermiAnalysis& analysis, Complex lambda, std::span<const long> L_list,
                                       unsigned threads = 0);

}  // namespace fermichain
