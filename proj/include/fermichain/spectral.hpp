#pragma once

#include <span>
#include <vector>

#include "fermichain/criticality.hpp"
#include "fermichain/specfun.hpp"

namespace fermichain {

struct CorrelationSpectrum {
  long L = 0;
  std::vector<double> first_row;    // A_{1,1+d}, d = 0..L-1
  std::vector<double> eigenvalues;  // ascending, not clamped
};

/// Thermodynamic-limit correlation row from the Fermi sea of `analysis`.
std::vector<double> correlation_row(const FermiAnalysis& analysis, long L);

/// Finite-chain row (1/N) Sum_{eps_N(l) < mu} cos(2 pi d l / N).
std::vector<double> correlation_row_finite(const InteractionModel& model, double mu, long L, long N);

/// Ascending eigenvalues of the symmetric Toeplitz matrix generated by `first_row`.
std::vector<double> eigenvalues_symmetric(std::span<const double> first_row);

/// Ascending eigenvalues of a dense symmetric n x n matrix (row-major, lower
/// triangle is read). Householder tridiagonalization + implicit QL.
std::vector<double> eigenvalues_dense(std::vector<double> a, long n);

CorrelationSpectrum correlation_spectrum(const FermiAnalysis& analysis, long L);
CorrelationSpectrum correlation_spectrum(std::vector<double> first_row);

/// log det(lambda + 1 - 2 A_L) as a sum of principal logarithms.
Complex log_det_char(const CorrelationSpectrum& spectrum, Complex lambda);

}  // namespace fermichain
