#include "fermichain/fisher_hartwig.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fermichain/entanglement.hpp"
#include "fermichain/error.hpp"
#include "fermichain/parallel.hpp"
#include "fermichain/spectral.hpp"

namespace fermichain {
namespace {

using constants::pi;
using constants::two_pi;

constexpr double kCutDistance = 1e-9;

double distance_to_cut(Complex z) {
  const double x = std::clamp(z.real(), -1.0, 1.0);
  return std::abs(z - Complex(x, 0.0));
}

Complex reduce_mod_two_pi_i(Complex z) {
  return {z.real(), z.imag() - two_pi * std::round(z.imag() / two_pi)};
}

}  // namespace

FHSymbol symbol_params(std::span<const double> roots, Complex lambda) {
  if (distance_to_cut(lambda) <= kCutDistance) {
    std::ostringstream msg;
    msg << "lambda=" << lambda.real() << (lambda.imag() < 0 ? "" : "+") << lambda.imag()
        << "i lies on the cut [-1,1]";
    fail(ErrorCode::domain, msg.str());
  }
  if (roots.empty()) fail(ErrorCode::invalid_argument, "symbol needs at least one Fermi point");
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!(roots[i] > 0.0 && roots[i] < pi)) fail(ErrorCode::domain, "Fermi points must lie in (0, pi)");
    if (i > 0 && !(roots[i] > roots[i - 1])) fail(ErrorCode::invalid_argument, "Fermi points must be increasing");
  }
  FHSymbol s;
  s.lambda = lambda;
  s.roots.assign(roots.begin(), roots.end());
  const Complex log_w = std::log((lambda + 1.0) / (lambda - 1.0));
  s.beta = log_w / Complex(0.0, two_pi);
  const std::size_t m = roots.size() - 1;
  double P = static_cast<double>(m % 2);
  for (std::size_t k = 0; k < roots.size(); ++k) {
    P += ((k % 2 == 0) ? 1.0 : -1.0) * roots[k] / pi;
    s.beta_j.push_back((k % 2 == 0) ? s.beta : -s.beta);
    s.jump_angles.push_back(-roots[k]);
    s.jump_angles.push_back(roots[k]);
  }
  std::sort(s.jump_angles.begin(), s.jump_angles.end());
  s.P = P;
  s.b = (lambda + 1.0) * std::exp(-P * log_w);
  return s;
}

Complex log_dl_asymptotic(const FHSymbol& symbol, long L) {
  if (L < 1) fail(ErrorCode::invalid_argument, "block length L must be >= 1");
  const double n = static_cast<double>(symbol.roots.size());
  const Complex lambda = symbol.lambda;
  const Complex log_w = std::log((lambda + 1.0) / (lambda - 1.0));
  const double log_scale = std::log(f_factor(symbol.roots)) + n * std::log(static_cast<double>(L));
  const Complex beta2 = symbol.beta * symbol.beta;
  return -2.0 * beta2 * log_scale + static_cast<double>(L) * std::log(lambda + 1.0) -
         static_cast<double>(L) * symbol.P * log_w + 2.0 * n * specfun::log_barnes_pair(symbol.beta);
}

std::vector<FHDeviation> fh_deviation(const FermiAnalysis& analysis, Complex lambda, std::span<const long> L_list,
                                       unsigned threads) {
  if (analysis.phase != Phase::critical)
    fail(ErrorCode::domain, "Fisher-Hartwig check needs a critical phase, got " + to_string(analysis.phase));
  const auto roots = analysis.momenta();
  // With the origin outside the sea, A_L = 1 - A'_L for the complementary sea
  // and D_L(lambda) = (-1)^L D'_L(-lambda).
  const bool complement = !analysis.sea_contains_origin;
  const auto symbol = symbol_params(roots, complement ? -lambda : lambda);
  std::vector<FHDeviation> out(L_list.size());
  parallel_for(L_list.size(), threads, [&](std::size_t i) {
    const long L = L_list[i];
    FHDeviation d;
    d.L = L;
    d.exact = log_det_char(correlation_spectrum(analysis, L), lambda);
    d.asymptotic = log_dl_asymptotic(symbol, L);
    if (complement) d.asymptotic += Complex(0.0, pi * static_cast<double>(L % 2));
    d.deviation = std::abs(reduce_mod_two_pi_i(d.exact - d.asymptotic));
    out[i] = d;
  });
  return out;
}

}  // namespace fermichain
