#include "fermichain/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "fermichain/error.hpp"
#include "fermichain/parallel.hpp"
#include "fermichain/quadrature.hpp"
#include "fermichain/specfun.hpp"

namespace fermichain {
namespace {

using constants::pi;

constexpr double kNearPure = 1e-9;

void check_alpha(double alpha) {
  if (!(alpha > 0.0)) {
    std::ostringstream msg;
    msg << "Renyi index alpha must be > 0, got " << alpha;
    fail(ErrorCode::domain, msg.str());
  }
}

bool near_one(double alpha) { return std::abs(alpha - 1.0) < 1e-6; }

// s_alpha(tanh(pi w)) for w >= 0, written in q = exp(-2 pi w) so that the
// tail is computed without cancellation.
double kernel_w(double alpha, double w) {
  const double q = std::exp(-2.0 * pi * w);
  if (std::isinf(alpha)) return std::log1p(q);
  if (near_one(alpha)) return std::log1p(q) + 2.0 * pi * w * q / (1.0 + q);
  return (std::log1p(std::exp(-2.0 * pi * alpha * w)) - alpha * std::log1p(q)) / (1.0 - alpha);
}

double decay_rate(double alpha) { return std::isinf(alpha) ? 1.0 : std::min(1.0, alpha); }

double integrate_w(double alpha, const quad::Integrand& f, const char* what) {
  const double W = 48.0 / (2.0 * pi * decay_rate(alpha));
  const double pts[] = {0.0, W / 64, W / 16, W / 4, W};
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  return quad::value_or_throw(quad::integrate(f, pts, opt), what);
}

using Real = long double;

// 2 e^{-t} / (1 - e^{-2t}), safe for large t.
Real csch(Real t) {
  const Real q = std::exp(-t);
  return -2.0L * q / std::expm1(-2.0L * t);
}

// Integrand of C~_alpha at t for finite alpha != 1, already divided by 1 - alpha.
Real c_tilde_integrand(Real a, Real t, Real t_series) {
  const Real k = (1.0L + a) / (6.0L * a);  // (1 - a^2)/(6a) / (1 - a)
  if (t < t_series) {
    // Series of the bracket divided by (1 - a); the common (a - 1) cancels.
    const Real c2 = -(a + 1.0L) * (17.0L * a * a + 7.0L) / (360.0L * a * a * a);
    const Real c4 = (a + 1.0L) * (129.0L * a * a * a * a + 80.0L * a * a + 31.0L) / (15120.0L * std::pow(a, 5.0L));
    return k * (-std::expm1(-2.0L * t)) / t + c2 * t + c4 * t * t * t;
  }
  const Real c = csch(t);
  const Real bracket = a * c * c - c * csch(t / a) - (1.0L - a * a) / (6.0L * a) * std::exp(-2.0L * t);
  return bracket / ((1.0L - a) * t);
}

Real c_tilde_one_integrand(Real t) {
  if (t < 0.02L) return -std::expm1(-2.0L * t) / (3.0L * t) - 2.0L * t / 15.0L + 2.0L * t * t * t / 63.0L;
  const Real c = csch(t);
  const Real coth = 1.0L / std::tanh(t);
  return coth * c * c - c * c / t - std::exp(-2.0L * t) / (3.0L * t);
}

Real c_tilde_inf_integrand(Real t) {
  if (t < 0.02L)
    return -std::expm1(-2.0L * t) / (6.0L * t) - 17.0L * t / 360.0L + 43.0L * t * t * t / 5040.0L;
  const Real c = csch(t);
  return (c / t - c * c - std::exp(-2.0L * t) / 6.0L) / t;
}

double integrate_t(const quad::Integrand& f, double t_series, double t_max) {
  std::vector<double> pts = {0.0};
  if (t_series > 0.0 && t_series < t_max) pts.push_back(t_series);
  for (double b = std::max(1.0, 2.0 * t_series); b < t_max; b *= 4.0) pts.push_back(b);
  pts.push_back(t_max);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  quad::Options opt;
  opt.abs_tol = 1e-13;
  opt.rel_tol = 1e-12;
  return quad::value_or_throw(quad::integrate(f, pts, opt), "universal constant C~_alpha");
}

// S_app = n I1 log(L f^{1/n}) + n C~ = n I1 log L + C_alpha.
EntropyReport with_length(EntropyReport r, double n, long L) {
  r.L = L;
  r.s_asymptotic = n * i1(r.alpha) * std::log(static_cast<double>(L)) + r.c_alpha;
  return r;
}

}  // namespace

double renyi_exact(const CorrelationSpectrum& spectrum, double alpha) {
  check_alpha(alpha);
  double s = 0.0;
  for (double ev : spectrum.eigenvalues) {
    const double x = 2.0 * ev - 1.0;
    if (std::abs(x) > 1.0 + kNearPure) {
      std::ostringstream msg;
      msg << "correlation eigenvalue " << ev << " lies outside [0,1]";
      fail(ErrorCode::domain, msg.str());
    }
    if (1.0 - std::abs(x) < kNearPure) continue;
    s += specfun::entropy_kernel(alpha, x);
  }
  return s;
}

double f_factor(std::span<const double> roots) {
  if (roots.empty()) fail(ErrorCode::invalid_argument, "f factor needs at least one Fermi point");
  double log_f = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (!(roots[i] > 0.0 && roots[i] < pi)) fail(ErrorCode::domain, "Fermi points must lie in (0, pi)");
    log_f += std::log(2.0 * std::sin(roots[i]));
    for (std::size_t j = 0; j < i; ++j) {
      const double minus = std::sin(0.5 * (roots[i] - roots[j]));
      if (minus == 0.0) fail(ErrorCode::domain, "coincident Fermi points in f factor");
      const double plus = std::sin(0.5 * (roots[i] + roots[j]));
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      log_f += sign * 2.0 * (std::log(std::abs(plus)) - std::log(std::abs(minus)));
    }
  }
  return std::exp(log_f);
}

double i1(double alpha) {
  check_alpha(alpha);
  if (std::isinf(alpha)) return 1.0 / 6.0;
  return (1.0 + alpha) / (6.0 * alpha);
}

double i1_quadrature(double alpha) {
  check_alpha(alpha);
  // x = tanh(pi w) turns dx/(1 - x^2) into pi dw.
  const double v = integrate_w(alpha, [alpha](double w) { return kernel_w(alpha, w); }, "I1 quadrature");
  return 4.0 / pi * v;
}

double c_tilde(double alpha) {
  check_alpha(alpha);
  if (std::isinf(alpha)) {
    return integrate_t([](double t) { return static_cast<double>(c_tilde_inf_integrand(t)); }, 0.02,
                       std::log(2.0 / 1e-14) / 1.0 + 4.0);
  }
  if (near_one(alpha)) {
    return integrate_t([](double t) { return static_cast<double>(c_tilde_one_integrand(t)); }, 0.02,
                       std::log(4.0 / 1e-14) / 2.0 + 4.0);
  }
  const double rate = 2.0 * std::min(1.0, 1.0 / alpha);
  // Upper cut where alpha e^{-rate t}/t < 1e-14.
  double t_max = 1.0;
  while (alpha * std::exp(-rate * t_max) / t_max >= 1e-14) t_max *= 1.25;
  const double t_series = 0.02 * std::min(1.0, alpha);
  const Real a = alpha;
  return integrate_t(
      [a, t_series](double t) { return static_cast<double>(c_tilde_integrand(a, t, t_series)); }, t_series, t_max);
}

double c_tilde_oracle(double alpha) {
  check_alpha(alpha);
  const double v = integrate_w(
      alpha, [alpha](double w) { return kernel_w(alpha, w) * specfun::digamma_real_part(w); }, "digamma form of C~_alpha");
  return -4.0 / pi * v;
}

EntropyReport renyi_asymptotic(const FermiAnalysis& analysis, long L, double alpha) {
  check_alpha(alpha);
  if (L < 1) fail(ErrorCode::invalid_argument, "block length L must be >= 1");
  if (analysis.phase != Phase::critical)
    fail(ErrorCode::domain, "asymptotic entropy needs a critical phase, got " + to_string(analysis.phase));
  const auto roots = analysis.momenta();
  const double n = static_cast<double>(roots.size());
  EntropyReport r;
  r.alpha = alpha;
  r.f_factor = f_factor(roots);
  r.c_tilde = c_tilde(alpha);
  r.c_alpha = i1(alpha) * std::log(r.f_factor) + n * r.c_tilde;
  r.s_exact = std::numeric_limits<double>::quiet_NaN();
  r.r_L = std::numeric_limits<double>::quiet_NaN();
  return with_length(r, n, L);
}

EntropyReport entropy_report(const FermiAnalysis& analysis, long L, double alpha) {
  EntropyReport r = renyi_asymptotic(analysis, L, alpha);
  r.s_exact = renyi_exact(correlation_spectrum(analysis, L), alpha);
  r.r_L = r.s_asymptotic / r.s_exact - 1.0;
  return r;
}

std::vector<EntropyReport> entropy_sweep(const FermiAnalysis& analysis, std::span<const long> L_list, double alpha,
                                         bool with_asymptotic, unsigned threads) {
  check_alpha(alpha);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  EntropyReport base{alpha, 0, nan, nan, nan, nan, nan, nan};
  if (with_asymptotic) base = renyi_asymptotic(analysis, 1, alpha);
  const double n = static_cast<double>(analysis.roots.size());
  std::vector<EntropyReport> out(L_list.size());
  parallel_for(L_list.size(), threads, [&](std::size_t i) {
    const long L = L_list[i];
    if (L < 1) fail(ErrorCode::invalid_argument, "block length L must be >= 1");
    EntropyReport r = with_asymptotic ? with_length(base, n, L) : base;
    r.L = L;
    r.s_exact = renyi_exact(correlation_spectrum(analysis, L), alpha);
    if (with_asymptotic) r.r_L = r.s_asymptotic / r.s_exact - 1.0;
    out[i] = r;
  });
  return out;
}

}  // namespace fermichain
