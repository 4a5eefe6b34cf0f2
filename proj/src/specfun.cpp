#include "fermichain/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

#include "fermichain/error.hpp"
#include "fermichain/quadrature.hpp"

namespace fermichain::specfun {
namespace {

using constants::pi;

// B_{2k} / (2k)!, k = 1..10
constexpr std::array<double, 10> kBernoulliOverFactorial = {
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30240.0,
    -1.0 / 1209600.0,
    1.0 / 47900160.0,
    -691.0 / 1307674368000.0,
    1.0 / 74724249600.0,
    -3617.0 / 10670622842880000.0,
    43867.0 / 5109094217170944000.0,
    -174611.0 / 802857662698291200000.0,
};

// B_{2k} / (2k), k = 1..9, for the digamma asymptotic series.
constexpr std::array<double, 9> kBernoulliOverIndex = {
    1.0 / 12.0, -1.0 / 120.0, 1.0 / 252.0, -1.0 / 240.0, 1.0 / 132.0,
    -691.0 / 32760.0, 1.0 / 12.0, -3617.0 / 8160.0, 43867.0 / 14364.0,
};

std::string describe(const char* what, double v) {
  std::ostringstream s;
  s << what << " (got " << v << ")";
  return s.str();
}

}  // namespace

double power_tail(double s, long first) {
  if (!(s > 1.0)) fail(ErrorCode::domain, describe("power_tail requires s > 1", s));
  if (first < 1) fail(ErrorCode::domain, "power_tail requires first >= 1");
  // Sum directly up to M >= 20, then Euler-Maclaurin from M.
  constexpr long kShift = 20;
  double head = 0.0;
  long m = first;
  for (; m < kShift; ++m) head += std::pow(static_cast<double>(m), -s);
  const double M = static_cast<double>(m);
  double tail = std::pow(M, 1.0 - s) / (s - 1.0) + 0.5 * std::pow(M, -s);
  double rising = s;  // s (s+1) ... (s+2k-2)
  double power = std::pow(M, -s - 1.0);
  for (std::size_t k = 0; k < kBernoulliOverFactorial.size(); ++k) {
    const double term = kBernoulliOverFactorial[k] * rising * power;
    tail += term;
    if (std::abs(term) < 1e-18 * std::abs(tail)) break;
    rising *= (s + 2.0 * k + 1.0) * (s + 2.0 * k + 2.0);
    power /= M * M;
  }
  return head + tail;
}

double zeta(double nu) {
  if (!(nu > 1.0)) fail(ErrorCode::domain, describe("zeta requires nu > 1", nu));
  if (nu > 60.0) return 1.0 + std::pow(2.0, -nu) + std::pow(3.0, -nu);
  return power_tail(nu, 1);
}

Complex polylog_circle(double nu, double p) {
  if (!(nu > 1.0)) fail(ErrorCode::domain, describe("polylog_circle requires nu > 1", nu));
  if (!std::isfinite(p)) fail(ErrorCode::domain, "polylog_circle requires a finite angle");
  p = std::fmod(p, constants::two_pi);
  if (p < 0.0) p += constants::two_pi;
  if (p == 0.0) return {zeta(nu), 0.0};

  // Li_nu(e^{ip}) = Gamma(nu)^{-1} Int_0^inf x^{nu-1} (e^{ip-x} - e^{-2x}) / D dx,
  // D = (1 - e^{-x})^2 + 4 e^{-x} sin^2(p/2).
  const double s2 = std::pow(std::sin(0.5 * p), 2);
  const double sp = std::sin(p);
  const double distance = std::min(p, constants::two_pi - p);

  auto kernel = [&](double x, bool real_part) {
    const double ex = std::exp(-x);
    const double om = -std::expm1(-x);
    const double denom = om * om + 4.0 * ex * s2;
    const double num = real_part ? ex * (om - 2.0 * s2) : ex * sp;
    return num / denom;
  };

  quad::Options opt;
  opt.abs_tol = 1e-14;
  opt.rel_tol = 1e-13;

  // On [0,1] use x = t^q with q = 1/(nu-1) when nu < 2 so that the
  // x^{nu-2} endpoint behaviour (small p) becomes bounded.
  const bool substitute = nu < 2.0;
  const double q = substitute ? 1.0 / (nu - 1.0) : 1.0;
  auto head_integrand = [&](double t, bool real_part) {
    if (substitute) {
      if (t <= 0.0) return 0.0;
      const double x = std::pow(t, q);
      // x^{nu-1} dx = t * q t^{q-1} dt = q t^q dt
      return q * x * kernel(x, real_part);
    }
    return std::pow(t, nu - 1.0) * kernel(t, real_part);
  };
  std::vector<double> cuts = {0.0};
  for (double c : {0.25 * distance, distance, 4.0 * distance}) {
    if (c < 1.0) cuts.push_back(substitute ? std::pow(c, nu - 1.0) : c);
  }
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  const double gamma_nu = std::tgamma(nu);
  double parts[2];
  double achieved = 0.0;
  bool ok = true;
  for (int k = 0; k < 2; ++k) {
    const bool real_part = k == 0;
    auto head = quad::integrate([&](double t) { return head_integrand(t, real_part); }, cuts, opt);
    auto tail = quad::integrate_to_infinity(
        [&](double x) { return std::exp((nu - 1.0) * std::log(x)) * kernel(x, real_part); }, 1.0, opt);
    parts[k] = (head.value + tail.value) / gamma_nu;
    achieved = std::max(achieved, (head.abs_error + tail.abs_error) / gamma_nu);
    ok = ok && head.converged && tail.converged;
  }
  if (!ok && achieved > 1e-10) {
    std::ostringstream msg;
    msg << "polylog_circle(" << nu << ", " << p << "): accuracy not reached, achieved bound " << achieved;
    fail(ErrorCode::convergence, msg.str());
  }
  return {parts[0], parts[1]};
}

Complex digamma(Complex z) {
  if (!(z.real() > 0.0)) fail(ErrorCode::domain, "digamma implemented for Re z > 0");
  Complex shift = 0.0;
  while (std::abs(z) < 20.0) {
    shift -= 1.0 / z;
    z += 1.0;
  }
  const Complex inv2 = 1.0 / (z * z);
  Complex series = 0.0;
  Complex power = inv2;
  for (double c : kBernoulliOverIndex) {
    series += c * power;
    power *= inv2;
  }
  return shift + std::log(z) - 0.5 / z - series;
}

double digamma_real_part(double w) {
  if (!std::isfinite(w)) fail(ErrorCode::domain, "digamma_real_part requires finite w");
  return digamma({0.5, w}).real();
}

Complex log_barnes_pair(Complex beta) {
  if (!(std::abs(beta.real()) < 0.5) || !std::isfinite(beta.imag()))
    fail(ErrorCode::domain, describe("log_barnes_pair requires |Re beta| < 1/2", beta.real()));
  const Complex x = beta * beta;
  // Direct sum up to N, chosen so |x|/N^2 <= 1/16; the remainder
  // -Sum_{k>=2} x^k/k * Sum_{n>N} n^{1-2k} is summed from its expansion.
  const long N = std::max<long>(24, static_cast<long>(std::ceil(4.0 * std::sqrt(std::abs(x)))) + 1);
  Complex sum = 0.0;
  for (long n = N; n >= 1; --n) {
    const double dn = static_cast<double>(n);
    sum += dn * std::log(1.0 - x / (dn * dn)) + x / dn;
  }
  Complex xk = x;
  for (int k = 2; k <= 16; ++k) {
    xk *= x;
    const Complex term = -xk / static_cast<double>(k) * power_tail(2.0 * k - 1.0, N + 1);
    sum += term;
    if (std::abs(term) < 1e-18) break;
  }
  return -(1.0 + constants::euler_gamma) * x + sum;
}

double entropy_kernel(double alpha, double x) {
  if (!(alpha > 0.0)) fail(ErrorCode::domain, describe("entropy_kernel requires alpha > 0", alpha));
  constexpr double kClamp = 1e-9;
  if (std::isnan(x) || x < -1.0 - kClamp || x > 1.0 + kClamp)
    fail(ErrorCode::domain, describe("entropy_kernel requires x in [-1,1]", x));
  x = std::clamp(x, -1.0, 1.0);
  const double q = 0.5 * (1.0 + x);
  const double r = 0.5 * (1.0 - x);
  if (std::abs(alpha - 1.0) < 1e-6) {
    double s = 0.0;
    if (q > 0.0) s -= q * std::log(q);
    if (r > 0.0) s -= r * std::log(r);
    return s;
  }
  const double big = std::max(q, r);
  const double small = std::min(q, r);
  if (std::isinf(alpha)) return -std::log(big);
  // log(q^a + r^a) = a log(big) + log1p((small/big)^a)
  double lse = alpha * std::log(big);
  if (small > 0.0) lse += std::log1p(std::pow(small / big, alpha));
  return std::max(0.0, lse / (1.0 - alpha));
}

}  // namespace fermichain::specfun
