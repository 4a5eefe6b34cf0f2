#include "fermichain/models.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fermichain/error.hpp"
#include "fermichain/quadrature.hpp"
#include "fermichain/specfun.hpp"

namespace fermichain {
namespace {

using constants::pi;
using constants::two_pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kCustomTailTolerance = 1e-12;
constexpr long kCustomMaxTerms = 1L << 26;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

// Maps p to [0, pi]; returns -1 when the reflection p -> 2pi - p was used.
int reduce_angle(double& p) {
  p = std::fmod(p, two_pi);
  if (p < 0.0) p += two_pi;
  if (p > pi) {
    p = two_pi - p;
    return -1;
  }
  return 1;
}

// Int_0^inf x^{nu-1} coth(x) sinh^2(x) / (sinh^2(x) + s)^k dx, the s-derivatives
// of the power-law dispersion written as a function of s = sin^2(p/2).
double power_law_moment(double nu, double s, int k) {
  auto integrand = [nu, s, k](double x) {
    if (x <= 0.0) return 0.0;
    const double xpow = std::exp((nu - 1.0) * std::log(x));
    if (x > 40.0) {
      const double log_a = 2.0 * x - 2.0 * std::log(2.0);
      const double a_inv = std::exp(-log_a);
      return xpow * std::exp((1.0 - k) * log_a) / std::pow(1.0 + s * a_inv, k);
    }
    const double sh = std::sinh(x);
    const double a = sh * sh;
    return xpow / std::tanh(x) * a / std::pow(a + s, k);
  };
  std::vector<double> cuts = {0.0};
  const double width = std::sqrt(s);
  for (double c : {0.25 * width, width, 4.0 * width})
    if (c < 1.0) cuts.push_back(c);
  cuts.push_back(1.0);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  quad::Options opt;
  opt.abs_tol = 1e-15;
  opt.rel_tol = 1e-12;
  const auto head = quad::integrate(integrand, cuts, opt);
  const auto tail = quad::integrate_to_infinity(integrand, 1.0, opt);
  quad::Result total{head.value + tail.value, head.abs_error + tail.abs_error, 0,
                     head.converged && tail.converged};
  return quad::value_or_throw(total, "power-law dispersion derivative");
}

}  // namespace

std::string to_string(Family f) {
  switch (f) {
    case Family::haldane_shastry: return "haldane-shastry";
    case Family::finite_range: return "finite-range";
    case Family::power_law: return "power-law";
    case Family::rational_cubic: return "rational-cubic";
    case Family::custom_summable: return "custom-summable";
  }
  return "unknown";
}

InteractionModel InteractionModel::haldane_shastry() { return InteractionModel(HaldaneShastry{}); }

InteractionModel InteractionModel::finite_range(std::vector<double> coefficients) {
  if (coefficients.empty()) fail(ErrorCode::invalid_argument, "finite-range model needs at least one coefficient");
  for (double c : coefficients)
    if (!std::isfinite(c)) fail(ErrorCode::invalid_argument, "finite-range coefficients must be finite");
  if (coefficients.back() == 0.0)
    fail(ErrorCode::invalid_argument, "finite-range model: the last coefficient (range r) must be nonzero");
  return InteractionModel(FiniteRange{std::move(coefficients)});
}

InteractionModel InteractionModel::power_law(double exponent, double amplitude) {
  if (!(exponent > 1.0)) {
    std::ostringstream msg;
    msg << "power-law model requires exponent > 1 (got " << exponent
        << "); the interaction series diverges otherwise";
    fail(ErrorCode::domain, msg.str());
  }
  if (!std::isfinite(exponent) || !std::isfinite(amplitude))
    fail(ErrorCode::invalid_argument, "power-law parameters must be finite");
  return InteractionModel(PowerLaw{exponent, amplitude});
}

InteractionModel InteractionModel::rational_cubic(double J) {
  if (!std::isfinite(J)) fail(ErrorCode::invalid_argument, "rational-cubic coupling J must be finite");
  return InteractionModel(RationalCubic{J});
}

InteractionModel InteractionModel::custom(std::function<double(long)> strength,
                                          std::function<double(long)> tail_bound) {
  if (!strength || !tail_bound)
    fail(ErrorCode::invalid_argument, "custom model needs both a strength and a tail bound");
  return InteractionModel(CustomSummable{std::move(strength), std::move(tail_bound)});
}

Family InteractionModel::family() const {
  return std::visit(overloaded{
                        [](const HaldaneShastry&) { return Family::haldane_shastry; },
                        [](const FiniteRange&) { return Family::finite_range; },
                        [](const PowerLaw&) { return Family::power_law; },
                        [](const RationalCubic&) { return Family::rational_cubic; },
                        [](const CustomSummable&) { return Family::custom_summable; },
                    },
                    params_);
}

double InteractionModel::strength(long N, long j) const {
  if (N < 1 || j < 1 || 2 * j > N) fail(ErrorCode::domain, "h_N(j) is defined for 1 <= j <= N/2");
  const double dj = static_cast<double>(j);
  return std::visit(overloaded{
                        [&](const HaldaneShastry&) {
                          const double dn = static_cast<double>(N);
                          const double s = std::sin(pi * dj / dn);
                          return (pi * pi / (dn * dn)) / (s * s);
                        },
                        [&](const FiniteRange& m) {
                          return j <= static_cast<long>(m.coefficients.size()) ? m.coefficients[j - 1] : 0.0;
                        },
                        [&](const PowerLaw& m) { return m.amplitude * std::pow(dj, -m.exponent); },
                        [&](const RationalCubic& m) { return 1.0 / (dj * dj) - m.J / (dj * dj * dj); },
                        [&](const CustomSummable& m) { return m.strength(j); },
                    },
                    params_);
}

double mode_energy(const InteractionModel& model, long N, long l) {
  if (N < 1) fail(ErrorCode::domain, "mode_energy requires N >= 1");
  if (l < 0 || l >= N) fail(ErrorCode::domain, "mode index l must lie in [0, N-1]");
  const double dn = static_cast<double>(N);
  double sum = 0.0;
  for (long j = 1; j <= (N - 1) / 2; ++j) {
    // 1 - cos(2 pi j l / N) = 2 sin^2(pi (j l mod N) / N)
    const long phase = static_cast<long>((static_cast<long long>(j) * l) % N);
    const double s = std::sin(pi * static_cast<double>(phase) / dn);
    sum += 4.0 * s * s * model.strength(N, j);
  }
  if (N % 2 == 0 && l % 2 == 1) sum += 2.0 * model.strength(N, N / 2);
  return sum;
}

DispersionProfile::DispersionProfile(InteractionModel model) : model_(std::move(model)) {
  if (const auto* c = std::get_if<CustomSummable>(&model_.parameters())) {
    long n = 16;
    while (!(c->tail_bound(n) < kCustomTailTolerance)) {
      if (n >= kCustomMaxTerms)
        fail(ErrorCode::domain, "custom model: declared tail bound never drops below 1e-12");
      n *= 2;
    }
    // Shrink back to the smallest n satisfying the bound.
    long lo = n / 2, hi = n;
    while (hi - lo > 1) {
      const long mid = lo + (hi - lo) / 2;
      (c->tail_bound(mid) < kCustomTailTolerance ? hi : lo) = mid;
    }
    truncation_ = hi;
  }
}

double DispersionProfile::energy(double p) const {
  if (!std::isfinite(p)) fail(ErrorCode::domain, "dispersion requires a finite momentum");
  reduce_angle(p);
  return energy_reduced(p);
}

double DispersionProfile::derivative(double p, int order) const {
  if (order != 1 && order != 2) fail(ErrorCode::invalid_argument, "derivative order must be 1 or 2");
  if (!std::isfinite(p)) fail(ErrorCode::domain, "dispersion requires a finite momentum");
  const int reflected = reduce_angle(p);
  const double d = derivative_reduced(p, order);
  return order == 1 ? reflected * d : d;
}

double DispersionProfile::energy_reduced(double p) const {
  return std::visit(
      overloaded{
          [&](const HaldaneShastry&) { return 0.5 * p * (two_pi - p); },
          [&](const FiniteRange& m) {
            double e = 0.0;
            for (std::size_t j = 0; j < m.coefficients.size(); ++j) {
              const double s = std::sin(0.5 * static_cast<double>(j + 1) * p);
              e += 4.0 * m.coefficients[j] * s * s;
            }
            return e;
          },
          [&](const PowerLaw& m) {
            if (p == 0.0) return 0.0;
            return 2.0 * m.amplitude * (specfun::zeta(m.exponent) - specfun::polylog_circle(m.exponent, p).real());
          },
          [&](const RationalCubic& m) {
            if (p == 0.0) return 0.0;
            return 0.5 * p * (two_pi - p) - 2.0 * m.J * (specfun::zeta(3.0) - specfun::polylog_circle(3.0, p).real());
          },
          [&](const CustomSummable& m) {
            double e = 0.0;
            for (long j = truncation_; j >= 1; --j) {
              const double s = std::sin(0.5 * static_cast<double>(j) * p);
              e += 4.0 * m.strength(j) * s * s;
            }
            return e;
          },
      },
      model_.parameters());
}

double DispersionProfile::derivative_reduced(double p, int order) const {
  return std::visit(
      overloaded{
          [&](const HaldaneShastry&) { return order == 1 ? pi - p : -1.0; },
          [&](const FiniteRange& m) {
            double d = 0.0;
            for (std::size_t j = 0; j < m.coefficients.size(); ++j) {
              const double k = static_cast<double>(j + 1);
              d += order == 1 ? 2.0 * m.coefficients[j] * k * std::sin(k * p)
                              : 2.0 * m.coefficients[j] * k * k * std::cos(k * p);
            }
            return d;
          },
          [&](const PowerLaw& m) {
            const double s = std::pow(std::sin(0.5 * p), 2);
            if (s == 0.0) {
              if (order == 1) return 0.0;
              return m.exponent > 3.0 ? 2.0 * m.amplitude * specfun::zeta(m.exponent - 2.0)
                                      : std::copysign(HUGE_VAL, m.amplitude);
            }
            const double scale = std::pow(2.0, m.exponent) * m.amplitude / std::tgamma(m.exponent);
            const double e_s = scale * power_law_moment(m.exponent, s, 2);
            if (order == 1) return 0.5 * e_s * std::sin(p);
            const double e_ss = -2.0 * scale * power_law_moment(m.exponent, s, 3);
            const double sp = std::sin(p);
            return 0.25 * e_ss * sp * sp + 0.5 * e_s * std::cos(p);
          },
          [&](const RationalCubic& m) {
            if (order == 1) {
              if (p == 0.0) return pi;
              return (pi - p) - 2.0 * m.J * specfun::polylog_circle(2.0, p).imag();
            }
            return -1.0 + 2.0 * m.J * std::log(2.0 * std::sin(0.5 * p));
          },
          [&](const CustomSummable& m) {
            double d = 0.0;
            for (long j = truncation_; j >= 1; --j) {
              const double k = static_cast<double>(j);
              d += order == 1 ? 2.0 * m.strength(j) * k * std::sin(k * p)
                              : 2.0 * m.strength(j) * k * k * std::cos(k * p);
            }
            return d;
          },
      },
      model_.parameters());
}

double dispersion(const DispersionProfile& profile, double p) { return profile.energy(p); }

double dispersion_derivative(const DispersionProfile& profile, double p, int order) {
  return profile.derivative(p, order);
}

MonotonicityReport monotonicity_report(const DispersionProfile& profile, int grid) {
  if (grid < 8) fail(ErrorCode::invalid_argument, "monotonicity grid needs at least 8 points");
  const double h = pi / grid;

  // Sign of E' just inside each end of (0, pi); E' vanishes at smooth
  // endpoints, in which case the curvature decides.
  auto edge_sign = [&](double p, int inward) {
    const double d1 = profile.derivative(p, 1);
    if (std::abs(d1) > 1e-12) return sign_of(d1);
    return inward * sign_of(profile.derivative(p, 2));
  };

  std::vector<double> ps;
  std::vector<int> signs;
  ps.push_back(0.0);
  signs.push_back(edge_sign(0.0, +1));
  for (int k = 1; k < grid; ++k) {
    ps.push_back(k * h);
    signs.push_back(sign_of(profile.derivative(k * h, 1)));
  }
  ps.push_back(pi);
  signs.push_back(edge_sign(pi, -1));

  MonotonicityReport report;
  for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
    if (signs[k] == 0 && k > 0) {
      report.critical_points.push_back(ps[k]);
      continue;
    }
    if (signs[k] == 0 || signs[k + 1] == 0 || signs[k] == signs[k + 1]) continue;
    double lo = ps[k], hi = ps[k + 1];
    const int left = signs[k];
    while (hi - lo > 1e-12) {
      const double mid = 0.5 * (lo + hi);
      (sign_of(profile.derivative(mid, 1)) == left ? lo : hi) = mid;
    }
    report.critical_points.push_back(0.5 * (lo + hi));
  }
  report.monotonic = report.critical_points.empty();

  report.e_min = std::min(profile.energy(0.0), profile.energy(pi));
  report.e_max = std::max(profile.energy(0.0), profile.energy(pi));
  for (double c : report.critical_points) {
    const double e = profile.energy(c);
    report.e_min = std::min(report.e_min, e);
    report.e_max = std::max(report.e_max, e);
  }
  return report;
}

}  // namespace fermichain
