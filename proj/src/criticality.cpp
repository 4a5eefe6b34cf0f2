#include "fermichain/criticality.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "fermichain/error.hpp"
#include "fermichain/quadrature.hpp"
#include "fermichain/specfun.hpp"

namespace fermichain {
namespace {

using constants::pi;
using constants::two_pi;

constexpr double kRootTolerance = 1e-13;
constexpr double kFlatSlope = 1e-8;
constexpr double kFitResidualLimit = 0.02;

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

double snap_tolerance(double mu) { return 1e-10 * std::max(1.0, std::abs(mu)); }

double factorial(int n) { return std::tgamma(n + 1.0); }

FermiPoint make_root(const DispersionProfile& profile, double p, int multiplicity) {
  FermiPoint r;
  r.momentum = p;
  r.multiplicity = multiplicity;
  r.velocity = std::abs(profile.derivative(p, 1));
  if (multiplicity > 1) {
    double top;
    if (multiplicity == 2) {
      top = profile.derivative(p, 2);
    } else {
      // Third derivative from central differences of E''.
      const double h = 1e-4;
      top = (profile.derivative(p + h, 2) - profile.derivative(p - h, 2)) / (2.0 * h);
    }
    r.curvature_sign = sign_of(top);
    r.scale = std::pow(factorial(multiplicity) / std::abs(top), 1.0 / multiplicity);
  }
  return r;
}

int multiplicity_at(const DispersionProfile& profile, double p) {
  if (std::abs(profile.derivative(p, 1)) >= kFlatSlope) return 1;
  return std::abs(profile.derivative(p, 2)) > kFlatSlope ? 2 : 3;
}

std::vector<double> panel_points(const FermiAnalysis& a) {
  std::vector<double> pts = {0.0, pi};
  for (const auto& r : a.roots) pts.push_back(r.momentum);
  for (double c : a.critical_points) pts.push_back(c);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace

std::string to_string(Phase p) {
  switch (p) {
    case Phase::gapped_below: return "gapped-below";
    case Phase::gapped_above: return "gapped-above";
    case Phase::critical: return "critical";
    case Phase::multiple_root: return "non-critical-multiple-root";
    case Phase::boundary: return "boundary";
  }
  return "unknown";
}

std::vector<double> FermiAnalysis::momenta() const {
  std::vector<double> out;
  out.reserve(roots.size());
  for (const auto& r : roots) out.push_back(r.momentum);
  return out;
}

double FermiAnalysis::sea_measure() const {
  double m = 0.0;
  for (const auto& i : sea) m += i.length();
  return m;
}

std::vector<double> FermiAnalysis::surface() const {
  std::vector<double> pts;
  for (const auto& r : roots) {
    if (r.multiplicity % 2 == 0) continue;
    pts.push_back(r.momentum);
    pts.push_back(two_pi - r.momentum);
  }
  std::sort(pts.begin(), pts.end());
  return pts;
}

FermiAnalysis fermi_points(const DispersionProfile& profile, double mu, int grid) {
  if (!std::isfinite(mu)) fail(ErrorCode::invalid_argument, "chemical potential must be finite");
  const auto mono = monotonicity_report(profile, grid);
  const double snap = snap_tolerance(mu);

  FermiAnalysis a;
  a.mu = mu;
  a.e_min = mono.e_min;
  a.e_max = mono.e_max;
  a.critical_points = mono.critical_points;

  // Tangencies at interior extrema.
  for (double c : mono.critical_points) {
    if (std::abs(profile.energy(c) - mu) <= snap) {
      const int nu = std::abs(profile.derivative(c, 2)) > kFlatSlope ? 2 : 3;
      a.roots.push_back(make_root(profile, c, nu));
    }
  }
  auto near_known = [&](double p) {
    return std::any_of(a.roots.begin(), a.roots.end(),
                       [p](const FermiPoint& r) { return std::abs(r.momentum - p) < 1e-9; });
  };

  // Sign changes of E - mu on the grid augmented with the extrema.
  std::vector<double> ps;
  for (int k = 0; k <= grid; ++k) ps.push_back(pi * k / grid);
  ps.insert(ps.end(), mono.critical_points.begin(), mono.critical_points.end());
  std::sort(ps.begin(), ps.end());
  std::vector<double> g(ps.size());
  for (std::size_t k = 0; k < ps.size(); ++k) g[k] = profile.energy(ps[k]) - mu;

  for (std::size_t k = 0; k + 1 < ps.size(); ++k) {
    if (k > 0 && g[k] == 0.0 && !near_known(ps[k]))
      a.roots.push_back(make_root(profile, ps[k], multiplicity_at(profile, ps[k])));
    if (!(g[k] * g[k + 1] < 0.0)) continue;
    double lo = ps[k], hi = ps[k + 1];
    const int left = sign_of(g[k]);
    while (hi - lo > kRootTolerance) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      (sign_of(profile.energy(mid) - mu) == left ? lo : hi) = mid;
    }
    const double r = 0.5 * (lo + hi);
    if (near_known(r)) continue;
    a.roots.push_back(make_root(profile, r, multiplicity_at(profile, r)));
  }
  std::sort(a.roots.begin(), a.roots.end(),
            [](const FermiPoint& x, const FermiPoint& y) { return x.momentum < y.momentum; });

  // Fermi sea as arcs of the circle.
  int origin = sign_of(profile.energy(0.0) - mu);
  if (origin == 0) origin = sign_of(profile.energy(0.5 * pi / grid) - mu);
  a.sea_contains_origin = origin < 0;
  const auto bounds = a.surface();
  if (bounds.empty()) {
    if (a.sea_contains_origin) a.sea.push_back({0.0, two_pi});
  } else if (a.sea_contains_origin) {
    a.sea.push_back({bounds.back() - two_pi, bounds.front()});
    for (std::size_t k = 1; k + 1 < bounds.size(); k += 2) a.sea.push_back({bounds[k], bounds[k + 1]});
  } else {
    for (std::size_t k = 0; k + 1 < bounds.size(); k += 2) a.sea.push_back({bounds[k], bounds[k + 1]});
  }

  const bool has_multiple =
      std::any_of(a.roots.begin(), a.roots.end(), [](const FermiPoint& r) { return r.multiplicity > 1; });
  const bool at_endpoint =
      std::abs(profile.energy(0.0) - mu) <= snap || std::abs(profile.energy(pi) - mu) <= snap;
  if (mu < a.e_min - snap) {
    a.phase = Phase::gapped_below;
  } else if (mu > a.e_max + snap) {
    a.phase = Phase::gapped_above;
  } else if (has_multiple) {
    a.phase = Phase::multiple_root;
  } else if (at_endpoint) {
    a.phase = Phase::boundary;
  } else if (a.roots.empty()) {
    a.phase = mu <= a.e_min ? Phase::gapped_below : Phase::gapped_above;
  } else {
    a.phase = Phase::critical;
    a.central_charge = static_cast<int>(a.roots.size());
  }
  return a;
}

FermiAnalysis classify_phase(const DispersionProfile& profile, double mu, int grid) {
  return fermi_points(profile, mu, grid);
}

ThermalResult free_energy(const DispersionProfile& profile, double mu, double T) {
  return free_energy(profile, fermi_points(profile, mu), T);
}

ThermalResult free_energy(const DispersionProfile& profile, const FermiAnalysis& analysis, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) fail(ErrorCode::domain, "free energy requires T > 0");
  const double mu = analysis.mu;
  const auto pts = panel_points(analysis);

  quad::Options ground_opt;
  ground_opt.abs_tol = 1e-13;
  ground_opt.rel_tol = 1e-13;
  double f0 = 0.0, err = 0.0;
  for (std::size_t k = 0; k + 1 < pts.size(); ++k) {
    const double mid = 0.5 * (pts[k] + pts[k + 1]);
    if (!(profile.energy(mid) < mu)) continue;
    const auto r = quad::integrate([&](double p) { return profile.energy(p) - mu; }, pts[k], pts[k + 1], ground_opt);
    f0 += quad::value_or_throw(r, "ground-state energy density");
    err += r.abs_error;
  }
  f0 /= pi;

  // f - f0 = -(T/pi) Int_0^pi log(1 + exp(-|E - mu|/T)) dp
  quad::Options opt;
  opt.abs_tol = 1e-300;
  opt.rel_tol = 1e-11;
  opt.max_intervals = 20000;
  // The integrand is concentrated within a thermal width of each Fermi point.
  auto thermal_pts = pts;
  for (const auto& r : analysis.roots) {
    const double width =
        r.multiplicity == 1 ? T / r.velocity : r.scale * std::pow(T, 1.0 / static_cast<double>(r.multiplicity));
    if (!(width > 0.0) || !std::isfinite(width)) continue;
    for (double k : {0.25, 1.0, 4.0, 16.0, 64.0, 256.0})
      for (double q : {r.momentum - k * width, r.momentum + k * width})
        if (q > 0.0 && q < pi) thermal_pts.push_back(q);
  }
  std::sort(thermal_pts.begin(), thermal_pts.end());
  thermal_pts.erase(std::unique(thermal_pts.begin(), thermal_pts.end()), thermal_pts.end());
  const auto thermal = quad::integrate(
      [&](double p) { return std::log1p(std::exp(-std::abs(profile.energy(p) - mu) / T)); }, thermal_pts, opt);
  const double integral = quad::value_or_throw(thermal, "free energy");
  ThermalResult out;
  out.T = T;
  out.f0 = f0;
  out.excess = -(T / pi) * integral;
  out.f = f0 + out.excess;
  out.abs_error = err / pi + (T / pi) * thermal.abs_error;
  return out;
}

std::vector<double> default_temperature_grid(int n, double lo, double hi) {
  if (n < 2 || !(lo > 0.0) || !(hi > lo)) fail(ErrorCode::invalid_argument, "invalid temperature grid");
  std::vector<double> t(n);
  for (int k = 0; k < n; ++k) t[k] = lo * std::pow(hi / lo, static_cast<double>(k) / (n - 1));
  return t;
}

ScalingFit low_temperature_fit(const DispersionProfile& profile, double mu, std::span<const double> temperatures) {
  if (temperatures.size() < 4) fail(ErrorCode::invalid_argument, "low-temperature fit needs at least 4 temperatures");
  for (double t : temperatures)
    if (!(t > 0.0)) fail(ErrorCode::domain, "temperatures must be positive");
  const auto analysis = fermi_points(profile, mu);

  const std::size_t n = temperatures.size();
  std::vector<double> xs(n), ys(n);
  int sign = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double excess = free_energy(profile, analysis, temperatures[k]).excess;
    if (excess == 0.0) fail(ErrorCode::convergence, "fit rejected: f(T) - f0 underflows to zero");
    sign = sign_of(excess);
    xs[k] = std::log(temperatures[k]);
    ys[k] = std::log(std::abs(excess));
  }
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    sxx += (xs[k] - mx) * (xs[k] - mx);
    sxy += (xs[k] - mx) * (ys[k] - my);
  }
  if (sxx == 0.0) fail(ErrorCode::invalid_argument, "temperatures must not all coincide");
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.coefficient = sign * std::exp(intercept);
  double ss = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double r = ys[k] - (intercept + fit.exponent * xs[k]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);

  fit.predicted_exponent = std::numeric_limits<double>::quiet_NaN();
  fit.predicted_coefficient = std::numeric_limits<double>::quiet_NaN();
  if (analysis.phase == Phase::critical) {
    double inv_v = 0.0;
    for (const auto& r : analysis.roots) inv_v += 1.0 / r.velocity;
    fit.predicted_exponent = 2.0;
    fit.predicted_coefficient = -(pi / 6.0) * inv_v;
  } else if (analysis.phase == Phase::multiple_root) {
    int top = 1;
    for (const auto& r : analysis.roots) top = std::max(top, r.multiplicity);
    const double inv = 1.0 / top;
    double amp = 0.0;
    for (const auto& r : analysis.roots) {
      if (r.multiplicity != top) continue;
      amp -= (2.0 * r.scale / pi) * (1.0 - std::pow(2.0, -inv)) * std::tgamma(1.0 + inv) * specfun::zeta(1.0 + inv);
    }
    fit.predicted_exponent = 1.0 + inv;
    fit.predicted_coefficient = amp;
  }

  if (fit.residual > kFitResidualLimit) {
    std::ostringstream msg;
    msg << "fit rejected: log-log residual " << fit.residual
        << " exceeds " << kFitResidualLimit << " (temperatures outside the power-law regime?)";
    fail(ErrorCode::convergence, msg.str());
  }
  return fit;
}

}  // namespace fermichain
