#pragma once

#include <span>
#include <string>
#include <vector>

#include "fermichain/models.hpp"

namespace fermichain {

enum class Phase {
  gapped_below,   // mu < E_min
  gapped_above,   // mu > E_max
  critical,       // E_min < mu < E_max, all Fermi points simple
  multiple_root,  // some Fermi point in (0, pi) has multiplicity > 1
  boundary,       // mu equals E at p = 0 or p = pi
};

std::string to_string(Phase p);

struct FermiPoint {
  double momentum = 0.0;  // in (0, pi)
  int multiplicity = 1;
  double velocity = 0.0;  // |E'(p)|
  // For multiplicity nu > 1: E - mu ~ curvature_sign * ((p - p_k)/scale)^nu.
  double scale = 0.0;
  int curvature_sign = 0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const { return hi - lo; }
};

struct FermiAnalysis {
  double mu = 0.0;
  std::vector<FermiPoint> roots;  // sorted by momentum
  std::vector<Interval> sea;      // disjoint arcs of the circle where E < mu, lo in (-2pi, 2pi)
  bool sea_contains_origin = false;
  Phase phase = Phase::gapped_below;
  int central_charge = 0;  // m + 1 when critical, else 0
  double e_min = 0.0;
  double e_max = 0.0;
  std::vector<double> critical_points;  // interior extrema of E in (0, pi)

  std::vector<double> momenta() const;
  double sea_measure() const;
  /// Points where the occupation jumps, i.e. the Fermi "surface" on the circle.
  std::vector<double> surface() const;
};

/// Roots of E(p) = mu in (0, pi) with multiplicities and velocities, the Fermi
/// sea and the phase label.
FermiAnalysis fermi_points(const DispersionProfile& profile, double mu, int grid = 4096);

/// Same analysis; kept as the phase-classification entry point.
FermiAnalysis classify_phase(const DispersionProfile& profile, double mu, int grid = 4096);

struct ThermalResult {
  double T = 0.0;
  double f = 0.0;       // free energy per spin
  double f0 = 0.0;      // ground-state energy density
  double excess = 0.0;  // f - f0, computed without cancellation
  double abs_error = 0.0;
};

/// Free energy per spin in the thermodynamic limit.
ThermalResult free_energy(const DispersionProfile& profile, double mu, double T);
ThermalResult free_energy(const DispersionProfile& profile, const FermiAnalysis& analysis, double T);

struct ScalingFit {
  double exponent = 0.0;
  double coefficient = 0.0;            // fitted amplitude of f - f0
  double predicted_exponent = 0.0;     // 2 (critical) or 1 + 1/nu (multiple root)
  double predicted_coefficient = 0.0;  // NaN when no prediction applies
  double residual = 0.0;               // rms residual of the log-log fit
};

/// Least-squares fit of log|f(T) - f0| against log T.
ScalingFit low_temperature_fit(const DispersionProfile& profile, double mu, std::span<const double> temperatures);

/// Default geometric grid 1e-3 ... 1e-2 with n points.
std::vector<double> default_temperature_grid(int n = 8, double lo = 1e-3, double hi = 1e-2);

}  // namespace fermichain
