#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace fermichain {

enum class Family { haldane_shastry, finite_range, power_law, rational_cubic, custom_summable };

std::string to_string(Family f);

struct HaldaneShastry {};

/// h(j) = coefficients[j-1] for 1 <= j <= r, zero beyond.
struct FiniteRange {
  std::vector<double> coefficients;
};

/// h(j) = amplitude * j^{-exponent}, exponent > 1.
struct PowerLaw {
  double exponent = 2.0;
  double amplitude = 1.0;
};

/// h(j) = 1/j^2 - J/j^3.
struct RationalCubic {
  double J = 0.0;
};

/// Arbitrary absolutely summable h(j). `tail_bound(n)` must bound
/// Sum_{j>n} |h(j)| from above.
struct CustomSummable {
  std::function<double(long)> strength;
  std::function<double(long)> tail_bound;
};

/// Immutable interaction strength h_N(j) of a translationally invariant chain.
class InteractionModel {
 public:
  using Parameters = std::variant<HaldaneShastry, FiniteRange, PowerLaw, RationalCubic, CustomSummable>;

  static InteractionModel haldane_shastry();
  static InteractionModel finite_range(std::vector<double> coefficients);
  static InteractionModel power_law(double exponent, double amplitude = 1.0);
  static InteractionModel rational_cubic(double J);
  static InteractionModel custom(std::function<double(long)> strength, std::function<double(long)> tail_bound);

  Family family() const;
  const Parameters& parameters() const { return params_; }

  /// h_N(j) on the half range 1 <= j <= N/2.
  double strength(long N, long j) const;

 private:
  explicit InteractionModel(Parameters p) : params_(std::move(p)) {}
  Parameters params_;
};

struct MonotonicityReport {
  bool monotonic = true;
  std::vector<double> critical_points;  // interior zeros of E' in (0, pi), sorted
  double e_min = 0.0;
  double e_max = 0.0;
};

/// Thermodynamic-limit dispersion relation E(p) of a model, with derivatives.
class DispersionProfile {
 public:
  explicit DispersionProfile(InteractionModel model);

  const InteractionModel& model() const { return model_; }

  /// E(p) for any real p (2 pi periodic, even).
  double energy(double p) const;
  /// E'(p) or E''(p).
  double derivative(double p, int order) const;

  /// Truncation length of the series for custom models (0 otherwise).
  long truncation() const { return truncation_; }

 private:
  double energy_reduced(double p) const;  // p in [0, pi]
  double derivative_reduced(double p, int order) const;

  InteractionModel model_;
  long truncation_ = 0;
};

/// Single-mode energy eps_N(l) of the N-site chain via the half-range sum.
double mode_energy(const InteractionModel& model, long N, long l);

double dispersion(const DispersionProfile& profile, double p);
double dispersion_derivative(const DispersionProfile& profile, double p, int order);

/// Sign-change scan of E' on `grid` interior points of (0, pi) plus endpoint
/// curvature checks, refined by bisection to 1e-12.
MonotonicityReport monotonicity_report(const DispersionProfile& profile, int grid = 4096);

}  // namespace fermichain
