#include <doctest.h>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>

#include "fermichain/criticality.hpp"
#include "fermichain/error.hpp"

using namespace fermichain;
constexpr double pi = std::numbers::pi;

namespace {

const DispersionProfile& hs() {
  static const DispersionProfile d(InteractionModel::haldane_shastry());
  return d;
}
const DispersionProfile& two_arc() {
  static const DispersionProfile d(InteractionModel::finite_range({1.0, 0.5}));
  return d;
}

// Independent free energy: adaptive Gauss-Kronrod on the raw formula.
double oracle_free_energy(const DispersionProfile& d, double mu, double T) {
  auto f = [&](double p) { return std::log1p(std::exp(-(d.energy(p) - mu) / T)); };
  return -(T / pi) * boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, 0.0, pi, 20, 1e-13);
}

}  // namespace

TEST_CASE("Fermi points of the two-interval sea") {
  const auto a = fermi_points(two_arc(), 4.25);
  REQUIRE(a.roots.size() == 2);
  CHECK(std::abs(a.roots[0].momentum - 1.71777151745840169) < 1e-11);
  CHECK(std::abs(a.roots[1].momentum - 2.59356424596948049) < 1e-11);
  CHECK(std::abs(a.roots[0].velocity - 1.39896632596590670) < 1e-10);
  CHECK(std::abs(a.roots[1].velocity - 0.73681287910395030) < 1e-10);
  CHECK(a.phase == Phase::critical);
  CHECK(a.central_charge == 2);
  REQUIRE(a.sea.size() == 2);
  CHECK(a.sea_measure() == doctest::Approx(2 * (a.roots[0].momentum + pi - a.roots[1].momentum)));
}

TEST_CASE("single Fermi point") {
  const auto a = fermi_points(hs(), 3 * pi * pi / 8);
  REQUIRE(a.roots.size() == 1);
  CHECK(std::abs(a.roots[0].momentum - pi / 2) < 1e-12);
  CHECK(a.roots[0].velocity == doctest::Approx(pi / 2));
  const auto b = fermi_points(hs(), 2.0);
  const double p0 = pi - std::sqrt(pi * pi - 4.0);
  REQUIRE(b.roots.size() == 1);
  CHECK(std::abs(b.roots[0].momentum - p0) < 1e-12);
  CHECK(b.roots[0].velocity == doctest::Approx(pi - p0));
  CHECK(b.phase == Phase::critical);
  CHECK(b.central_charge == 1);
}

TEST_CASE("phase labels") {
  CHECK(classify_phase(hs(), -1.0).phase == Phase::gapped_below);
  const auto above = classify_phase(hs(), 6.0);
  CHECK(above.phase == Phase::gapped_above);
  CHECK(6.0 - above.e_max == doctest::Approx(6.0 - pi * pi / 2));
  CHECK(classify_phase(hs(), pi * pi / 2).phase == Phase::boundary);
  CHECK(classify_phase(hs(), 0.0).phase == Phase::boundary);
  const auto tangent = classify_phase(two_arc(), 4.5);
  CHECK(tangent.phase == Phase::multiple_root);
  REQUIRE(tangent.roots.size() == 1);
  CHECK(tangent.roots[0].multiplicity == 2);
  CHECK(std::abs(tangent.roots[0].momentum - 2 * pi / 3) < 1e-10);
  CHECK(tangent.roots[0].scale == doctest::Approx(std::sqrt(2.0 / 3.0)));
  CHECK(tangent.central_charge == 0);
  CHECK_THROWS_AS(fermi_points(hs(), NAN), Error);
}

TEST_CASE("roots solve E = mu and the sea matches the root count") {
  const std::vector<InteractionModel> models = {
      InteractionModel::haldane_shastry(), InteractionModel::finite_range({1.0, 0.5}),
      InteractionModel::finite_range({1.0, -0.6, 0.3}), InteractionModel::power_law(2.5),
      InteractionModel::rational_cubic(1.2)};
  for (const auto& m : models) {
    const DispersionProfile d(m);
    const auto mono = monotonicity_report(d);
    for (double s : {0.17, 0.43, 0.61, 0.88}) {
      const double mu = mono.e_min + s * (mono.e_max - mono.e_min);
      const auto a = fermi_points(d, mu);
      for (const auto& r : a.roots) CHECK(std::abs(d.energy(r.momentum) - mu) < 1e-10);
      if (a.phase != Phase::critical) continue;
      // c = half the number of sea boundary points = number of sea arcs
      CHECK(static_cast<std::size_t>(a.central_charge) == a.surface().size() / 2);
      CHECK(static_cast<std::size_t>(a.central_charge) == a.sea.size());
      double measure = 0.0;
      for (int k = 0; k < 20000; ++k) {
        const double p = 2 * pi * (k + 0.5) / 20000;
        if (d.energy(p) < mu) measure += 2 * pi / 20000;
      }
      CHECK(std::abs(a.sea_measure() - measure) < 2e-3);
    }
  }
}

TEST_CASE("free energy") {
  CHECK(free_energy(hs(), 6.0, 0.01).f0 == doctest::Approx(pi * pi / 3 - 6.0).epsilon(1e-13));
  const auto low = free_energy(hs(), -1.0, 0.1);
  CHECK(std::abs(low.f) < 0.1 * std::exp(-10.0));
  for (double mu : {-0.5, 2.0, 4.25, 7.0}) {
    for (double T : {0.05, 0.3, 1.0}) {
      const auto r = free_energy(two_arc(), mu, T);
      CHECK(r.excess < 0.0);
      CHECK(r.f <= r.f0);
      CHECK(std::abs(r.f - oracle_free_energy(two_arc(), mu, T)) < 1e-10);
    }
  }
  CHECK_THROWS_AS(free_energy(hs(), 1.0, 0.0), Error);
}

TEST_CASE("gapped bounds") {
  for (double T : {0.05, 0.1, 0.2}) {
    const double mu_low = -0.7;
    CHECK(std::abs(free_energy(hs(), mu_low, T).f) <= T * std::exp(-(0.0 - mu_low) / T));
    const double mu_high = pi * pi / 2 + 0.6;
    const auto r = free_energy(hs(), mu_high, T);
    CHECK(std::abs(r.f - r.f0) <= T * std::exp(-(mu_high - pi * pi / 2) / T));
  }
}

TEST_CASE("low-temperature scaling") {
  const auto grid = default_temperature_grid();
  const auto a = low_temperature_fit(hs(), 3 * pi * pi / 8, grid);
  CHECK(std::abs(a.exponent - 2.0) < 0.05);
  CHECK(std::abs(a.coefficient / (-1.0 / 3) - 1.0) < 0.02);
  CHECK(a.predicted_coefficient == doctest::Approx(-1.0 / 3).epsilon(1e-10));

  const auto b = low_temperature_fit(two_arc(), 4.25, grid);
  const double prediction = -(pi / 6) * (1 / 1.39896632596590670 + 1 / 0.73681287910395030);
  CHECK(b.predicted_coefficient == doctest::Approx(prediction).epsilon(1e-9));
  CHECK(std::abs(b.coefficient / prediction - 1.0) < 0.02);

  const auto c = low_temperature_fit(two_arc(), 4.5, default_temperature_grid(8, 1e-5, 1e-4));
  CHECK(std::abs(c.exponent - 1.5) < 0.05);
  CHECK(std::abs(c.coefficient / c.predicted_coefficient - 1.0) < 0.05);

  // critical phases across models and fillings
  const std::vector<InteractionModel> models = {
      InteractionModel::haldane_shastry(), InteractionModel::finite_range({1.0, 0.2}),
      InteractionModel::finite_range({1.0, 0.5}), InteractionModel::power_law(3.0), InteractionModel::rational_cubic(1.0)};
  for (const auto& m : models) {
    const DispersionProfile d(m);
    const auto mono = monotonicity_report(d);
    for (double s : {0.25, 0.5, 0.8}) {
      const double mu = mono.e_min + s * (mono.e_max - mono.e_min);
      if (fermi_points(d, mu).phase != Phase::critical) continue;
      INFO(to_string(m.family()), " mu=", mu);
      const auto fit = low_temperature_fit(d, mu, grid);
      CHECK(std::abs(fit.exponent - 2.0) < 0.05);
      CHECK(std::abs(fit.coefficient / fit.predicted_coefficient - 1.0) < 0.02);
    }
  }

  try {
    low_temperature_fit(hs(), -1.0, grid);
    FAIL("gapped fit should be rejected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::convergence);
  }
  CHECK_THROWS_AS(low_temperature_fit(hs(), 1.0, std::vector<double>{0.1, 0.2}), Error);
}
