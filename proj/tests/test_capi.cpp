#include <doctest.h>

#include <cmath>
#include <cstring>
#include <numbers>
#include <string>
#include <thread>
#include <vector>

#include "fermichain/fermichain.h"

constexpr double pi = std::numbers::pi;

namespace {

struct Model {
  fc_model* h = nullptr;
  ~Model() { fc_model_free(h); }
};
struct Analysis {
  fc_analysis* h = nullptr;
  ~Analysis() { fc_analysis_free(h); }
};

double inverse_fourth(long j, void*) { return std::pow(double(j), -4.0); }
double inverse_fourth_tail(long n, void*) { return 1.0 / (3.0 * std::pow(double(n), 3.0)); }

}  // namespace

TEST_CASE("names and version") {
  CHECK(std::strlen(fc_version()) > 0);
  CHECK(std::string(fc_status_name(FC_OK)) == "ok");
  CHECK(std::string(fc_status_name(FC_ERR_CONVERGENCE)) == "non-convergence");
  CHECK(std::string(fc_phase_name(FC_PHASE_CRITICAL)) == "critical");
  CHECK(std::string(fc_phase_name(FC_PHASE_MULTIPLE_ROOT)) == "non-critical-multiple-root");
}

TEST_CASE("special functions") {
  double z = 0;
  REQUIRE(fc_zeta(3.0, &z) == FC_OK);
  CHECK(z == doctest::Approx(1.2020569031595942854).epsilon(1e-15));
  CHECK(fc_zeta(1.0, &z) == FC_ERR_DOMAIN);
  CHECK(std::strlen(fc_last_error()) > 0);
  fc_complex c{};
  REQUIRE(fc_digamma({0.5, 1.0}, &c) == FC_OK);
  CHECK(c.re == doctest::Approx(-0.0517616509944125428).epsilon(1e-13));
  REQUIRE(fc_log_barnes_pair({0.0, -std::log(2.0) / (2 * pi)}, &c) == FC_OK);
  CHECK(c.re == doctest::Approx(0.0191063411057483714).epsilon(1e-12));
  REQUIRE(fc_polylog_circle(2.0, 1.0, &c) == FC_OK);
  CHECK(c.re == doctest::Approx(pi * pi / 6 - pi / 2 + 0.25).epsilon(1e-13));
  CHECK(fc_zeta(3.0, nullptr) == FC_ERR_INVALID_ARGUMENT);
}

TEST_CASE("model handles") {
  Model hs;
  REQUIRE(fc_model_haldane_shastry(&hs.h) == FC_OK);
  CHECK(std::string(fc_model_family(hs.h)) == "haldane-shastry");
  double e = 0;
  REQUIRE(fc_mode_energy(hs.h, 10, 3, &e) == FC_OK);
  CHECK(e == doctest::Approx(2 * pi * pi * 3 * 7 / 100.0));
  REQUIRE(fc_dispersion(hs.h, 1.0, &e) == FC_OK);
  CHECK(e == doctest::Approx(1.0 * (2 * pi - 1.0) / 2));
  REQUIRE(fc_dispersion_derivative(hs.h, 1.0, 1, &e) == FC_OK);
  CHECK(e == doctest::Approx(pi - 1.0));

  Model bad;
  CHECK(fc_model_power_law(1.0, 1.0, &bad.h) == FC_ERR_DOMAIN);
  CHECK(bad.h == nullptr);
  CHECK(fc_model_finite_range(nullptr, 0, &bad.h) != FC_OK);
  CHECK(fc_mode_energy(nullptr, 10, 3, &e) == FC_ERR_INVALID_ARGUMENT);

  Model custom;
  REQUIRE(fc_model_custom(inverse_fourth, inverse_fourth_tail, nullptr, &custom.h) == FC_OK);
  Model pl;
  REQUIRE(fc_model_power_law(4.0, 1.0, &pl.h) == FC_OK);
  double a = 0, b = 0;
  fc_dispersion(custom.h, 0.7, &a);
  fc_dispersion(pl.h, 0.7, &b);
  CHECK(a == doctest::Approx(b).epsilon(1e-9));

  Model two_arc;
  const double coeffs[] = {1.0, 0.5};
  REQUIRE(fc_model_finite_range(coeffs, 2, &two_arc.h) == FC_OK);
  fc_monotonicity_info info{};
  double crit[4];
  REQUIRE(fc_monotonicity(two_arc.h, 4096, &info, crit, 4) == FC_OK);
  CHECK(info.monotonic == 0);
  CHECK(info.n_critical == 1);
  CHECK(crit[0] > 0.0);
  CHECK(crit[0] < pi);
}

TEST_CASE("analysis handles") {
  Model m;
  const double coeffs[] = {1.0, 0.5};
  REQUIRE(fc_model_finite_range(coeffs, 2, &m.h) == FC_OK);
  Analysis a;
  REQUIRE(fc_analysis_create(m.h, 4.25, &a.h) == FC_OK);
  fc_analysis_info info{};
  REQUIRE(fc_analysis_get_info(a.h, &info) == FC_OK);
  CHECK(info.phase == FC_PHASE_CRITICAL);
  CHECK(info.central_charge == 2);
  REQUIRE(info.n_roots == 2);
  fc_fermi_point p{};
  REQUIRE(fc_analysis_root(a.h, 0, &p) == FC_OK);
  CHECK(p.momentum == doctest::Approx(1.71777151745840169).epsilon(1e-12));
  CHECK(fc_analysis_root(a.h, 2, &p) == FC_ERR_INVALID_ARGUMENT);
  double lo = 0, hi = 0;
  REQUIRE(fc_analysis_sea(a.h, 0, &lo, &hi) == FC_OK);
  CHECK(hi > lo);

  double roots[2];
  for (size_t i = 0; i < 2; ++i) {
    fc_analysis_root(a.h, i, &p);
    roots[i] = p.momentum;
  }
  double f = 0;
  REQUIRE(fc_f_factor(roots, 2, &f) == FC_OK);
  CHECK(f == doctest::Approx(0.533202676418212442).epsilon(1e-12));

  std::vector<double> row(40), eig(40);
  REQUIRE(fc_correlation_row(a.h, 40, row.data()) == FC_OK);
  REQUIRE(fc_eigenvalues_symmetric(row.data(), 40, eig.data()) == FC_OK);
  double trace = 0;
  for (double x : eig) trace += x;
  CHECK(trace == doctest::Approx(40 * row[0]).epsilon(1e-10));
  double s = 0;
  REQUIRE(fc_renyi_exact(eig.data(), 40, 1.0, &s) == FC_OK);
  fc_complex ld{};
  REQUIRE(fc_log_det_char(eig.data(), 40, {3.0, 0.0}, &ld) == FC_OK);

  const long Ls[] = {40, 100};
  fc_entropy_report reps[2];
  REQUIRE(fc_entropy_sweep(a.h, Ls, 2, 1.0, 1, 2, reps) == FC_OK);
  CHECK(reps[0].s_exact == doctest::Approx(s).epsilon(1e-14));
  CHECK(std::abs(reps[1].r_L) < 3e-5);

  fc_fh_row rows[2];
  REQUIRE(fc_fh_deviation(a.h, {3.0, 0.0}, Ls, 2, 0, rows) == FC_OK);
  CHECK(rows[1].deviation < 1e-2);

  fc_thermal t{};
  REQUIRE(fc_free_energy(a.h, 0.01, &t) == FC_OK);
  CHECK(t.excess < 0.0);
  CHECK(t.f == doctest::Approx(t.f0 + t.excess));
}

TEST_CASE("error statuses") {
  Model hs;
  REQUIRE(fc_model_haldane_shastry(&hs.h) == FC_OK);
  Analysis gapped;
  REQUIRE(fc_analysis_create(hs.h, -1.0, &gapped.h) == FC_OK);
  const long L = 10;
  fc_entropy_report rep{};
  CHECK(fc_entropy_sweep(gapped.h, &L, 1, 1.0, 1, 1, &rep) == FC_ERR_DOMAIN);
  CHECK(fc_entropy_sweep(gapped.h, &L, 1, 1.0, 0, 1, &rep) == FC_OK);

  fc_fh_symbol sym{};
  const double root = 1.0;
  CHECK(fc_symbol_params(&root, 1, {0.5, 0.0}, &sym) == FC_ERR_DOMAIN);
  REQUIRE(fc_symbol_params(&root, 1, {3.0, 0.0}, &sym) == FC_OK);
  CHECK(sym.P == doctest::Approx(1.0 / pi));

  const double temps[] = {1e-3, 2e-3, 4e-3, 8e-3};
  fc_scaling_fit fit{};
  CHECK(fc_low_temperature_fit(hs.h, -1.0, temps, 4, &fit) == FC_ERR_CONVERGENCE);
  REQUIRE(fc_low_temperature_fit(hs.h, 3 * pi * pi / 8, temps, 4, &fit) == FC_OK);
  CHECK(fit.exponent == doctest::Approx(2.0).epsilon(0.01));

  double row[4];
  CHECK(fc_correlation_row_finite(hs.h, 2 * pi * pi * 0.25, 4, 8, row) == FC_ERR_DEGENERATE);
  double eig[2] = {0.0, 1.0};
  fc_complex out{};
  CHECK(fc_log_det_char(eig, 2, {1.0, 0.0}, &out) == FC_ERR_SINGULAR);
}

TEST_CASE("last error is per thread") {
  double z = 0;
  fc_zeta(0.5, &z);
  const std::string here = fc_last_error();
  std::string there = "unset";
  std::thread t([&] { there = fc_last_error(); });
  t.join();
  CHECK_FALSE(here.empty());
  CHECK(there.empty());
}
