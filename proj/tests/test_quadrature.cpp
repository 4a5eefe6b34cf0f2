#include <doctest.h>

#include <cmath>
#include <numbers>

#include "fermichain/error.hpp"
#include "fermichain/quadrature.hpp"

using namespace fermichain;

TEST_CASE("polynomials and trigonometric integrands") {
  CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 1.0).value == doctest::Approx(1.0 / 3).epsilon(1e-14));
  const auto r = quad::integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-13);
}

TEST_CASE("endpoint singularity and breakpoints") {
  const double pts[] = {0.0, 0.5, 1.0};
  const auto r = quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, pts);
  CHECK(r.converged);
  CHECK(std::abs(r.value - 2.0) < 1e-10);
  const auto kink = quad::integrate([](double x) { return std::abs(x - 0.3); }, std::vector<double>{0.0, 0.3, 1.0});
  CHECK(std::abs(kink.value - (0.045 + 0.245)) < 1e-14);
}

TEST_CASE("semi-infinite range") {
  const auto e = quad::integrate_to_infinity([](double x) { return std::exp(-x); }, 0.0);
  CHECK(std::abs(e.value - 1.0) < 1e-12);
  // Int_0^inf log(1 + e^{-x}) dx = pi^2/12
  const auto f = quad::integrate_to_infinity([](double x) { return std::log1p(std::exp(-x)); }, 0.0);
  CHECK(std::abs(f.value - std::numbers::pi * std::numbers::pi / 12) < 1e-12);
}

TEST_CASE("non-integrable input is reported") {
  quad::Options opt;
  opt.max_intervals = 50;
  const auto r = quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0, opt);
  CHECK_FALSE(r.converged);
  try {
    quad::value_or_throw(r, "test");
    FAIL("expected a convergence error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::convergence);
  }
}
