#include <doctest.h>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <numbers>

#include "fermichain/entanglement.hpp"
#include "fermichain/error.hpp"

using namespace fermichain;
constexpr double pi = std::numbers::pi;
constexpr double inf = std::numeric_limits<double>::infinity();

namespace {

const FermiAnalysis& two_arc() {
  static const DispersionProfile d(InteractionModel::finite_range({1.0, 0.5}));
  static const FermiAnalysis a = fermi_points(d, 4.25);
  return a;
}
const FermiAnalysis& half_filled() {
  static const DispersionProfile d(InteractionModel::haldane_shastry());
  static const FermiAnalysis a = fermi_points(d, 3 * pi * pi / 8);
  return a;
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size(), my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  return sxy / sxx;
}

}  // namespace

TEST_CASE("exact entropy edge cases") {
  const auto one = correlation_spectrum(correlation_row(half_filled(), 1));
  for (double alpha : {0.5, 1.0, 2.0, inf}) CHECK(renyi_exact(one, alpha) == doctest::Approx(std::log(2.0)));
  const DispersionProfile hs(InteractionModel::haldane_shastry());
  const auto full = fermi_points(hs, 10.0);
  CHECK(renyi_exact(correlation_spectrum(full, 20), 1.0) == 0.0);
  CHECK_THROWS_AS(renyi_exact(one, 0.0), Error);
  CHECK_THROWS_AS(renyi_exact(one, -1.0), Error);
}

TEST_CASE("entropy bounds and Renyi monotonicity") {
  for (const auto* a : {&half_filled(), &two_arc()}) {
    for (long L : {10L, 50L}) {
      const auto s = correlation_spectrum(*a, L);
      double prev = inf;
      for (double alpha : {0.5, 1.0, 2.0, 5.0}) {
        const double S = renyi_exact(s, alpha);
        CHECK(S >= 0.0);
        CHECK(S <= L * std::log(2.0));
        CHECK(S <= prev + 1e-12);
        prev = S;
      }
    }
  }
}

TEST_CASE("f factor") {
  CHECK(f_factor(std::vector<double>{pi / 2}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(f_factor(std::vector<double>{pi / 6}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(f_factor(two_arc().momenta()) == doctest::Approx(0.533202676418212442).epsilon(1e-12));
  CHECK_THROWS_AS(f_factor(std::vector<double>{1.0, 1.0}), Error);
  CHECK_THROWS_AS(f_factor(std::vector<double>{}), Error);
}

TEST_CASE("f factor from the constant term of the exact determinant") {
  // At fixed lambda the L-independent part of log D_L contains -2 beta^2 log f.
  // Compare two root sets with the same L and lambda: the difference of the
  // exact log-determinants, after removing the linear and log L terms, isolates
  // log f up to o(1).
  const auto& a = two_arc();
  const double lambda = 3.0;
  const double log_w = std::log((lambda + 1) / (lambda - 1));
  const double beta2 = -(log_w * log_w) / (4 * pi * pi);
  const double p0 = a.roots[0].momentum, p1 = a.roots[1].momentum;
  const double P = p0 / pi - p1 / pi + 1.0;
  auto offset = [&](long L) {
    const double exact = log_det_char(correlation_spectrum(a, L), {lambda, 0.0}).real();
    const double linear = L * std::log(lambda + 1) - L * P * log_w;
    const double g = std::real(specfun::log_barnes_pair(Complex(0.0, -log_w / (2 * pi))));
    return (exact - linear - 4 * g) / (-2 * beta2) - 2 * std::log(double(L));
  };
  CHECK(std::abs(offset(400) - std::log(f_factor(a.momenta()))) < 2e-3);
}

TEST_CASE("I1 closed form and quadrature") {
  CHECK(i1(1.0) == doctest::Approx(1.0 / 3));
  CHECK(i1(2.0) == doctest::Approx(0.25));
  boost::math::quadrature::tanh_sinh<double> ts;
  for (double alpha : {0.8, 1.5, 4.0}) {
    const double direct = (2 / (pi * pi)) * ts.integrate(
                                                [alpha](double x, double xc) {
                                                  const double d = std::abs(xc);  // distance to the nearer endpoint
                                                  if (d == 0.0) return 0.0;
                                                  return specfun::entropy_kernel(alpha, x) / (d * (2 - d));
                                                },
                                                -1.0, 1.0);
    CHECK(std::abs(direct - i1(alpha)) < 1e-8);
  }
  for (int k = 0; k < 20; ++k) {
    const double alpha = 0.1 * std::pow(100.0, k / 19.0);
    CHECK(std::abs(i1_quadrature(alpha) - i1(alpha)) < 1e-8);
  }
}

TEST_CASE("universal constant: frozen values") {
  struct Ref {
    double alpha, value;
  };
  const Ref refs[] = {{1.0, 0.49501790813513705},  {inf, 0.27970015082755941}, {0.25, 0.61490026862603817},
                      {0.5, 0.59933363386423751},  {2.0, 0.40404872003727628},      {3.0, 0.36636516917845875},
                      {10.0, 0.30715079865750305}, {0.37, 0.62832121901123944},     {100.0, 0.28249234997820882}};
  for (const auto& r : refs) {
    CHECK(std::abs(c_tilde(r.alpha) - r.value) < 1e-10);
    CHECK(std::abs(c_tilde_oracle(r.alpha) - r.value) < 1e-10);
  }
  CHECK(std::abs(c_tilde(0.10602710530572807)) < 1e-10);
  CHECK(std::abs(c_tilde(0.32170054843638602) - 0.63241652321748377) < 1e-10);
  CHECK(std::abs(c_tilde(1e4) - c_tilde(inf)) < 1e-4);
  CHECK_THROWS_AS(c_tilde(0.0), Error);
}

TEST_CASE("universal constant: formulas agree") {
  for (double alpha : {0.25, 0.5, 2.0, 3.0, 10.0, 0.7, 1.3}) CHECK(std::abs(c_tilde(alpha) - c_tilde_oracle(alpha)) < 1e-7);
}

TEST_CASE("universal constant: independent quadrature of the von Neumann integral") {
  boost::math::quadrature::exp_sinh<double> es;
  auto f = [](double t) {
    if (t < 1e-3) return (1 - std::exp(-2 * t)) / (3 * t) - 2 * t / 15;
    const double e = std::exp(-2 * t), d = 1 - e;
    return e * (4 * (1 + e) / (d * d * d) - 4 / (t * d * d) - 1 / (3 * t));
  };
  CHECK(std::abs(es.integrate(f) - c_tilde(1.0)) < 1e-8);
}

TEST_CASE("asymptotic entropy") {
  const auto r = renyi_asymptotic(half_filled(), 64, 1.0);
  CHECK(r.s_asymptotic == doctest::Approx(std::log(128.0) / 3 + 0.49501790813513705).epsilon(1e-12));
  CHECK(std::isnan(r.s_exact));
  CHECK(r.f_factor == doctest::Approx(2.0));
  const auto minimal = renyi_asymptotic(two_arc(), 100, inf);
  const auto one = renyi_asymptotic(two_arc(), 100, 1.0);
  const double n = 2.0;
  CHECK((minimal.s_asymptotic - n * minimal.c_tilde) / (one.s_asymptotic - n * one.c_tilde) == doctest::Approx(0.5));
  const DispersionProfile hs(InteractionModel::haldane_shastry());
  CHECK_THROWS_AS(renyi_asymptotic(fermi_points(hs, -1.0), 10, 1.0), Error);
}

TEST_CASE("exact against asymptotic in the two-interval sea") {
  const auto r100 = entropy_report(two_arc(), 100, 1.0);
  CHECK(std::abs(r100.r_L) < 3e-5);
  CHECK(r100.r_L == doctest::Approx(r100.s_asymptotic / r100.s_exact - 1.0));
  const auto r500 = entropy_report(two_arc(), 500, 1.0);
  CHECK(std::abs(r500.r_L) < 2e-6);
}

TEST_CASE("leading slope and intercept") {
  std::vector<long> Ls;
  for (long L = 64; L <= 512; L *= 2) Ls.push_back(L);
  for (const auto* a : {&half_filled(), &two_arc()}) {
    const double n = static_cast<double>(a->roots.size());
    for (double alpha : {1.0, 2.0}) {
      const auto reps = entropy_sweep(*a, Ls, alpha, true);
      std::vector<double> x, y;
      for (const auto& r : reps) x.push_back(std::log(double(r.L))), y.push_back(r.s_exact);
      const double expected = n * (1 + 1 / alpha) / 6;
      CHECK(std::abs(slope(x, y) / expected - 1.0) < 0.02);
    }
  }
  const auto reps = entropy_sweep(half_filled(), Ls, 1.0, true);
  const auto& last = reps.back();
  CHECK(std::abs(last.s_exact - std::log(double(last.L)) / 3 - last.c_alpha) < 5e-4);
}

TEST_CASE("sweep is deterministic and matches single reports") {
  const std::vector<long> Ls = {5, 17, 40};
  const auto a = entropy_sweep(two_arc(), Ls, 2.0, true, 3);
  const auto b = entropy_sweep(two_arc(), Ls, 2.0, true, 1);
  for (std::size_t i = 0; i < Ls.size(); ++i) {
    CHECK(a[i].s_exact == b[i].s_exact);
    const auto single = entropy_report(two_arc(), Ls[i], 2.0);
    CHECK(a[i].s_exact == single.s_exact);
    CHECK(a[i].s_asymptotic == doctest::Approx(single.s_asymptotic).epsilon(1e-14));
  }
  const auto plain = entropy_sweep(two_arc(), Ls, 1.0, false);
  CHECK(std::isnan(plain[0].s_asymptotic));
}
