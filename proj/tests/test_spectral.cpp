#include <doctest.h>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <numbers>
#include <random>

#include "fermichain/error.hpp"
#include "fermichain/spectral.hpp"

using namespace fermichain;
constexpr double pi = std::numbers::pi;

namespace {

FermiAnalysis two_arc() {
  static const DispersionProfile d(InteractionModel::finite_range({1.0, 0.5}));
  return fermi_points(d, 4.25);
}
FermiAnalysis half_filled() {
  static const DispersionProfile d(InteractionModel::haldane_shastry());
  return fermi_points(d, 3 * pi * pi / 8);
}

Eigen::MatrixXd toeplitz(const std::vector<double>& row) {
  const long n = static_cast<long>(row.size());
  Eigen::MatrixXd m(n, n);
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) m(i, j) = row[std::abs(i - j)];
  return m;
}

// Cofactor expansion along the first row.
double cofactor_det(const Eigen::MatrixXd& m) {
  const long n = m.rows();
  if (n == 1) return m(0, 0);
  double det = 0.0;
  for (long j = 0; j < n; ++j) {
    Eigen::MatrixXd minor(n - 1, n - 1);
    for (long r = 1; r < n; ++r)
      for (long c = 0, cc = 0; c < n; ++c)
        if (c != j) minor(r - 1, cc++) = m(r, c);
    det += ((j % 2) ? -1.0 : 1.0) * m(0, j) * cofactor_det(minor);
  }
  return det;
}

}  // namespace

TEST_CASE("thermodynamic rows") {
  const auto a = half_filled();
  const auto row = correlation_row(a, 8);
  CHECK(row[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(std::abs(row[3] - std::sin(3 * pi / 2) / (3 * pi)) < 1e-14);
  CHECK(std::abs(row[2]) < 1e-14);

  const auto b = two_arc();
  const double p0 = b.roots[0].momentum, p1 = b.roots[1].momentum;
  const auto r2 = correlation_row(b, 12);
  CHECK(std::abs(r2[0] - (p0 + pi - p1) / pi) < 1e-14);
  const DispersionProfile d(InteractionModel::finite_range({1.0, 0.5}));
  for (long k = 1; k < 12; ++k) {
    CHECK(std::abs(r2[k] - (std::sin(p0 * k) - std::sin(p1 * k)) / (pi * k)) < 1e-14);
    // quadrature of (1/2pi) Int_{E<mu} cos(k p) dp
    auto f = [&](double p) { return d.energy(p) < 4.25 ? std::cos(k * p) : 0.0; };
    using GK = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double q = (GK::integrate(f, 0.0, p0, 10, 1e-13) + GK::integrate(f, p1, pi, 10, 1e-13)) / pi;
    CHECK(std::abs(r2[k] - q) < 1e-12);
  }
}

TEST_CASE("finite-chain rows") {
  const auto hs = InteractionModel::haldane_shastry();
  auto full = correlation_row_finite(hs, 100.0, 6, 40);
  CHECK(full[0] == doctest::Approx(1.0));
  for (long d = 1; d < 6; ++d) CHECK(std::abs(full[d]) < 1e-14);
  for (double v : correlation_row_finite(hs, -1.0, 6, 40)) CHECK(v == 0.0);
  const auto finite = correlation_row_finite(hs, 3 * pi * pi / 8, 8, 1026);
  const auto limit = correlation_row(half_filled(), 8);
  for (long d = 0; d < 8; ++d) CHECK(std::abs(finite[d] - limit[d]) < 2e-3);
  // mu equal to a mode energy
  try {
    correlation_row_finite(hs, mode_energy(hs, 16, 3), 4, 16);
    FAIL("expected a degenerate ground state");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::degenerate);
  }
  CHECK_THROWS_AS(correlation_row_finite(hs, 1.0, 10, 5), Error);
}

TEST_CASE("eigenvalues: small cases") {
  CHECK(eigenvalues_symmetric(std::vector<double>{0.3}) == std::vector<double>{0.3});
  const auto two = eigenvalues_symmetric(std::vector<double>{0.4, -0.25});
  CHECK(two[0] == doctest::Approx(0.15));
  CHECK(two[1] == doctest::Approx(0.65));
  // L = 5 against roots of det(A - x) found by bisection on the cofactor determinant
  const auto row = correlation_row(half_filled(), 5);
  const auto ev = eigenvalues_symmetric(row);
  const Eigen::MatrixXd A = toeplitz(row);
  auto charpoly = [&](double x) { return cofactor_det(A - x * Eigen::MatrixXd::Identity(5, 5)); };
  for (double e : ev) {
    double lo = e - 1e-6, hi = e + 1e-6;
    REQUIRE(charpoly(lo) * charpoly(hi) <= 0.0);
    for (int i = 0; i < 60; ++i) {
      const double mid = 0.5 * (lo + hi);
      (charpoly(lo) * charpoly(mid) <= 0.0 ? hi : lo) = mid;
    }
    CHECK(std::abs(e - 0.5 * (lo + hi)) < 1e-10);
  }
}

TEST_CASE("eigenvalues against a reference solver") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (long n : {3L, 10L, 40L, 120L}) {
    std::vector<double> row(n);
    for (auto& v : row) v = u(rng);
    const auto ev = eigenvalues_symmetric(row);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(toeplitz(row), Eigen::EigenvaluesOnly);
    const double radius = ref.eigenvalues().cwiseAbs().maxCoeff();
    for (long i = 0; i < n; ++i) CHECK(std::abs(ev[i] - ref.eigenvalues()[i]) < 1e-10 * std::max(1.0, radius));
  }
  // dense entry point with a non-Toeplitz matrix
  std::vector<double> m(36);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j <= i; ++j) m[i * 6 + j] = m[j * 6 + i] = u(rng);
  Eigen::Map<Eigen::Matrix<double, 6, 6, Eigen::RowMajor>> M(m.data());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(Eigen::MatrixXd(M), Eigen::EigenvaluesOnly);
  const auto ev = eigenvalues_dense(m, 6);
  for (int i = 0; i < 6; ++i) CHECK(std::abs(ev[i] - ref.eigenvalues()[i]) < 1e-12);
}

TEST_CASE("spectral invariants") {
  for (const auto& a : {half_filled(), two_arc()}) {
    std::vector<double> prev;
    for (long L = 2; L <= 20; ++L) {
      const auto s = correlation_spectrum(a, L);
      double trace = 0.0;
      for (double e : s.eigenvalues) {
        CHECK(e >= -1e-10);
        CHECK(e <= 1 + 1e-10);
        trace += e;
      }
      CHECK(std::abs(trace - L * s.first_row[0]) < 1e-9);
      CHECK(std::abs(s.first_row[0] - a.sea_measure() / (2 * pi)) < 1e-14);
      if (!prev.empty())
        for (std::size_t i = 0; i < prev.size(); ++i) {
          CHECK(s.eigenvalues[i] <= prev[i] + 1e-12);
          CHECK(prev[i] <= s.eigenvalues[i + 1] + 1e-12);
        }
      prev = s.eigenvalues;
    }
  }
}

TEST_CASE("particle-hole: complementary sea maps lambda_i to 1 - lambda_i") {
  auto a = half_filled();
  // sea (-p0, p0) with p0 = pi/3 against its complement (p0, 2 pi - p0)
  a.sea = {{-pi / 3, pi / 3}};
  auto b = a;
  b.sea = {{pi / 3, 2 * pi - pi / 3}};
  const auto ea = correlation_spectrum(a, 30).eigenvalues;
  auto eb = correlation_spectrum(b, 30).eigenvalues;
  for (auto& e : eb) e = 1.0 - e;
  std::sort(eb.begin(), eb.end());
  for (std::size_t i = 0; i < ea.size(); ++i) CHECK(std::abs(ea[i] - eb[i]) < 1e-9);
}

TEST_CASE("characteristic determinant") {
  const auto one = correlation_spectrum(std::vector<double>{0.5});
  CHECK(std::abs(log_det_char(one, {3.0, 0.0}) - std::log(Complex(3.0, 0.0))) < 1e-15);
  const Complex z(0.2, 1.3);
  CHECK(std::abs(log_det_char(one, z) - std::log(z)) < 1e-15);

  const auto s4 = correlation_spectrum(half_filled(), 4);
  const Eigen::MatrixXd A = toeplitz(s4.first_row);
  const double det = cofactor_det(4.0 * Eigen::MatrixXd::Identity(4, 4) - 2.0 * A);
  CHECK(std::abs(log_det_char(s4, {3.0, 0.0}).real() - std::log(det)) < 1e-12);

  for (long L = 1; L <= 12; ++L) {
    const auto s = correlation_spectrum(two_arc(), L);
    const Eigen::MatrixXd AL = toeplitz(s.first_row);
    for (double lambda : {1.5, 3.0, 10.0}) {
      const double lu = (Eigen::MatrixXd::Identity(L, L) * (lambda + 1) - 2.0 * AL).partialPivLu().determinant();
      const Complex ld = log_det_char(s, {lambda, 0.0});
      CHECK(std::abs(ld.imag()) < 1e-12);
      CHECK(std::abs(std::exp(ld.real()) / lu - 1.0) < 1e-8);
      CHECK(ld.real() >= L * std::log(lambda - 1) - 1e-12);
    }
  }
  try {
    log_det_char(one, {0.0, 0.0});
    FAIL("expected a singular error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::singular);
  }
}
