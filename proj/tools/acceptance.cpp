// Acceptance checks: one PASS/FAIL line per criterion, exit status 1 on any failure.
#include <algorithm>
#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fermichain/entanglement.hpp"
#include "fermichain/error.hpp"
#include "fermichain/fisher_hartwig.hpp"

using namespace fermichain;
constexpr double pi = std::numbers::pi;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "]";
    }
  }
};

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size(), my /= y.size();
  double sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) sxx += (x[i] - mx) * (x[i] - mx), sxy += (x[i] - mx) * (y[i] - my);
  return sxy / sxx;
}

const DispersionProfile& two_arc_model() {
  static const DispersionProfile d(InteractionModel::finite_range({1.0, 0.5}));
  return d;
}
const DispersionProfile& hs_model() {
  static const DispersionProfile d(InteractionModel::haldane_shastry());
  return d;
}

void two_arc_entropy(Verdict& v) {
  const auto a = fermi_points(two_arc_model(), 17.0 / 4);
  v.require(a.roots.size() == 2, "two Fermi points");
  if (a.roots.size() != 2) return;
  const double e0 = std::abs(a.roots[0].momentum - 1.71777), e1 = std::abs(a.roots[1].momentum - 2.59356);
  v.detail << " p0=" << a.roots[0].momentum << " p1=" << a.roots[1].momentum;
  v.require(e0 <= 5e-5 && e1 <= 5e-5, "roots within 5e-5");
  std::vector<long> Ls;
  for (long L = 100; L <= 500; L += 50) Ls.push_back(L);
  const auto reps = entropy_sweep(a, Ls, 1.0, true);
  std::vector<double> x, y;
  for (const auto& r : reps) {
    x.push_back(std::log(double(r.L)));
    y.push_back(std::log(std::abs(r.r_L)));
  }
  const double first = std::abs(reps.front().r_L), last = std::abs(reps.back().r_L);
  const double trend = ls_slope(x, y);
  v.detail << " |r_100|=" << first << " |r_500|=" << last << " log-log trend=" << trend;
  v.require(first <= 3e-5, "r_100 <= 3e-5");
  v.require(last <= 2e-6, "r_500 <= 2e-6");
  v.require(trend < 0 && last < first, "decreasing trend");
}

void universal_constants(Verdict& v) {
  const double c1 = c_tilde(1.0), cinf = c_tilde(INFINITY);
  v.detail << " C1=" << c1 << " Cinf=" << cinf;
  v.require(std::abs(c1 - 0.495018) <= 1e-5, "C1");
  v.require(std::abs(cinf - 0.27970) <= 1e-4, "Cinf");
  boost::math::tools::eps_tolerance<double> tol(40);
  std::uintmax_t iters = 100;
  const auto bracket = boost::math::tools::toms748_solve([](double a) { return c_tilde(a); }, 0.05, 0.2, tol, iters);
  const double zero = 0.5 * (bracket.first + bracket.second);
  const auto peak = boost::math::tools::brent_find_minima([](double a) { return -c_tilde(a); }, 0.2, 0.5, 40);
  v.detail << " zero=" << zero << " max=" << -peak.second << " at " << peak.first;
  v.require(std::abs(zero - 0.106022) <= 1e-3, "zero location");
  v.require(std::abs(-peak.second - 0.632417) <= 1e-3, "maximum value");
  v.require(std::abs(peak.first - 0.321699) <= 1e-3, "maximum location");
}

void cross_formula(Verdict& v) {
  double worst = 0;
  for (double alpha : {0.25, 0.5, 2.0, 3.0, 10.0}) worst = std::max(worst, std::abs(c_tilde(alpha) - c_tilde_oracle(alpha)));
  v.detail << " max diff=" << worst;
  v.require(worst <= 1e-7, "agreement within 1e-7");
}

void i1_identity(Verdict& v) {
  double worst = 0;
  for (int k = 0; k < 20; ++k) {
    const double alpha = 0.1 * std::pow(100.0, k / 19.0);
    worst = std::max(worst, std::abs(i1_quadrature(alpha) - (1 + alpha) / (6 * alpha)));
  }
  v.detail << " max diff=" << worst;
  v.require(worst <= 1e-8, "agreement within 1e-8");
}

void criticality_scaling(Verdict& v) {
  const auto hs = low_temperature_fit(hs_model(), 3 * pi * pi / 8, default_temperature_grid());
  v.detail << " HS: exponent=" << hs.exponent << " coeff=" << hs.coefficient;
  v.require(std::abs(hs.exponent - 2) <= 0.05, "HS exponent");
  v.require(std::abs(hs.coefficient / (-1.0 / 3) - 1) <= 0.02, "HS coefficient");

  const auto a = fermi_points(two_arc_model(), 4.5);
  const bool tangent = a.phase == Phase::multiple_root && a.roots.size() == 1 && a.roots[0].multiplicity == 2;
  v.require(tangent, "double root at mu=9/2");
  if (tangent) v.require(std::abs(two_arc_model().derivative(a.roots[0].momentum, 2) + 3) < 1e-9, "E''=-3");
  const auto dr = low_temperature_fit(two_arc_model(), 4.5, default_temperature_grid(8, 1e-5, 1e-4));
  v.detail << " double root: exponent=" << dr.exponent << " coeff=" << dr.coefficient
           << " predicted=" << dr.predicted_coefficient;
  v.require(std::abs(dr.exponent - 1.5) <= 0.05, "double-root exponent");
  v.require(std::abs(dr.coefficient / dr.predicted_coefficient - 1) <= 0.05, "double-root amplitude");

  const double e_max = pi * pi / 2;
  double worst = 0;
  for (double T : {0.05, 0.1, 0.2}) {
    for (double mu : {-0.3, -1.0}) {
      const auto r = free_energy(hs_model(), mu, T);
      worst = std::max(worst, std::abs(r.f - r.f0) / (T * std::exp(mu / T)));
    }
    for (double mu : {e_max + 0.3, e_max + 1.0}) {
      const auto r = free_energy(hs_model(), mu, T);
      worst = std::max(worst, std::abs(r.f - r.f0) / (T * std::exp(-(mu - e_max) / T)));
    }
  }
  v.detail << " gapped bound ratio max=" << worst;
  v.require(worst <= 1.0, "gapped exponential bounds");
}

void central_charge(Verdict& v) {
  std::vector<long> Ls;
  for (long L = 64; L <= 512; L += 32) Ls.push_back(L);
  struct Case {
    const char* name;
    FermiAnalysis analysis;
  };
  const Case cases[] = {{"m=0", fermi_points(hs_model(), 3 * pi * pi / 8)}, {"m=1", fermi_points(two_arc_model(), 4.25)}};
  for (const auto& c : cases) {
    const double n = static_cast<double>(c.analysis.roots.size());
    const auto reps = entropy_sweep(c.analysis, Ls, 1.0, true);
    std::vector<double> x, y;
    for (const auto& r : reps) x.push_back(std::log(double(r.L))), y.push_back(r.s_exact);
    const double slope = ls_slope(x, y);
    const auto& last = reps.back();
    const double intercept = last.s_exact - n / 3 * std::log(double(last.L));
    const double expected = std::log(last.f_factor) / 3 + n * c_tilde(1.0);
    v.detail << " " << c.name << ": slope=" << slope << " intercept=" << intercept << " expected=" << expected;
    v.require(std::abs(slope / (n / 3) - 1) <= 0.02, std::string(c.name) + " slope");
    v.require(std::abs(intercept - expected) <= 5e-4, std::string(c.name) + " intercept");
  }
}

void fisher_hartwig(Verdict& v) {
  const std::vector<long> Ls = {8, 16, 32, 64, 128};
  struct Case {
    const char* name;
    FermiAnalysis analysis;
  };
  const Case cases[] = {{"m=0", fermi_points(hs_model(), 3 * pi * pi / 8)}, {"m=1", fermi_points(two_arc_model(), 4.25)}};
  for (const auto& c : cases) {
    const auto rows = fh_deviation(c.analysis, {3.0, 0.0}, Ls);
    int rises = 0;
    v.detail << " " << c.name << ":";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      v.detail << " " << rows[i].deviation;
      if (i > 0) rises += rows[i].deviation > rows[i - 1].deviation;
    }
    v.require(rows.back().deviation < 1e-2, std::string(c.name) + " deviation < 1e-2 at L=128");
    v.require(rows.back().deviation < rows.front().deviation && rises <= 1, std::string(c.name) + " decreasing");
  }
}

double threshold(double lo, double hi, const std::function<bool(double)>& monotonic) {
  // monotonic(lo) differs from monotonic(hi)
  const bool at_lo = monotonic(lo);
  while (hi - lo > 1e-9) {
    const double mid = 0.5 * (lo + hi);
    (monotonic(mid) == at_lo ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

void dispersion_identities(Verdict& v) {
  const DispersionProfile pl(InteractionModel::power_law(2.0));
  double worst = 0;
  for (int k = 0; k < 100; ++k) {
    const double p = 2 * pi * k / 99;
    worst = std::max(worst, std::abs(pl.energy(p) - p * (2 * pi - p) / 2));
  }
  v.detail << " power-law vs HS max diff=" << worst;
  v.require(worst <= 1e-9, "power law nu=2 equals HS");
  auto fr = [](double J) { return monotonicity_report(DispersionProfile(InteractionModel::finite_range({1.0, J}))).monotonic; };
  auto rc = [](double J) { return monotonicity_report(DispersionProfile(InteractionModel::rational_cubic(J))).monotonic; };
  const double up = threshold(0.1, 0.4, fr), down = threshold(-0.4, -0.1, fr), cubic = threshold(0.5, 1.0, rc);
  v.detail.precision(10);
  v.detail << " finite-range thresholds " << down << ", " << up << " rational-cubic " << cubic;
  v.require(std::abs(up - 0.25) <= 1e-6 && std::abs(down + 0.25) <= 1e-6, "|J| = 1/4");
  v.require(std::abs(cubic - 1 / (2 * std::log(2.0))) <= 1e-6, "J = 1/(2 log 2)");
}

double direct_det(std::vector<double> m, long n) {
  double det = 1.0;
  for (long c = 0; c < n; ++c) {
    long piv = c;
    for (long r = c + 1; r < n; ++r)
      if (std::abs(m[r * n + c]) > std::abs(m[piv * n + c])) piv = r;
    if (piv != c) {
      for (long k = 0; k < n; ++k) std::swap(m[c * n + k], m[piv * n + k]);
      det = -det;
    }
    det *= m[c * n + c];
    for (long r = c + 1; r < n; ++r) {
      const double f = m[r * n + c] / m[c * n + c];
      for (long k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
    }
  }
  return det;
}

void spectral_sanity(Verdict& v) {
  int models = 0;
  double worst_bound = 0, worst_trace = 0, worst_interlace = 0, worst_det = 0;
  for (unsigned seed = 1; seed <= 10; ++seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<double> coeffs(1 + rng() % 4);
    for (auto& c : coeffs) c = u(rng);
    coeffs[0] = 1.0;
    const DispersionProfile d(InteractionModel::finite_range(coeffs));
    const auto mono = monotonicity_report(d);
    const double mu = mono.e_min + (0.1 + 0.8 * (u(rng) + 1) / 2) * (mono.e_max - mono.e_min);
    const auto a = fermi_points(d, mu);
    if (a.sea.empty()) continue;
    ++models;
    std::vector<double> prev;
    for (long L = 1; L <= 40; ++L) {
      const auto s = correlation_spectrum(a, L);
      double trace = 0;
      for (double e : s.eigenvalues) {
        worst_bound = std::max({worst_bound, -e, e - 1});
        trace += e;
      }
      worst_trace = std::max(worst_trace, std::abs(trace - L * s.first_row[0]));
      for (std::size_t i = 0; i < prev.size(); ++i)
        worst_interlace = std::max({worst_interlace, s.eigenvalues[i] - prev[i], prev[i] - s.eigenvalues[i + 1]});
      prev = s.eigenvalues;
      if (L <= 12) {
        for (double lambda : {1.5, 3.0}) {
          std::vector<double> m(L * L);
          for (long i = 0; i < L; ++i)
            for (long j = 0; j < L; ++j) m[i * L + j] = (i == j ? lambda + 1 : 0.0) - 2 * s.first_row[std::abs(i - j)];
          const double det = direct_det(m, L);
          const Complex ld = log_det_char(s, {lambda, 0.0});
          worst_det = std::max(worst_det, std::abs(std::exp(ld.real()) / det - 1));
        }
      }
    }
  }
  v.detail << " models=" << models << " bound=" << worst_bound << " trace=" << worst_trace
           << " interlacing=" << worst_interlace << " det=" << worst_det;
  v.require(models == 10, "ten models with a nonempty sea");
  v.require(worst_bound <= 1e-10, "eigenvalues in [0,1]");
  v.require(worst_trace <= 1e-9, "trace identity");
  v.require(worst_interlace <= 1e-10, "interlacing");
  v.require(worst_det <= 1e-8, "determinant");
}

}  // namespace

int main() {
  const std::pair<const char*, void (*)(Verdict&)> criteria[] = {
      {"1 two-arc entropy", two_arc_entropy},     {"2 universal constants", universal_constants},
      {"3 cross-formula oracle", cross_formula},         {"4 I1 identity", i1_identity},
      {"5 criticality scaling", criticality_scaling},   {"6 central charge from entropy", central_charge},
      {"7 Fisher-Hartwig", fisher_hartwig},             {"8 dispersion identities", dispersion_identities},
      {"9 spectral sanity", spectral_sanity}};
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    v.detail.precision(8);
    const auto start = std::chrono::steady_clock::now();
    try {
      check(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s  %s (%.1fs)%s\n", v.pass ? "PASS" : "FAIL", name, secs, v.detail.str().c_str());
    std::fflush(stdout);
    failures += !v.pass;
  }
  return failures == 0 ? 0 : 1;
}
