#include "fermichain/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <vector>

#include "fermichain/error.hpp"

namespace fermichain::quad {
namespace {

// Kronrod abscissae (xgk) with Gauss points at odd indices, QUADPACK qk15.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
                           0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gauss_kronrod(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double resk = fc * kWgk[7];
  double resg = fc * kWg[3];
  double resabs = std::abs(resk);
  double fv1[7], fv2[7];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    fv1[j] = f(center - dx);
    fv2[j] = f(center + dx);
    const double sum = fv1[j] + fv2[j];
    resk += kWgk[j] * sum;
    resabs += kWgk[j] * (std::abs(fv1[j]) + std::abs(fv2[j]));
    if (j % 2 == 1) resg += kWg[j / 2] * sum;
  }
  const double mean = 0.5 * resk;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) resasc += kWgk[j] * (std::abs(fv1[j] - mean) + std::abs(fv2[j] - mean));

  const double ah = std::abs(half);
  resk *= half;
  resabs *= ah;
  resasc *= ah;
  double err = std::abs((resk - resg * half));
  if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  constexpr double eps = std::numeric_limits<double>::epsilon();
  if (resabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);
  return {a, b, resk, err};
}

}  // namespace

Result integrate(const Integrand& f, std::span<const double> breakpoints, const Options& opt) {
  if (breakpoints.size() < 2) fail(ErrorCode::invalid_argument, "quadrature needs at least two breakpoints");
  std::priority_queue<Panel> heap;
  Result out;
  for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i) {
    if (breakpoints[i + 1] <= breakpoints[i]) continue;
    heap.push(gauss_kronrod(f, breakpoints[i], breakpoints[i + 1]));
    out.evaluations += 15;
  }
  if (heap.empty()) return {0.0, 0.0, 0, true};

  auto totals = [&heap] {
    // Sum in a fixed order so results are bit-reproducible.
    std::vector<Panel> panels;
    auto copy = heap;
    while (!copy.empty()) {
      panels.push_back(copy.top());
      copy.pop();
    }
    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
    double v = 0.0, e = 0.0;
    for (const auto& p : panels) {
      v += p.value;
      e += p.error;
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  // Panels that cannot be split further (width at round-off level) are parked.
  std::vector<Panel> parked;
  int count = static_cast<int>(heap.size());
  while (error > std::max(opt.abs_tol, opt.rel_tol * std::abs(value)) && !heap.empty() &&
         count < opt.max_intervals) {
    Panel worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b) ||
        std::abs(worst.b - worst.a) < 1e3 * std::numeric_limits<double>::epsilon() *
                                          std::max(std::abs(worst.a), std::abs(worst.b))) {
      parked.push_back(worst);
      continue;
    }
    Panel left = gauss_kronrod(f, worst.a, mid);
    Panel right = gauss_kronrod(f, mid, worst.b);
    out.evaluations += 30;
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++count;
  }
  for (const auto& p : parked) heap.push(p);
  auto [v, e] = totals();
  out.value = v;
  out.abs_error = e;
  out.converged = std::isfinite(v) && e <= std::max(opt.abs_tol, opt.rel_tol * std::abs(v));
  return out;
}

Result integrate(const Integrand& f, double a, double b, const Options& opt) {
  const double pts[2] = {a, b};
  return integrate(f, pts, opt);
}

Result integrate_to_infinity(const Integrand& f, double a, const Options& opt) {
  auto mapped = [&f, a](double t) {
    const double one_minus = 1.0 - t;
    const double x = a + t / one_minus;
    if (!std::isfinite(x)) return 0.0;
    return f(x) / (one_minus * one_minus);
  };
  return integrate(mapped, 0.0, 1.0, opt);
}

double value_or_throw(const Result& r, const std::string& context) {
  if (!r.converged) {
    std::ostringstream msg;
    msg << context << ": quadrature did not converge (achieved error " << r.abs_error << ")";
    fail(ErrorCode::convergence, msg.str());
  }
  return r.value;
}

}  // namespace fermichain::quad
