#include "fermichain/spectral.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <sstream>

#include "fermichain/error.hpp"

namespace fermichain {
namespace {

using constants::pi;
using constants::two_pi;

constexpr int kMaxSweepsPerEigenvalue = 60;

void check_length(long L) {
  if (L < 1) fail(ErrorCode::invalid_argument, "block length L must be >= 1");
}

// Householder reduction to tridiagonal form. On return d holds the diagonal
// and e[i] the coupling between i-1 and i (e[0] = 0).
void tridiagonalize(std::vector<double>& a, long n, std::vector<double>& d, std::vector<double>& e) {
  auto A = [&](long i, long j) -> double& { return a[static_cast<std::size_t>(i * n + j)]; };
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (long i = n - 1; i > 0; --i) {
    const long l = i - 1;
    if (l == 0) {
      e[i] = A(i, 0);
      continue;
    }
    double scale = 0.0;
    for (long k = 0; k <= l; ++k) scale += std::abs(A(i, k));
    if (scale == 0.0) {
      e[i] = A(i, l);
      continue;
    }
    double h = 0.0;
    for (long k = 0; k <= l; ++k) {
      A(i, k) /= scale;
      h += A(i, k) * A(i, k);
    }
    double f = A(i, l);
    double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
    e[i] = scale * g;
    h -= f * g;
    A(i, l) = f - g;
    f = 0.0;
    for (long j = 0; j <= l; ++j) {
      g = 0.0;
      for (long k = 0; k <= j; ++k) g += A(j, k) * A(i, k);
      for (long k = j + 1; k <= l; ++k) g += A(k, j) * A(i, k);
      e[j] = g / h;
      f += e[j] * A(i, j);
    }
    const double hh = f / (h + h);
    for (long j = 0; j <= l; ++j) {
      f = A(i, j);
      e[j] = g = e[j] - hh * f;
      for (long k = 0; k <= j; ++k) A(j, k) -= f * e[k] + g * A(i, k);
    }
  }
  for (long i = 0; i < n; ++i) d[i] = A(i, i);
}

// Implicit-shift QL on a symmetric tridiagonal matrix.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, long n) {
  for (long i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  // Couplings below eps * ||T|| are dropped as well, otherwise clusters of
  // near-zero eigenvalues can stall the relative test.
  double norm = 0.0;
  for (long i = 0; i < n; ++i) norm = std::max(norm, std::abs(d[i]) + std::abs(e[i]) + (i > 0 ? std::abs(e[i - 1]) : 0.0));
  const double floor = DBL_EPSILON * norm;
  for (long l = 0; l < n; ++l) {
    int iter = 0;
    long m;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= DBL_EPSILON * dd || std::abs(e[m]) <= floor) break;
      }
      if (m == l) break;
      if (++iter > kMaxSweepsPerEigenvalue) {
        std::ostringstream msg;
        msg << "eigensolver did not converge for a " << n << "x" << n << " matrix within "
            << kMaxSweepsPerEigenvalue << " QL sweeps per eigenvalue";
        fail(ErrorCode::convergence, msg.str());
      }
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      long i;
      bool underflow = false;
      for (i = m - 1; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          underflow = true;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (underflow) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
}

}  // namespace

std::vector<double> correlation_row(const FermiAnalysis& analysis, long L) {
  check_length(L);
  std::vector<double> row(L, 0.0);
  for (const auto& arc : analysis.sea) {
    row[0] += arc.length() / two_pi;
    for (long d = 1; d < L; ++d)
      row[d] += (std::sin(d * arc.hi) - std::sin(d * arc.lo)) / (two_pi * d);
  }
  return row;
}

std::vector<double> correlation_row_finite(const InteractionModel& model, double mu, long L, long N) {
  check_length(L);
  if (N < L) fail(ErrorCode::invalid_argument, "chain length N must be >= L");
  std::vector<long> filled;
  for (long l = 0; l < N; ++l) {
    const double eps = mode_energy(model, N, l);
    if (std::abs(eps - mu) < 1e-12) {
      std::ostringstream msg;
      msg << "degenerate ground state: mode l=" << l << " has energy " << eps << " equal to mu";
      fail(ErrorCode::degenerate, msg.str());
    }
    if (eps < mu) filled.push_back(l);
  }
  std::vector<double> row(L, 0.0);
  for (long d = 0; d < L; ++d) {
    double s = 0.0;
    for (long l : filled) s += std::cos(two_pi * static_cast<double>((d * l) % N) / N);
    row[d] = s / N;
  }
  return row;
}

std::vector<double> eigenvalues_dense(std::vector<double> a, long n) {
  if (n < 1 || a.size() != static_cast<std::size_t>(n * n))
    fail(ErrorCode::invalid_argument, "matrix must be n x n with n >= 1");
  std::vector<double> d, e;
  tridiagonalize(a, n, d, e);
  tridiagonal_ql(d, e, n);
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<double> eigenvalues_symmetric(std::span<const double> first_row) {
  const long n = static_cast<long>(first_row.size());
  check_length(n);
  std::vector<double> a(static_cast<std::size_t>(n * n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < n; ++j) a[i * n + j] = first_row[std::abs(i - j)];
  return eigenvalues_dense(std::move(a), n);
}

CorrelationSpectrum correlation_spectrum(std::vector<double> first_row) {
  CorrelationSpectrum s;
  s.L = static_cast<long>(first_row.size());
  s.eigenvalues = eigenvalues_symmetric(first_row);
  s.first_row = std::move(first_row);
  return s;
}

CorrelationSpectrum correlation_spectrum(const FermiAnalysis& analysis, long L) {
  return correlation_spectrum(correlation_row(analysis, L));
}

Complex log_det_char(const CorrelationSpectrum& spectrum, Complex lambda) {
  Complex sum = 0.0;
  for (double ev : spectrum.eigenvalues) {
    const Complex factor = lambda + 1.0 - 2.0 * ev;
    if (std::abs(factor) < 1e-12) {
      std::ostringstream msg;
      msg << "lambda=" << lambda.real() << (lambda.imag() < 0 ? "" : "+") << lambda.imag()
          << "i coincides with the spectrum point " << 2.0 * ev - 1.0;
      fail(ErrorCode::singular, msg.str());
    }
    sum += std::log(factor);
  }
  return sum;
}

}  // namespace fermichain
