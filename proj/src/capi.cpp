#include "fermichain/fermichain.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "fermichain/criticality.hpp"
#include "fermichain/entanglement.hpp"
#include "fermichain/error.hpp"
#include "fermichain/fisher_hartwig.hpp"
#include "fermichain/spectral.hpp"

#ifndef FERMICHAIN_VERSION
#define FERMICHAIN_VERSION "0.0.0"
#endif

struct fc_model {
  fermichain::DispersionProfile profile;
  std::string family;
};

struct fc_analysis {
  fermichain::DispersionProfile profile;
  fermichain::FermiAnalysis analysis;
};

namespace {

using fermichain::Complex;
using fermichain::ErrorCode;

thread_local std::string last_error;

fc_status to_status(ErrorCode c) {
  switch (c) {
    case ErrorCode::domain: return FC_ERR_DOMAIN;
    case ErrorCode::invalid_argument: return FC_ERR_INVALID_ARGUMENT;
    case ErrorCode::convergence: return FC_ERR_CONVERGENCE;
    case ErrorCode::singular: return FC_ERR_SINGULAR;
    case ErrorCode::degenerate: return FC_ERR_DEGENERATE;
  }
  return FC_ERR_INTERNAL;
}

template <class F>
fc_status guard(F&& f) {
  try {
    last_error.clear();
    f();
    return FC_OK;
  } catch (const fermichain::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown error";
  }
  return FC_ERR_INTERNAL;
}

template <class T>
void need(const T* p, const char* name) {
  if (p == nullptr) fermichain::fail(ErrorCode::invalid_argument, std::string(name) + " must not be NULL");
}

Complex in(fc_complex z) { return {z.re, z.im}; }
fc_complex out_c(Complex z) { return {z.real(), z.imag()}; }

fc_status make_model(fermichain::InteractionModel m, fc_model** out) {
  need(out, "out");
  auto family = fermichain::to_string(m.family());
  *out = new fc_model{fermichain::DispersionProfile(std::move(m)), std::move(family)};
  return FC_OK;
}

std::vector<double> span_of(const double* p, long L) {
  if (L < 1) fermichain::fail(ErrorCode::invalid_argument, "length must be >= 1");
  need(p, "array");
  return {p, p + L};
}

fermichain::CorrelationSpectrum spectrum_of(const double* eigenvalues, long L) {
  fermichain::CorrelationSpectrum s;
  s.L = L;
  s.eigenvalues = span_of(eigenvalues, L);
  return s;
}

}  // namespace

extern "C" {

const char* fc_version(void) { return FERMICHAIN_VERSION; }
const char* fc_last_error(void) { return last_error.c_str(); }

const char* fc_status_name(fc_status status) {
  switch (status) {
    case FC_OK: return "ok";
    case FC_ERR_DOMAIN: return "domain error";
    case FC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case FC_ERR_CONVERGENCE: return "non-convergence";
    case FC_ERR_SINGULAR: return "singular";
    case FC_ERR_DEGENERATE: return "degenerate ground state";
    case FC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* fc_phase_name(fc_phase phase) {
  switch (phase) {
    case FC_PHASE_GAPPED_BELOW: return "gapped-below";
    case FC_PHASE_GAPPED_ABOVE: return "gapped-above";
    case FC_PHASE_CRITICAL: return "critical";
    case FC_PHASE_MULTIPLE_ROOT: return "non-critical-multiple-root";
    case FC_PHASE_BOUNDARY: return "boundary";
  }
  return "unknown";
}

fc_status fc_zeta(double nu, double* out) {
  return guard([&] { need(out, "out"); *out = fermichain::specfun::zeta(nu); });
}

fc_status fc_polylog_circle(double nu, double p, fc_complex* out) {
  return guard([&] { need(out, "out"); *out = out_c(fermichain::specfun::polylog_circle(nu, p)); });
}

fc_status fc_digamma(fc_complex z, fc_complex* out) {
  return guard([&] { need(out, "out"); *out = out_c(fermichain::specfun::digamma(in(z))); });
}

fc_status fc_log_barnes_pair(fc_complex beta, fc_complex* out) {
  return guard([&] { need(out, "out"); *out = out_c(fermichain::specfun::log_barnes_pair(in(beta))); });
}

fc_status fc_entropy_kernel(double alpha, double x, double* out) {
  return guard([&] { need(out, "out"); *out = fermichain::specfun::entropy_kernel(alpha, x); });
}

fc_status fc_model_haldane_shastry(fc_model** out) {
  return guard([&] { make_model(fermichain::InteractionModel::haldane_shastry(), out); });
}

fc_status fc_model_finite_range(const double* coefficients, size_t n, fc_model** out) {
  return guard([&] {
    if (n > 0) need(coefficients, "coefficients");
    std::vector<double> c(coefficients, coefficients + n);
    make_model(fermichain::InteractionModel::finite_range(std::move(c)), out);
  });
}

fc_status fc_model_power_law(double exponent, double amplitude, fc_model** out) {
  return guard([&] { make_model(fermichain::InteractionModel::power_law(exponent, amplitude), out); });
}

fc_status fc_model_rational_cubic(double J, fc_model** out) {
  return guard([&] { make_model(fermichain::InteractionModel::rational_cubic(J), out); });
}

fc_status fc_model_custom(double (*strength)(long, void*), double (*tail)(long, void*), void* user,
                          fc_model** out) {
  return guard([&] {
    if (strength == nullptr || tail == nullptr)
      fermichain::fail(ErrorCode::invalid_argument, "custom model callbacks must not be NULL");
    make_model(fermichain::InteractionModel::custom([=](long j) { return strength(j, user); },
                                                    [=](long n) { return tail(n, user); }),
               out);
  });
}

void fc_model_free(fc_model* model) { delete model; }

const char* fc_model_family(const fc_model* model) { return model ? model->family.c_str() : ""; }

fc_status fc_mode_energy(const fc_model* model, long N, long l, double* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = fermichain::mode_energy(model->profile.model(), N, l);
  });
}

fc_status fc_dispersion(const fc_model* model, double p, double* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = model->profile.energy(p);
  });
}

fc_status fc_dispersion_derivative(const fc_model* model, double p, int order, double* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = model->profile.derivative(p, order);
  });
}

fc_status fc_monotonicity(const fc_model* model, int grid, fc_monotonicity_info* out, double* critical, size_t capacity) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    const auto r = fermichain::monotonicity_report(model->profile, grid);
    out->monotonic = r.monotonic ? 1 : 0;
    out->n_critical = r.critical_points.size();
    out->e_min = r.e_min;
    out->e_max = r.e_max;
    if (critical != nullptr)
      for (size_t i = 0; i < r.critical_points.size() && i < capacity; ++i) critical[i] = r.critical_points[i];
  });
}

fc_status fc_analysis_create(const fc_model* model, double mu, fc_analysis** out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    *out = new fc_analysis{model->profile, fermichain::fermi_points(model->profile, mu)};
  });
}

void fc_analysis_free(fc_analysis* analysis) { delete analysis; }

fc_status fc_analysis_get_info(const fc_analysis* analysis, fc_analysis_info* out) {
  return guard([&] {
    need(analysis, "analysis");
    need(out, "out");
    const auto& a = analysis->analysis;
    out->mu = a.mu;
    out->phase = static_cast<fc_phase>(a.phase);
    out->central_charge = a.central_charge;
    out->n_roots = a.roots.size();
    out->n_sea = a.sea.size();
    out->sea_contains_origin = a.sea_contains_origin ? 1 : 0;
    out->sea_measure = a.sea_measure();
    out->e_min = a.e_min;
    out->e_max = a.e_max;
  });
}

fc_status fc_analysis_root(const fc_analysis* analysis, size_t i, fc_fermi_point* out) {
  return guard([&] {
    need(analysis, "analysis");
    need(out, "out");
    const auto& roots = analysis->analysis.roots;
    if (i >= roots.size()) fermichain::fail(ErrorCode::invalid_argument, "root index out of range");
    const auto& r = roots[i];
    *out = {r.momentum, r.multiplicity, r.velocity, r.scale, r.curvature_sign};
  });
}

fc_status fc_analysis_sea(const fc_analysis* analysis, size_t i, double* lo, double* hi) {
  return guard([&] {
    need(analysis, "analysis");
    need(lo, "lo");
    need(hi, "hi");
    const auto& sea = analysis->analysis.sea;
    if (i >= sea.size()) fermichain::fail(ErrorCode::invalid_argument, "sea interval index out of range");
    *lo = sea[i].lo;
    *hi = sea[i].hi;
  });
}

fc_status fc_free_energy(const fc_analysis* analysis, double T, fc_thermal* out) {
  return guard([&] {
    need(analysis, "analysis");
    need(out, "out");
    const auto r = fermichain::free_energy(analysis->profile, analysis->analysis, T);
    *out = {r.T, r.f, r.f0, r.excess, r.abs_error};
  });
}

fc_status fc_low_temperature_fit(const fc_model* model, double mu, const double* temperatures, size_t n,
                                 fc_scaling_fit* out) {
  return guard([&] {
    need(model, "model");
    need(out, "out");
    if (n > 0) need(temperatures, "temperatures");
    const auto r = fermichain::low_temperature_fit(model->profile, mu, std::span<const double>(temperatures, n));
    *out = {r.exponent, r.coefficient, r.predicted_exponent, r.predicted_coefficient, r.residual};
  });
}

fc_status fc_correlation_row(const fc_analysis* analysis, long L, double* row) {
  return guard([&] {
    need(analysis, "analysis");
    need(row, "row");
    const auto r = fermichain::correlation_row(analysis->analysis, L);
    std::memcpy(row, r.data(), r.size() * sizeof(double));
  });
}

fc_status fc_correlation_row_finite(const fc_model* model, double mu, long L, long N, double* row) {
  return guard([&] {
    need(model, "model");
    need(row, "row");
    const auto r = fermichain::correlation_row_finite(model->profile.model(), mu, L, N);
    std::memcpy(row, r.data(), r.size() * sizeof(double));
  });
}

fc_status fc_eigenvalues_symmetric(const double* row, long L, double* eigenvalues) {
  return guard([&] {
    need(eigenvalues, "eigenvalues");
    const auto r = fermichain::eigenvalues_symmetric(span_of(row, L));
    std::memcpy(eigenvalues, r.data(), r.size() * sizeof(double));
  });
}

fc_status fc_log_det_char(const double* eigenvalues, long L, fc_complex lambda, fc_complex* out) {
  return guard([&] {
    need(out, "out");
    *out = out_c(fermichain::log_det_char(spectrum_of(eigenvalues, L), in(lambda)));
  });
}

fc_status fc_renyi_exact(const double* eigenvalues, long L, double alpha, double* out) {
  return guard([&] {
    need(out, "out");
    *out = fermichain::renyi_exact(spectrum_of(eigenvalues, L), alpha);
  });
}

fc_status fc_f_factor(const double* roots, size_t n, double* out) {
  return guard([&] {
    need(out, "out");
    if (n > 0) need(roots, "roots");
    *out = fermichain::f_factor(std::span<const double>(roots, n));
  });
}

fc_status fc_i1(double alpha, double* out) {
  return guard([&] { need(out, "out"); *out = fermichain::i1(alpha); });
}

fc_status fc_i1_quadrature(double alpha, double* out) {
  return guard([&] { need(out, "out"); *out = fermichain::i1_quadrature(alpha); });
}

fc_status fc_c_tilde(double alpha, double* out) {
  return guard([&] { need(out, "out"); *out = fermichain::c_tilde(alpha); });
}

fc_status fc_c_tilde_oracle(double alpha, double* out) {
  return guard([&] { need(out, "out"); *out = fermichain::c_tilde_oracle(alpha); });
}

fc_status fc_entropy_sweep(const fc_analysis* analysis, const long* L, size_t n, double alpha, int with_asymptotic,
                           unsigned threads, fc_entropy_report* out) {
  return guard([&] {
    need(analysis, "analysis");
    if (n == 0) return;
    need(L, "L");
    need(out, "out");
    const auto r = fermichain::entropy_sweep(analysis->analysis, std::span<const long>(L, n), alpha,
                                             with_asymptotic != 0, threads);
    for (size_t i = 0; i < n; ++i)
      out[i] = {r[i].alpha, r[i].L, r[i].s_exact, r[i].s_asymptotic, r[i].c_alpha, r[i].c_tilde, r[i].f_factor, r[i].r_L};
  });
}

fc_status fc_symbol_params(const double* roots, size_t n, fc_complex lambda, fc_fh_symbol* out) {
  return guard([&] {
    need(out, "out");
    if (n > 0) need(roots, "roots");
    const auto s = fermichain::symbol_params(std::span<const double>(roots, n), in(lambda));
    *out = {out_c(s.lambda), out_c(s.beta), out_c(s.b), s.P};
  });
}

fc_status fc_log_dl_asymptotic(const double* roots, size_t n, fc_complex lambda, long L, fc_complex* out) {
  return guard([&] {
    need(out, "out");
    if (n > 0) need(roots, "roots");
    const auto s = fermichain::symbol_params(std::span<const double>(roots, n), in(lambda));
    *out = out_c(fermichain::log_dl_asymptotic(s, L));
  });
}

fc_status fc_fh_deviation(const fc_analysis* analysis, fc_complex lambda, const long* L, size_t n, unsigned threads,
                          fc_fh_row* out) {
  return guard([&] {
    need(analysis, "analysis");
    if (n == 0) return;
    need(L, "L");
    need(out, "out");
    const auto r = fermichain::fh_deviation(analysis->analysis, in(lambda), std::span<const long>(L, n), threads);
    for (size_t i = 0; i < n; ++i) out[i] = {r[i].L, out_c(r[i].exact), out_c(r[i].asymptotic), r[i].deviation};
  });
}

}  // extern "C"
