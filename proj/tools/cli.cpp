#include "cli.hpp"

#include <unistd.h>

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "fermichain/fermichain.h"

namespace fermichain::cli {
namespace {

using json = nlohmann::ordered_json;

struct Failure : std::runtime_error {
  Failure(const std::string& what, int c) : std::runtime_error(what), code(c) {}
  int code;
};

[[noreturn]] void reject(const std::string& msg) { throw Failure(msg, invalid); }

void check(fc_status s) {
  if (s == FC_OK) return;
  throw Failure(std::string(fc_status_name(s)) + ": " + fc_last_error(),
                s == FC_ERR_CONVERGENCE ? no_convergence : invalid);
}

using ModelPtr = std::unique_ptr<fc_model, decltype(&fc_model_free)>;
using AnalysisPtr = std::unique_ptr<fc_analysis, decltype(&fc_analysis_free)>;

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// ---------------------------------------------------------------- parsing

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  if (!s.empty() && s.back() == sep) out.push_back("");
  return out;
}

double parse_double(std::string token, const std::string& what) {
  token = trim(token);
  if (!token.empty() && token[0] == '+') token.erase(0, 1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size() || std::isnan(v))
    reject("invalid number '" + token + "' for " + what);
  return v;
}

long parse_long(std::string token, const std::string& what) {
  token = trim(token);
  long v = 0;
  const auto [end, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (token.empty() || ec != std::errc() || end != token.data() + token.size())
    reject("invalid integer '" + token + "' for " + what);
  return v;
}

std::vector<double> parse_list(const std::string& spec, const std::string& what) {
  std::vector<double> out;
  for (const auto& t : split(spec, ',')) out.push_back(parse_double(t, what));
  if (out.empty()) reject(what + " must not be empty");
  return out;
}

// "a:b:step" (inclusive arithmetic range) or a comma list.
std::vector<long> parse_lengths(const std::string& spec, const std::string& what) {
  std::vector<long> out;
  const auto parts = split(spec, ':');
  if (parts.size() == 3) {
    const long lo = parse_long(parts[0], what), hi = parse_long(parts[1], what), step = parse_long(parts[2], what);
    if (step <= 0) reject(what + " step must be positive");
    for (long L = lo; L <= hi; L += step) out.push_back(L);
  } else if (parts.size() == 1) {
    for (const auto& t : split(spec, ',')) out.push_back(parse_long(t, what));
  } else {
    reject(what + " must be 'min:max:step' or a comma list");
  }
  if (out.empty()) reject(what + " range is empty");
  for (long L : out)
    if (L < 1) reject(what + " entries must be positive");
  return out;
}

// "lo:hi:n" with n points, geometric or linear, or a comma list.
std::vector<double> parse_grid(const std::string& spec, const std::string& what, bool geometric) {
  const auto parts = split(spec, ':');
  if (parts.size() == 1) return parse_list(spec, what);
  if (parts.size() != 3) reject(what + " must be 'lo:hi:n' or a comma list");
  const double lo = parse_double(parts[0], what), hi = parse_double(parts[1], what);
  const long n = parse_long(parts[2], what);
  if (n < 1) reject(what + " needs at least one point");
  if (geometric && !(lo > 0.0 && hi > 0.0)) reject(what + " bounds must be positive");
  std::vector<double> out;
  for (long k = 0; k < n; ++k) {
    const double s = n == 1 ? 0.0 : static_cast<double>(k) / static_cast<double>(n - 1);
    out.push_back(geometric ? lo * std::pow(hi / lo, s) : lo + (hi - lo) * s);
  }
  return out;
}

// ---------------------------------------------------------------- settings

// Command-line values win over keys of the --config file.
class Settings {
 public:
  Settings(const CLI::App* app, json config) : app_(app), config_(std::move(config)) {}

  bool has(const std::string& key) const { return from_cli(key) || config_.contains(key); }

  std::string str(const std::string& key, const std::string& fallback = "") const {
    if (from_cli(key)) return app_->get_option("--" + key)->as<std::string>();
    if (!config_.contains(key)) return fallback;
    const auto& v = config_.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    if (v.is_number_integer()) return std::to_string(v.get<long>());
    if (v.is_number()) return format_double(v.get<double>());
    if (v.is_array()) {
      std::string joined;
      for (const auto& e : v) {
        if (!joined.empty()) joined += ',';
        if (e.is_string()) joined += e.get<std::string>();
        else if (e.is_number_integer()) joined += std::to_string(e.get<long>());
        else if (e.is_number()) joined += format_double(e.get<double>());
        else reject("config key '" + key + "' has an unsupported array entry");
      }
      return joined;
    }
    reject("config key '" + key + "' has an unsupported type");
  }

  bool flag(const std::string& key) const {
    if (from_cli(key)) return true;
    if (!config_.contains(key)) return false;
    const auto& v = config_.at(key);
    if (!v.is_boolean()) reject("config key '" + key + "' must be true or false");
    return v.get<bool>();
  }

  double number(const std::string& key, double fallback) const {
    return has(key) ? parse_double(str(key), "--" + key) : fallback;
  }

  std::string required(const std::string& key) const {
    if (!has(key)) reject("missing required option --" + key);
    return str(key);
  }

 private:
  bool from_cli(const std::string& key) const {
    const auto* opt = app_->get_option_no_throw("--" + key);
    return opt != nullptr && opt->count() > 0;
  }
  const CLI::App* app_;
  json config_;
};

json load_config(const std::string& path, const CLI::App* sub) {
  std::ifstream in(path);
  if (!in) reject("cannot read config file '" + path + "'");
  json cfg;
  try {
    cfg = json::parse(in);
  } catch (const json::parse_error& e) {
    reject("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (!cfg.is_object()) reject("config file must hold a JSON object");
  for (const auto& [key, value] : cfg.items()) {
    if (key == "command") {
      if (!value.is_string() || value.get<std::string>() != sub->get_name())
        reject("config 'command' does not match subcommand '" + sub->get_name() + "'");
      continue;
    }
    if (key == "config" || sub->get_option_no_throw("--" + key) == nullptr)
      reject("unknown config key '" + key + "' for " + sub->get_name());
  }
  cfg.erase("command");
  return cfg;
}

// ---------------------------------------------------------------- models

struct Model {
  ModelPtr handle{nullptr, fc_model_free};
  json description;
};

Model make_model(const Settings& s) {
  Model m;
  const std::string family = s.required("model");
  fc_model* raw = nullptr;
  if (family == "haldane-shastry" || family == "hs") {
    check(fc_model_haldane_shastry(&raw));
    m.description = {{"family", "haldane-shastry"}};
  } else if (family == "finite-range") {
    const auto c = parse_list(s.required("coeffs"), "--coeffs");
    check(fc_model_finite_range(c.data(), c.size(), &raw));
    m.description = {{"family", "finite-range"}, {"coeffs", c}};
  } else if (family == "power-law") {
    const double nu = parse_double(s.required("nu"), "--nu");
    const double amp = s.number("amplitude", 1.0);
    check(fc_model_power_law(nu, amp, &raw));
    m.description = {{"family", "power-law"}, {"nu", nu}, {"amplitude", amp}};
  } else if (family == "rational-cubic") {
    const double J = parse_double(s.required("J"), "--J");
    check(fc_model_rational_cubic(J, &raw));
    m.description = {{"family", "rational-cubic"}, {"J", J}};
  } else {
    reject("unknown model '" + family + "' (haldane-shastry, finite-range, power-law, rational-cubic)");
  }
  m.handle.reset(raw);
  return m;
}

AnalysisPtr make_analysis(const fc_model* model, double mu) {
  fc_analysis* raw = nullptr;
  check(fc_analysis_create(model, mu, &raw));
  return {raw, fc_analysis_free};
}

fc_analysis_info info_of(const fc_analysis* a) {
  fc_analysis_info info{};
  check(fc_analysis_get_info(a, &info));
  return info;
}

std::vector<fc_fermi_point> roots_of(const fc_analysis* a) {
  const auto info = info_of(a);
  std::vector<fc_fermi_point> roots(info.n_roots);
  for (size_t i = 0; i < roots.size(); ++i) check(fc_analysis_root(a, i, &roots[i]));
  return roots;
}

json complex_json(fc_complex z) { return {{"re", z.re}, {"im", z.im}}; }

// ---------------------------------------------------------------- output

using Cell = std::variant<double, long, std::string>;

struct Output {
  std::vector<std::string> header;
  std::vector<std::vector<Cell>> rows;
  json results;
  // Columns (1-based) for the optional gnuplot script: x, then y columns.
  int x_column = 1;
  std::vector<int> y_columns;
  bool log_x = false;
};

std::string render_csv(const Output& out) {
  std::string s;
  for (size_t i = 0; i < out.header.size(); ++i) s += (i ? "," : "") + out.header[i];
  s += '\n';
  for (const auto& row : out.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) s += ',';
      std::visit(
          [&s](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) s += format_double(v);
            else if constexpr (std::is_same_v<T, long>) s += std::to_string(v);
            else s += v;
          },
          row[i]);
    }
    s += '\n';
  }
  return s;
}

std::string gnuplot_script(const Output& out, const std::string& data_path) {
  std::string s = "set datafile separator ','\nset key autotitle columnhead\n";
  s += "set xlabel '" + out.header[out.x_column - 1] + "'\n";
  if (out.log_x) s += "set logscale x\n";
  s += "plot ";
  for (size_t i = 0; i < out.y_columns.size(); ++i) {
    if (i) s += ", \\\n     ";
    s += "'" + data_path + "' using " + std::to_string(out.x_column) + ":" + std::to_string(out.y_columns[i]) +
         " with linespoints";
  }
  return s + "\n";
}

// Every file is written to a temporary sibling and renamed into place once
// all of them are complete.
void commit_files(const std::vector<std::pair<std::string, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<std::pair<fs::path, fs::path>> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const auto& [tmp, dest] : staged) fs::remove(tmp, ec);
  };
  for (const auto& [path, text] : files) {
    fs::path dest(path);
    fs::path tmp = dest;
    tmp += ".tmp." + std::to_string(::getpid());
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    staged.emplace_back(tmp, dest);
    f << text;
    f.close();
    if (!f) {
      discard();
      reject("cannot write '" + path + "'");
    }
  }
  for (const auto& [tmp, dest] : staged) {
    std::error_code ec;
    fs::rename(tmp, dest, ec);
    if (ec) {
      discard();
      reject("cannot move output into '" + dest.string() + "': " + ec.message());
    }
  }
}

// ---------------------------------------------------------------- commands

Output cmd_dispersion(const Settings& s, json& cfg) {
  auto model = make_model(s);
  cfg["model"] = model.description;
  Output out;
  fc_monotonicity_info mono{};
  check(fc_monotonicity(model.handle.get(), 4096, &mono, nullptr, 0));
  std::vector<double> critical(mono.n_critical);
  check(fc_monotonicity(model.handle.get(), 4096, &mono, critical.data(), critical.size()));
  out.results = {{"monotonic", mono.monotonic != 0},
                 {"critical_points", critical},
                 {"e_min", mono.e_min},
                 {"e_max", mono.e_max}};
  if (s.has("N")) {
    const long N = parse_long(s.str("N"), "--N");
    if (N < 1) reject("--N must be positive");
    cfg["N"] = N;
    out.header = {"l", "p", "energy"};
    json modes = json::array();
    for (long l = 0; l < N; ++l) {
      double e = 0.0;
      check(fc_mode_energy(model.handle.get(), N, l, &e));
      const double p = 2.0 * 3.14159265358979323846 * static_cast<double>(l) / static_cast<double>(N);
      out.rows.push_back({l, p, e});
      modes.push_back({{"l", l}, {"p", p}, {"energy", e}});
    }
    out.results["modes"] = modes;
    out.x_column = 2;
    out.y_columns = {3};
    return out;
  }
  const long points = s.has("points") ? parse_long(s.str("points"), "--points") : 101;
  if (points < 2) reject("--points must be at least 2");
  cfg["points"] = points;
  out.header = {"p", "energy", "d1", "d2"};
  json samples = json::array();
  for (long k = 0; k < points; ++k) {
    const double p = 3.14159265358979323846 * static_cast<double>(k) / static_cast<double>(points - 1);
    double e = 0.0, d1 = 0.0, d2 = 0.0;
    check(fc_dispersion(model.handle.get(), p, &e));
    check(fc_dispersion_derivative(model.handle.get(), p, 1, &d1));
    check(fc_dispersion_derivative(model.handle.get(), p, 2, &d2));
    out.rows.push_back({p, e, d1, d2});
    samples.push_back({{"p", p}, {"energy", e}, {"d1", d1}, {"d2", d2}});
  }
  out.results["samples"] = samples;
  out.y_columns = {2};
  return out;
}

Output cmd_phase(const Settings& s, json& cfg) {
  auto model = make_model(s);
  cfg["model"] = model.description;
  const auto mus = parse_grid(s.required("mu"), "--mu", false);
  cfg["mu"] = mus;
  Output out;
  out.header = {"mu", "phase", "central_charge", "n_roots", "root_index", "p", "multiplicity", "velocity"};
  out.results = json::array();
  for (double mu : mus) {
    auto a = make_analysis(model.handle.get(), mu);
    const auto info = info_of(a.get());
    const auto roots = roots_of(a.get());
    const std::string phase = fc_phase_name(info.phase);
    json jr = json::array(), jp = json::array(), sea = json::array();
    for (size_t i = 0; i < roots.size(); ++i) {
      const auto& r = roots[i];
      jr.push_back(r.momentum);
      jp.push_back({{"momentum", r.momentum}, {"multiplicity", r.multiplicity}, {"velocity", r.velocity}});
      out.rows.push_back({mu, phase, static_cast<long>(info.central_charge), static_cast<long>(roots.size()),
                          static_cast<long>(i), r.momentum, static_cast<long>(r.multiplicity), r.velocity});
    }
    if (roots.empty()) {
      const double nan = std::nan("");
      out.rows.push_back({mu, phase, static_cast<long>(info.central_charge), 0L, -1L, nan, 0L, nan});
    }
    for (size_t i = 0; i < info.n_sea; ++i) {
      double lo = 0.0, hi = 0.0;
      check(fc_analysis_sea(a.get(), i, &lo, &hi));
      sea.push_back({lo, hi});
    }
    out.results.push_back({{"mu", mu},
                           {"phase", phase},
                           {"c", info.central_charge},
                           {"roots", jr},
                           {"fermi_points", jp},
                           {"sea", sea},
                           {"e_min", info.e_min},
                           {"e_max", info.e_max}});
  }
  out.y_columns = {6};
  return out;
}

Output cmd_free_energy(const Settings& s, json& cfg) {
  auto model = make_model(s);
  cfg["model"] = model.description;
  const double mu = parse_double(s.required("mu"), "--mu");
  const auto temps = parse_grid(s.str("T", "1e-3:1e-2:8"), "--T", true);
  const bool fit = s.flag("fit");
  cfg["mu"] = mu;
  cfg["T"] = temps;
  cfg["fit"] = fit;
  for (double T : temps)
    if (!(T > 0.0)) reject("--T entries must be positive");
  auto a = make_analysis(model.handle.get(), mu);
  fc_scaling_fit sf{};
  if (fit) check(fc_low_temperature_fit(model.handle.get(), mu, temps.data(), temps.size(), &sf));

  Output out;
  out.header = {"T", "f", "f0", "excess", "abs_error"};
  if (fit)
    for (const char* h : {"fit_exponent", "fit_coefficient", "predicted_exponent", "predicted_coefficient", "fit_residual"})
      out.header.push_back(h);
  json rows = json::array();
  for (double T : temps) {
    fc_thermal th{};
    check(fc_free_energy(a.get(), T, &th));
    std::vector<Cell> row = {th.T, th.f, th.f0, th.excess, th.abs_error};
    if (fit)
      for (double v : {sf.exponent, sf.coefficient, sf.predicted_exponent, sf.predicted_coefficient, sf.residual})
        row.push_back(v);
    out.rows.push_back(std::move(row));
    rows.push_back({{"T", th.T}, {"f", th.f}, {"f0", th.f0}, {"excess", th.excess}, {"abs_error", th.abs_error}});
  }
  out.results = {{"mu", mu}, {"phase", fc_phase_name(info_of(a.get()).phase)}, {"rows", rows}};
  if (fit)
    out.results["fit"] = {{"exponent", sf.exponent},
                          {"coefficient", sf.coefficient},
                          {"predicted_exponent", sf.predicted_exponent},
                          {"predicted_coefficient", sf.predicted_coefficient},
                          {"residual", sf.residual}};
  out.y_columns = {4};
  out.log_x = true;
  return out;
}

unsigned thread_count(const Settings& s) {
  if (!s.has("threads")) return 0;
  const long t = parse_long(s.str("threads"), "--threads");
  if (t < 0) reject("--threads must be >= 0");
  return static_cast<unsigned>(t);
}

Output cmd_entropy(const Settings& s, json& cfg) {
  auto model = make_model(s);
  cfg["model"] = model.description;
  const double mu = parse_double(s.required("mu"), "--mu");
  const auto alphas = parse_list(s.str("alpha", "1"), "--alpha");
  const auto Ls = parse_lengths(s.required("L"), "--L");
  const bool compare = s.flag("compare");
  cfg["mu"] = mu;
  cfg["alpha"] = alphas;
  cfg["L"] = Ls;
  cfg["compare"] = compare;
  long N = 0;
  if (s.has("N")) {
    if (compare) reject("--compare uses the thermodynamic limit and cannot be combined with --N");
    N = parse_long(s.str("N"), "--N");
    cfg["N"] = N;
  }
  for (double a : alphas)
    if (!(a > 0.0)) reject("--alpha entries must be > 0");
  auto a = make_analysis(model.handle.get(), mu);
  const unsigned threads = thread_count(s);

  Output out;
  out.header = compare ? std::vector<std::string>{"L", "S_exact", "S_app", "r_L", "alpha"}
                       : std::vector<std::string>{"L", "S_exact", "alpha"};
  out.results = json::array();
  for (double alpha : alphas) {
    std::vector<fc_entropy_report> reps(Ls.size());
    if (N > 0) {
      for (size_t i = 0; i < Ls.size(); ++i) {
        std::vector<double> row(Ls[i]), ev(Ls[i]);
        check(fc_correlation_row_finite(model.handle.get(), mu, Ls[i], N, row.data()));
        check(fc_eigenvalues_symmetric(row.data(), Ls[i], ev.data()));
        reps[i].alpha = alpha;
        reps[i].L = Ls[i];
        check(fc_renyi_exact(ev.data(), Ls[i], alpha, &reps[i].s_exact));
      }
    } else {
      check(fc_entropy_sweep(a.get(), Ls.data(), Ls.size(), alpha, compare ? 1 : 0, threads, reps.data()));
    }
    for (const auto& r : reps) {
      if (compare) {
        out.rows.push_back({r.L, r.s_exact, r.s_asymptotic, r.r_L, alpha});
        out.results.push_back({{"L", r.L},
                               {"alpha", alpha},
                               {"s_exact", r.s_exact},
                               {"s_asymptotic", r.s_asymptotic},
                               {"r_L", r.r_L},
                               {"c_alpha", r.c_alpha},
                               {"c_tilde", r.c_tilde},
                               {"f_factor", r.f_factor}});
      } else {
        out.rows.push_back({r.L, r.s_exact, alpha});
        out.results.push_back({{"L", r.L}, {"alpha", alpha}, {"s_exact", r.s_exact}});
      }
    }
  }
  out.y_columns = compare ? std::vector<int>{2, 3} : std::vector<int>{2};
  out.log_x = true;
  return out;
}

Output cmd_fh_check(const Settings& s, json& cfg) {
  auto model = make_model(s);
  cfg["model"] = model.description;
  const double mu = parse_double(s.required("mu"), "--mu");
  const fc_complex lambda{s.number("lambda-re", 3.0), s.number("lambda-im", 0.0)};
  const auto Ls = parse_lengths(s.str("L", "8,16,32,64,128"), "--L");
  cfg["mu"] = mu;
  cfg["lambda"] = complex_json(lambda);
  cfg["L"] = Ls;
  auto a = make_analysis(model.handle.get(), mu);
  std::vector<fc_fh_row> rows(Ls.size());
  check(fc_fh_deviation(a.get(), lambda, Ls.data(), Ls.size(), thread_count(s), rows.data()));

  const auto roots = roots_of(a.get());
  std::vector<double> p;
  for (const auto& r : roots) p.push_back(r.momentum);
  const bool complement = info_of(a.get()).sea_contains_origin == 0;
  fc_fh_symbol sym{};
  check(fc_symbol_params(p.data(), p.size(), complement ? fc_complex{-lambda.re, -lambda.im} : lambda, &sym));

  Output out;
  out.header = {"L", "exact_re", "exact_im", "asym_re", "asym_im", "deviation"};
  json jrows = json::array();
  for (const auto& r : rows) {
    out.rows.push_back({r.L, r.exact.re, r.exact.im, r.asymptotic.re, r.asymptotic.im, r.deviation});
    jrows.push_back({{"L", r.L},
                     {"exact", complex_json(r.exact)},
                     {"asymptotic", complex_json(r.asymptotic)},
                     {"deviation", r.deviation}});
  }
  out.results = {{"mu", mu},
                 {"roots", p},
                 {"complement_sea", complement},
                 {"beta", complex_json(sym.beta)},
                 {"b", complex_json(sym.b)},
                 {"P", sym.P},
                 {"rows", jrows}};
  out.y_columns = {6};
  out.log_x = true;
  return out;
}

Output cmd_constants(const Settings& s, json& cfg) {
  const auto alphas = parse_list(s.str("alpha", "1"), "--alpha");
  cfg["alpha"] = alphas;
  Output out;
  out.header = {"alpha", "i1", "i1_quadrature", "c_tilde", "c_tilde_oracle"};
  out.results = json::array();
  for (double alpha : alphas) {
    double i1 = 0.0, i1q = 0.0, ct = 0.0, cto = 0.0;
    check(fc_i1(alpha, &i1));
    check(fc_i1_quadrature(alpha, &i1q));
    check(fc_c_tilde(alpha, &ct));
    check(fc_c_tilde_oracle(alpha, &cto));
    out.rows.push_back({alpha, i1, i1q, ct, cto});
    out.results.push_back(
        {{"alpha", alpha}, {"i1", i1}, {"i1_quadrature", i1q}, {"c_tilde", ct}, {"c_tilde_oracle", cto}});
  }
  out.y_columns = {4};
  out.log_x = true;
  return out;
}

// ---------------------------------------------------------------- wiring

void add_common(CLI::App* sub) {
  sub->add_option("--format", "Output format: csv or json (default csv)");
  sub->add_option("--output,-o", "Output file (default stdout)");
  sub->add_option("--config", "JSON file with option values; command-line flags take precedence");
  sub->add_flag("--gnuplot-stub", "Also write <output>.gp plotting the CSV table");
  sub->add_flag("--reproducible", "Report runtime_s = 0 so JSON output is byte-identical across runs");
}

void add_model(CLI::App* sub) {
  sub->add_option("--model", "haldane-shastry (hs), finite-range, power-law or rational-cubic");
  sub->add_option("--coeffs", "finite-range couplings alpha_1,...,alpha_r");
  sub->add_option("--nu", "power-law exponent (> 1)");
  sub->add_option("--amplitude", "power-law amplitude (default 1)");
  sub->add_option("--J", "rational-cubic coupling");
}

}  // namespace

int run(const std::vector<std::string>& args) {
  const auto start = std::chrono::steady_clock::now();
  CLI::App app("Free-fermion su(1|1) chains: dispersion, phases, thermodynamics and entanglement", "fermichain");
  app.set_version_flag("--version", std::string(fc_version()));
  app.require_subcommand(1);
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

  auto* dispersion = app.add_subcommand("dispersion", "Sample E(p), its derivatives and extrema");
  add_model(dispersion);
  dispersion->add_option("--points", "Samples on [0, pi] (default 101)");
  dispersion->add_option("--N", "Tabulate the single-mode energies of an N-site chain instead");

  auto* phase = app.add_subcommand("phase", "Fermi points, Fermi sea and phase label");
  add_model(phase);
  phase->add_option("--mu", "Chemical potential: value, comma list or lo:hi:n");

  auto* free_energy = app.add_subcommand("free-energy", "Free energy per spin and low-temperature scaling");
  add_model(free_energy);
  free_energy->add_option("--mu", "Chemical potential");
  free_energy->add_option("--T", "Temperatures: comma list or lo:hi:n geometric (default 1e-3:1e-2:8)");
  free_energy->add_flag("--fit", "Fit log|f - f0| against log T");

  auto* entropy = app.add_subcommand("entropy", "Block Renyi entropies");
  add_model(entropy);
  entropy->add_option("--mu", "Chemical potential");
  entropy->add_option("--alpha", "Renyi indices, comma list; 'inf' allowed (default 1)");
  entropy->add_option("--L", "Block lengths: min:max:step or comma list");
  entropy->add_option("--N", "Use the finite chain of N sites instead of the thermodynamic limit");
  entropy->add_flag("--compare", "Add the asymptotic formula and r_L = S_app/S_exact - 1");
  entropy->add_option("--threads", "Worker threads for the L sweep (0 = all cores)");

  auto* fh = app.add_subcommand("fh-check", "Exact against asymptotic log det(lambda + 1 - 2A_L)");
  add_model(fh);
  fh->add_option("--mu", "Chemical potential");
  fh->add_option("--lambda-re", "Re lambda (default 3)");
  fh->add_option("--lambda-im", "Im lambda (default 0)");
  fh->add_option("--L", "Block lengths: min:max:step or comma list (default 8,16,32,64,128)");
  fh->add_option("--threads", "Worker threads (0 = all cores)");

  auto* constants = app.add_subcommand("constants", "Universal constants C~_alpha and I1(alpha)");
  constants->add_option("--alpha", "Renyi indices, comma list; 'inf' allowed (default 1)");

  for (auto* sub : {dispersion, phase, free_energy, entropy, fh, constants}) add_common(sub);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    std::cout << app.help();
    return ok;
  } catch (const CLI::CallForVersion& e) {
    std::cout << fc_version() << "\n";
    return ok;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      std::cout << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return ok;
    }
    std::cerr << "fermichain: " << e.what() << "\n";
    return invalid;
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    json file_config = json::object();
    if (const auto* c = sub->get_option_no_throw("--config"); c && c->count() > 0)
      file_config = load_config(c->as<std::string>(), sub);
    const Settings s(sub, file_config);

    const std::string format = s.str("format", "csv");
    if (format != "csv" && format != "json") reject("unknown --format '" + format + "' (csv or json)");
    const std::string output = s.str("output");
    const bool stub = s.flag("gnuplot-stub");
    if (stub && (format != "csv" || output.empty())) reject("--gnuplot-stub needs --format csv and --output");

    json cfg = {{"command", sub->get_name()}};
    Output out;
    const std::string name = sub->get_name();
    if (name == "dispersion") out = cmd_dispersion(s, cfg);
    else if (name == "phase") out = cmd_phase(s, cfg);
    else if (name == "free-energy") out = cmd_free_energy(s, cfg);
    else if (name == "entropy") out = cmd_entropy(s, cfg);
    else if (name == "fh-check") out = cmd_fh_check(s, cfg);
    else out = cmd_constants(s, cfg);
    cfg["format"] = format;

    std::string text;
    if (format == "csv") {
      text = render_csv(out);
    } else {
      const double runtime =
          s.flag("reproducible") ? 0.0 : std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      json doc = {{"config", cfg}, {"results", out.results}, {"meta", {{"version", fc_version()}, {"runtime_s", runtime}}}};
      text = doc.dump(2) + "\n";
    }
    if (output.empty()) {
      std::cout << text << std::flush;
    } else {
      std::vector<std::pair<std::string, std::string>> files = {{output, text}};
      if (stub) files.emplace_back(output + ".gp", gnuplot_script(out, output));
      commit_files(files);
    }
    return ok;
  } catch (const Failure& e) {
    std::cerr << "fermichain: " << e.what() << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "fermichain: " << e.what() << "\n";
    return invalid;
  }
}

}  // namespace fermichain::cli
