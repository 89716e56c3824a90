// Command-line front end: spectrum tables, coherent-state construction and
// export, the verification battery, wavefunction sampling, and label sweeps.
// All file output is deterministic: fixed formatting, no timestamps, map
// ordering only.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <omp.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "gkcs/json_io.hpp"
#include "gkcs/model.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/states.hpp"
#include "gkcs/verify.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace gkcs;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitVerifyFail = 2;
constexpr int kExitNonConvergence = 3;

struct RunConfig {
  // physical inputs; kappa > 0 overrides B so that hbar*omega_c == kappa
  double m = 1.0, hbar = 1.0, e_charge = 1.0, c = 1.0, B = 1.0, E_field = 1.0;
  double kappa = 0.0;
  std::string mode = "unshifted";
  std::string gauge = "gauge1";

  // discrete truncation and quadrature controls
  int cutoff = 32;
  int gl_order = 64;
  int grid_nodes = 2000;
  double tail_tol = 1e-12;

  // spectrum ranges (inclusive) and probe alphas
  int n_max = 2;
  int l_max = 1;
  std::vector<double> alphas = {-1.0};

  // coherent-state labels
  double J = 1.0, gamma = 0.4, Jprime = 1.5, gamma_prime = -0.3;
  std::string running = "n";
  int fixed = 0;
  double K = 1.2, theta = 0.7, beta = 1.1;
  std::string sign = "negative";

  // verification extras
  double Omega = 0.0;  // 0 = auto: kappa*(cutoff+1)
  double mu = 0.0, sigma = 0.0;
  bool include_divergent = false;

  // wavefunction sampling
  double wf_alpha = -1.0;
  int nx = 17, ny = 17;
  double range = 1.0;

  // sweep grids
  std::vector<double> J_list = {0.5, 1.0, 2.0};
  std::vector<double> K_list = {0.5, 1.5};

  std::string out = "out";
  std::map<std::string, double> tol_overrides;
};

void apply_json_config(RunConfig& cfg, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("config: parse error in '" + path +
                                "': " + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config: top level must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    const json& v = it.value();
    auto num = [&]() -> double {
      if (!v.is_number())
        throw std::invalid_argument("config field '" + k + "': expected number");
      return v.get<double>();
    };
    auto str = [&]() -> std::string {
      if (!v.is_string())
        throw std::invalid_argument("config field '" + k + "': expected string");
      return v.get<std::string>();
    };
    auto vec = [&]() -> std::vector<double> {
      if (!v.is_array())
        throw std::invalid_argument("config field '" + k + "': expected array");
      std::vector<double> out;
      for (const auto& e : v) {
        if (!e.is_number())
          throw std::invalid_argument("config field '" + k +
                                      "': expected numeric array");
        out.push_back(e.get<double>());
      }
      return out;
    };
    if (k == "m") cfg.m = num();
    else if (k == "hbar") cfg.hbar = num();
    else if (k == "e_charge") cfg.e_charge = num();
    else if (k == "c") cfg.c = num();
    else if (k == "B") cfg.B = num();
    else if (k == "E_field") cfg.E_field = num();
    else if (k == "kappa") cfg.kappa = num();
    else if (k == "mode") cfg.mode = str();
    else if (k == "gauge") cfg.gauge = str();
    else if (k == "cutoff") cfg.cutoff = int(num());
    else if (k == "gl_order") cfg.gl_order = int(num());
    else if (k == "grid_nodes") cfg.grid_nodes = int(num());
    else if (k == "tail_tol") cfg.tail_tol = num();
    else if (k == "n_max") cfg.n_max = int(num());
    else if (k == "l_max") cfg.l_max = int(num());
    else if (k == "alphas") cfg.alphas = vec();
    else if (k == "J") cfg.J = num();
    else if (k == "gamma") cfg.gamma = num();
    else if (k == "Jprime") cfg.Jprime = num();
    else if (k == "gamma_prime") cfg.gamma_prime = num();
    else if (k == "running") cfg.running = str();
    else if (k == "fixed") cfg.fixed = int(num());
    else if (k == "K") cfg.K = num();
    else if (k == "theta") cfg.theta = num();
    else if (k == "beta") cfg.beta = num();
    else if (k == "sign") cfg.sign = str();
    else if (k == "Omega") cfg.Omega = num();
    else if (k == "mu") cfg.mu = num();
    else if (k == "sigma") cfg.sigma = num();
    else if (k == "include_divergent") {
      if (!v.is_boolean())
        throw std::invalid_argument("config field 'include_divergent': expected bool");
      cfg.include_divergent = v.get<bool>();
    } else if (k == "wf_alpha") cfg.wf_alpha = num();
    else if (k == "nx") cfg.nx = int(num());
    else if (k == "ny") cfg.ny = int(num());
    else if (k == "range") cfg.range = num();
    else if (k == "J_list") cfg.J_list = vec();
    else if (k == "K_list") cfg.K_list = vec();
    else if (k == "out") cfg.out = str();
    else if (k == "tol") {
      if (!v.is_object())
        throw std::invalid_argument("config field 'tol': expected object");
      for (auto t = v.begin(); t != v.end(); ++t) {
        if (!t.value().is_number())
          throw std::invalid_argument("config field 'tol." + t.key() +
                                      "': expected number");
        cfg.tol_overrides[t.key()] = t.value().get<double>();
      }
    } else {
      throw std::invalid_argument("config field '" + k + "': unknown field");
    }
  }
}

model::SpectrumMode parse_mode(const std::string& s) {
  if (s == "shifted") return model::SpectrumMode::shifted;
  if (s == "unshifted") return model::SpectrumMode::unshifted;
  throw std::invalid_argument("config field 'mode': must be shifted|unshifted");
}

model::GaugeChoice parse_gauge(const std::string& s) {
  if (s == "gauge1") return model::GaugeChoice::gauge1;
  if (s == "gauge2") return model::GaugeChoice::gauge2;
  throw std::invalid_argument("config field 'gauge': must be gauge1|gauge2");
}

states::RunningIndex parse_running(const std::string& s) {
  if (s == "n") return states::RunningIndex::level_n;
  if (s == "l") return states::RunningIndex::level_l;
  throw std::invalid_argument("config field 'running': must be n|l");
}

states::PhaseSign parse_sign(const std::string& s) {
  if (s == "negative") return states::PhaseSign::negative;
  if (s == "positive") return states::PhaseSign::positive;
  throw std::invalid_argument("config field 'sign': must be negative|positive");
}

model::PhysicalParams derive(const RunConfig& cfg) {
  double B = cfg.B;
  if (cfg.kappa != 0.0) {
    if (!(cfg.kappa > 0.0))
      throw std::invalid_argument("config field 'kappa': must be > 0");
    B = cfg.kappa * cfg.m * cfg.c / (cfg.e_charge * cfg.hbar);
  }
  return model::derive_params(cfg.m, cfg.hbar, cfg.e_charge, B, cfg.c,
                              cfg.E_field);
}

verify::Tolerances make_tolerances(const RunConfig& cfg) {
  verify::Tolerances tol;
  for (const auto& [name, value] : cfg.tol_overrides)
    verify::set_tolerance(tol, name, value);
  return tol;
}

std::FILE* open_out(const RunConfig& cfg, const std::string& name) {
  fs::create_directories(cfg.out);
  const fs::path p = fs::path(cfg.out) / name;
  std::FILE* f = std::fopen(p.string().c_str(), "wb");
  if (!f)
    throw std::invalid_argument("config field 'out': cannot write to '" +
                                p.string() + "'");
  return f;
}

// --- spectrum --------------------------------------------------------------

int cmd_spectrum(const RunConfig& cfg) {
  if (cfg.n_max < 0) throw std::invalid_argument("config field 'n_max': must be >= 0");
  if (cfg.l_max < 0) throw std::invalid_argument("config field 'l_max': must be >= 0");
  const model::PhysicalParams p = derive(cfg);
  const model::SpectrumMode mode = parse_mode(cfg.mode);
  const double bound = model::alpha_bound(mode, p);

  std::FILE* f = open_out(cfg, "spectrum.csv");
  std::fprintf(f, "n,l,alpha,E_discrete,E_continuous,E_total,valid\n");
  int warnings = 0;
  for (int n = 0; n <= cfg.n_max; ++n)
    for (int l = 0; l <= cfg.l_max; ++l)
      for (double alpha : cfg.alphas) {
        const double Ed = model::discrete_energy(mode, n, p);
        const double eps = model::epsilon_of_alpha(mode, alpha, p);
        const double Ec = p.kappa * (-eps);
        const bool valid = alpha <= bound;
        if (!valid) ++warnings;
        std::fprintf(f, "%d,%d,%.17g,%.17g,%.17g,%.17g,%d\n", n, l, alpha, Ed,
                     Ec, Ed + Ec, valid ? 1 : 0);
      }
  std::fclose(f);
  if (warnings > 0)
    std::fprintf(stderr, "warning: %d rows have alpha above the bound %.17g\n",
                 warnings, bound);
  std::printf("spectrum.csv: %d rows, %d flagged\n",
              (cfg.n_max + 1) * (cfg.l_max + 1) * int(cfg.alphas.size()),
              warnings);
  return kExitOk;
}

// --- cs-build --------------------------------------------------------------

int cmd_cs_build(const RunConfig& cfg) {
  const model::PhysicalParams p = derive(cfg);
  const model::SpectrumMode mode = parse_mode(cfg.mode);
  const states::RhoContinuous rho_c;
  const states::EnvelopeMeasures meas =
      states::make_envelope_measures(mode, p.kappa, rho_c);

  states::DiscreteLabels labels;
  labels.J = cfg.J;
  labels.gamma = cfg.gamma;
  labels.Jprime = cfg.Jprime;
  labels.gamma_prime = cfg.gamma_prime;
  labels.running = parse_running(cfg.running);
  labels.fixed_value = cfg.fixed;

  states::CombinedConfig ccfg;
  ccfg.cutoff = cfg.cutoff;
  ccfg.tail_tol = cfg.tail_tol;
  ccfg.grid.n_nodes = cfg.grid_nodes;
  ccfg.sign = parse_sign(cfg.sign);

  const states::CombinedCS cs = states::build_combined_cs(
      mode, labels, cfg.K, cfg.theta, cfg.beta, p.kappa, meas, rho_c, ccfg);

  {
    std::FILE* f = open_out(cfg, "cs.json");
    const std::string doc = json_io::combined_to_json(cs).dump(2);
    std::fwrite(doc.data(), 1, doc.size(), f);
    std::fputc('\n', f);
    std::fclose(f);
  }
  {
    std::FILE* f = open_out(cfg, "cs_profile.csv");
    std::fprintf(f, "part,label,weight\n");
    for (size_t n = 0; n < cs.discrete.coeffs.size(); ++n)
      std::fprintf(f, "n,%zu,%.17g\n", n, std::norm(cs.discrete.coeffs[n]));
    for (size_t i = 0; i < cs.continuous.values.size(); ++i)
      std::fprintf(f, "eps,%.17g,%.17g\n", cs.continuous.grid.nodes[i],
                   std::norm(cs.continuous.values[i]));
    std::fclose(f);
  }
  std::printf("cs.json: norm_sq=%.17g tail_bound=%.3g f=%.17g g=%.17g\n",
              cs.norm_sq(), cs.discrete.tail_bound, cs.f_value, cs.g_value);
  return kExitOk;
}

// --- verify ----------------------------------------------------------------

std::vector<verify::VerificationReport> run_battery(const RunConfig& cfg,
                                                    const std::string& which,
                                                    const model::PhysicalParams& p,
                                                    const verify::Tolerances& tol) {
  using verify::VerificationReport;
  const model::SpectrumMode mode = parse_mode(cfg.mode);
  std::vector<VerificationReport> reports;
  const bool all = which == "all";

  if (all || which == "moments") {
    for (int n : {0, 2, 5, 10, 40})
      reports.push_back(verify::check_moment_discrete(
          model::SpectrumMode::shifted, verify::MomentMeasure::exp_measure, n,
          1.0, 0.0, 0.0, tol));
    for (double kap : {0.5, 1.0, 2.0})
      for (int n : {0, 2, 5, 10, 40})
        reports.push_back(verify::check_moment_discrete(
            model::SpectrumMode::unshifted, verify::MomentMeasure::gamma32, n,
            kap, 0.0, 0.0, tol));
    if (cfg.include_divergent)
      reports.push_back(verify::check_moment_discrete(
          model::SpectrumMode::unshifted, verify::MomentMeasure::direct_laguerre,
          2, p.kappa, cfg.mu, cfg.sigma, tol));
  }
  if (all || which == "laguerre") {
    for (int n : {0, 2, 5})
      for (double mu : {0.0, 0.15, 0.3})
        for (double sg : {-0.2, 0.0, mu})
          reports.push_back(verify::check_laguerre_identity(
              n, n + 0.5, mu, sg, 1.0 / p.kappa + mu, tol));
  }
  if (all || which == "identity") {
    verify::ResolutionDiscreteConfig rd;
    rd.mode = model::SpectrumMode::shifted;
    reports.push_back(verify::check_resolution_discrete(rd, tol));
    rd.mode = model::SpectrumMode::unshifted;
    rd.kappa = p.kappa;
    reports.push_back(verify::check_resolution_discrete(rd, tol));
    rd.scope = verify::ResolutionScope::summed_levels;
    reports.push_back(verify::check_resolution_discrete(rd, tol));
    verify::ResolutionContinuousConfig rc;
    reports.push_back(verify::check_resolution_continuous(rc, tol));
  }
  if (all || which == "temporal") {
    for (auto m : {model::SpectrumMode::shifted, model::SpectrumMode::unshifted})
      for (auto run :
           {states::RunningIndex::level_n, states::RunningIndex::level_l}) {
        verify::TemporalConfig tc;
        tc.mode = m;
        tc.running = run;
        tc.labels.J = cfg.J;
        tc.labels.gamma = cfg.gamma;
        tc.labels.Jprime = cfg.Jprime;
        tc.labels.gamma_prime = cfg.gamma_prime;
        tc.labels.fixed_value = cfg.fixed;
        tc.K = cfg.K;
        tc.theta = cfg.theta;
        tc.beta = cfg.beta;
        tc.Omega = cfg.Omega;
        reports.push_back(verify::check_temporal_stability(tc, p, tol));
      }
  }
  if (all || which == "crossterm") {
    verify::CrossTermConfig cc;
    reports.push_back(verify::check_cross_term(cc, tol));
  }
  if (all || which == "commutators") {
    reports.push_back(verify::check_commutators(40, p, tol));
  }
  return reports;
}

int cmd_verify(const RunConfig& cfg, const std::string& which) {
  static const std::vector<std::string> known = {
      "all", "moments", "identity", "temporal", "crossterm", "commutators",
      "laguerre"};
  if (std::find(known.begin(), known.end(), which) == known.end())
    throw std::invalid_argument(
        "config field 'which': must be one of all|moments|identity|temporal|"
        "crossterm|commutators|laguerre");
  const model::PhysicalParams p = derive(cfg);
  const verify::Tolerances tol = make_tolerances(cfg);
  const auto reports = run_battery(cfg, which, p, tol);

  json out = json::array();
  bool any_fail = false, any_nonconv = false;
  for (const auto& r : reports) {
    std::printf("[%s] %-32s residual=%.6e tol=%.1e (%.1f ms)\n",
                r.pass ? "PASS" : "FAIL", r.check_name.c_str(), r.residual,
                r.tolerance, r.runtime_ms);
    if (!r.pass) any_fail = true;
    if (r.params.count("nonconvergence")) any_nonconv = true;
    json jr;
    jr["check"] = r.check_name;
    jr["residual"] = r.residual;
    jr["tolerance"] = r.tolerance;
    jr["pass"] = r.pass;
    jr["params"] = json::object();
    for (const auto& [k, v] : r.params) jr["params"][k] = v;
    out.push_back(jr);
  }
  {
    std::FILE* f = open_out(cfg, "report.json");
    const std::string doc = out.dump(2);
    std::fwrite(doc.data(), 1, doc.size(), f);
    std::fputc('\n', f);
    std::fclose(f);
  }
  std::printf("%zu checks, %s\n", reports.size(),
              any_fail ? "FAILURES PRESENT" : "all passed");
  if (any_nonconv) return kExitNonConvergence;
  return any_fail ? kExitVerifyFail : kExitOk;
}

// --- wavefunction ----------------------------------------------------------

int cmd_wavefunction(const RunConfig& cfg) {
  if (cfg.nx < 2 || cfg.ny < 2)
    throw std::invalid_argument("config field 'nx'/'ny': must be >= 2");
  if (!(cfg.range > 0.0))
    throw std::invalid_argument("config field 'range': must be > 0");
  const model::PhysicalParams p = derive(cfg);
  const model::SpectrumMode mode = parse_mode(cfg.mode);
  const model::GaugeChoice gauge = parse_gauge(cfg.gauge);
  if (cfg.wf_alpha > model::alpha_bound(mode, p))
    std::fprintf(stderr, "warning: wf_alpha above the bound %.17g\n",
                 model::alpha_bound(mode, p));

  std::FILE* f = open_out(cfg, "wavefunction.csv");
  std::fprintf(f, "x,y,re,im\n");
  for (int iy = 0; iy < cfg.ny; ++iy)
    for (int ix = 0; ix < cfg.nx; ++ix) {
      const double x = -cfg.range + 2.0 * cfg.range * ix / (cfg.nx - 1);
      const double y = -cfg.range + 2.0 * cfg.range * iy / (cfg.ny - 1);
      const auto v = model::phi_alpha(gauge, cfg.wf_alpha, x, y, p);
      std::fprintf(f, "%.17g,%.17g,%.17g,%.17g\n", x, y, v.real(), v.imag());
    }
  std::fclose(f);
  std::printf("wavefunction.csv: %d rows\n", cfg.nx * cfg.ny);
  return kExitOk;
}

// --- sweep -----------------------------------------------------------------

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.J_list.empty() || cfg.K_list.empty())
    throw std::invalid_argument("config field 'J_list'/'K_list': must be nonempty");
  const model::PhysicalParams p = derive(cfg);
  const model::SpectrumMode mode = parse_mode(cfg.mode);
  const states::RhoContinuous rho_c;
  const states::EnvelopeMeasures meas =
      states::make_envelope_measures(mode, p.kappa, rho_c);

  struct Row {
    double J, K, norm_sq, tail;
    int status;  // 0 ok, 3 nonconvergence
  };
  const int nj = int(cfg.J_list.size()), nk = int(cfg.K_list.size());
  std::vector<Row> rows(size_t(nj) * nk);

  // results land at their input index, so output order is input order no
  // matter how the iterations are scheduled
#pragma omp parallel for schedule(dynamic)
  for (int idx = 0; idx < nj * nk; ++idx) {
    const double J = cfg.J_list[idx / nk];
    const double K = cfg.K_list[idx % nk];
    Row row{J, K, 0.0, 0.0, 0};
    try {
      states::DiscreteLabels labels;
      labels.J = J;
      labels.gamma = cfg.gamma;
      labels.Jprime = J;
      labels.gamma_prime = cfg.gamma_prime;
      labels.running = parse_running(cfg.running);
      labels.fixed_value = cfg.fixed;
      states::CombinedConfig ccfg;
      ccfg.cutoff = cfg.cutoff;
      ccfg.tail_tol = cfg.tail_tol;
      ccfg.grid.n_nodes = cfg.grid_nodes;
      const states::CombinedCS cs = states::build_combined_cs(
          mode, labels, K, cfg.theta, cfg.beta, p.kappa, meas, rho_c, ccfg);
      row.norm_sq = cs.norm_sq();
      row.tail = cs.discrete.tail_bound;
    } catch (const std::exception&) {
      row.status = kExitNonConvergence;
    }
    rows[idx] = row;
  }

  std::FILE* f = open_out(cfg, "sweep.csv");
  std::fprintf(f, "J,K,norm_sq,tail_bound,status\n");
  int rc = kExitOk;
  for (const Row& r : rows) {
    std::fprintf(f, "%.17g,%.17g,%.17g,%.17g,%d\n", r.J, r.K, r.norm_sq,
                 r.tail, r.status);
    if (r.status != 0) rc = kExitNonConvergence;
  }
  std::fclose(f);
  std::printf("sweep.csv: %d rows%s\n", nj * nk,
              rc == kExitOk ? "" : " (nonconvergent entries flagged)");
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // --config must take effect before the remaining flags override it
  try {
    for (int i = 1; i < argc; ++i) {
      const std::string a = argv[i];
      if (a == "--config" && i + 1 < argc) apply_json_config(cfg, argv[i + 1]);
      else if (a.rfind("--config=", 0) == 0) apply_json_config(cfg, a.substr(9));
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }

  CLI::App app{"Coherent-state construction and verification for a charged "
               "particle in crossed magnetic and electric fields"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON config file");
  app.add_option("--mode", cfg.mode, "spectrum convention: shifted|unshifted");
  app.add_option("--gauge", cfg.gauge, "gauge1|gauge2");
  app.add_option("--kappa", cfg.kappa, "level spacing; overrides B");
  app.add_option("--cutoff", cfg.cutoff, "discrete series cutoff");
  app.add_option("--out", cfg.out, "output directory");
  std::vector<std::string> tol_args;
  app.add_option("--tol", tol_args, "tolerance override NAME=VALUE");

  auto* sp = app.add_subcommand("spectrum", "energy table CSV");
  sp->add_option("--n-max", cfg.n_max, "largest Landau index (inclusive)");
  sp->add_option("--l-max", cfg.l_max, "largest secondary index (inclusive)");
  sp->add_option("--alphas", cfg.alphas, "drift eigenvalue probes")
      ->delimiter(',');

  auto* cb = app.add_subcommand("cs-build", "construct and export a combined state");
  cb->add_option("--J", cfg.J, "running action label");
  cb->add_option("--gamma", cfg.gamma, "running angle label");
  cb->add_option("--Jprime", cfg.Jprime, "fixed-sector action label");
  cb->add_option("--gamma-prime", cfg.gamma_prime, "fixed-sector angle label");
  cb->add_option("--running", cfg.running, "which index runs: n|l");
  cb->add_option("--fixed", cfg.fixed, "held value of the other index");
  cb->add_option("--K", cfg.K, "continuous action label");
  cb->add_option("--theta", cfg.theta, "continuous angle label");
  cb->add_option("--beta", cfg.beta, "relative phase in [0, 2pi)");
  cb->add_option("--sign", cfg.sign, "continuous phase sign: negative|positive");
  cb->add_option("--tail-tol", cfg.tail_tol, "discrete tail bound");

  auto* vf = app.add_subcommand("verify", "run verification checks");
  std::string which = "all";
  vf->add_option("--which", which,
                 "all|moments|identity|temporal|crossterm|commutators|laguerre");
  vf->add_flag("--include-divergent", cfg.include_divergent,
               "also run the eta=3/2 Laguerre measure moment check, which "
               "diverges and exits 3");
  vf->add_option("--mu", cfg.mu, "measure parameter mu");
  vf->add_option("--sigma", cfg.sigma, "measure parameter sigma");
  vf->add_option("--Omega", cfg.Omega, "continuous evolution frequency");

  auto* wf = app.add_subcommand("wavefunction", "sample a drift eigenfunction");
  wf->add_option("--alpha", cfg.wf_alpha, "drift eigenvalue");
  wf->add_option("--nx", cfg.nx, "grid points in x");
  wf->add_option("--ny", cfg.ny, "grid points in y");
  wf->add_option("--range", cfg.range, "half-width of the square grid");

  auto* sw = app.add_subcommand("sweep", "norms over a (J, K) label grid");
  sw->add_option("--J-list", cfg.J_list, "J grid")->delimiter(',');
  sw->add_option("--K-list", cfg.K_list, "K grid")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitConfig;
  }

  try {
    for (const std::string& t : tol_args) {
      const auto eq = t.find('=');
      if (eq == std::string::npos)
        throw std::invalid_argument("config field 'tol': expected NAME=VALUE, got '" + t + "'");
      verify::Tolerances probe;  // validates the name and value
      verify::set_tolerance(probe, t.substr(0, eq), std::stod(t.substr(eq + 1)));
      cfg.tol_overrides[t.substr(0, eq)] = std::stod(t.substr(eq + 1));
    }
    if (sp->parsed()) return cmd_spectrum(cfg);
    if (cb->parsed()) return cmd_cs_build(cfg);
    if (vf->parsed()) return cmd_verify(cfg, which);
    if (wf->parsed()) return cmd_wavefunction(cfg);
    if (sw->parsed()) return cmd_sweep(cfg);
  } catch (const quad::NonConvergence& e) {
    std::fprintf(stderr, "error: non-convergence: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const states::CutoffError& e) {
    std::fprintf(stderr, "error: non-convergence: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const std::overflow_error& e) {
    std::fprintf(stderr, "error: non-convergence: %s\n", e.what());
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitConfig;
  }
  return kExitConfig;
}
