#include "gkcs/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>

#include "gkcs/kernels.hpp"
#include "gkcs/quadrature.hpp"
#include "gkcs/specfun.hpp"

namespace gkcs::verify {

using model::PhysicalParams;
using model::SpectrumMode;
using states::Complex;

namespace {

constexpr double kPi = 3.141592653589793238463;
constexpr double kInf = std::numeric_limits<double>::infinity();

class Timer {
 public:
  Timer() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

std::string fmt_key(const char* prefix, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%g", prefix, v);
  return buf;
}

// Fixed-order Gauss-Legendre on [a, b].
double gl_on(const std::function<double(double)>& f, double a, double b,
             int order) {
  const quad::QuadratureRule rule = quad::gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < order; ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * acc;
}

}  // namespace

void set_tolerance(Tolerances& tol, const std::string& name, double value) {
  if (!(value >= 0.0))
    throw std::invalid_argument("tolerance '" + name + "' must be >= 0");
  if (name == "commutator") tol.commutator = value;
  else if (name == "moment") tol.moment = value;
  else if (name == "laguerre") tol.laguerre_identity = value;
  else if (name == "resolution_shifted") tol.resolution_shifted = value;
  else if (name == "resolution_unshifted") tol.resolution_unshifted = value;
  else if (name == "resolution_continuous") tol.resolution_continuous = value;
  else if (name == "crossterm") tol.crossterm = value;
  else if (name == "crossterm_necessity") tol.crossterm_necessity = value;
  else if (name == "temporal") tol.temporal = value;
  else throw std::invalid_argument("unknown tolerance name '" + name + "'");
}

std::vector<std::string> tolerance_names() {
  return {"commutator",          "moment",
          "laguerre",            "resolution_shifted",
          "resolution_unshifted", "resolution_continuous",
          "crossterm",           "crossterm_necessity",
          "temporal"};
}

// --- moment problems -------------------------------------------------------

namespace {

double moment_exp(int n) {
  const int order = std::max(64, n / 2 + 8);
  const quad::QuadratureRule rule = quad::gauss_laguerre(order, 0.0);
  double acc = 0.0;
  for (int i = 0; i < order; ++i)
    acc += rule.weights[i] *
           std::exp(n * std::log(rule.nodes[i]) - specfun::log_gamma(n + 1.0));
  return acc;
}

double moment_gamma32(SpectrumMode mode, int n, double kappa) {
  // substitute t = J/kappa; the kappa powers cancel only through the
  // log-domain arithmetic, keeping the kappa sweep meaningful
  const int order = std::max(64, n / 2 + 8);
  const quad::QuadratureRule rule = quad::gauss_laguerre(order, 0.5);
  const double lg32 = specfun::log_gamma(1.5);
  double acc = 0.0;
  for (int i = 0; i < order; ++i)
    acc += rule.weights[i] *
           std::exp(n * std::log(kappa * rule.nodes[i]) -
                    states::log_rho_discrete(mode, n, kappa) - lg32);
  return acc;
}

double moment_direct_laguerre(SpectrumMode mode, int n, double kappa, double mu,
                             double sigma) {
  // The eta = 3/2 measure taken literally:
  //   dnu(J) = Gamma(n+1)^2/(kappa^eta Gamma(eta)) 1F1(1;eta;J/kappa)
  //            e^{-J/kappa} J^{-n+eta-1} (1/kappa+mu-sigma)^{-n}
  //            L_n^{eta-1}[(mu-sigma) J] dJ.
  const double eta = 1.5;
  const double lg_pref = 2.0 * specfun::log_gamma(n + 1.0) -
                         eta * std::log(kappa) - specfun::log_gamma(eta) -
                         n * std::log(1.0 / kappa + mu - sigma);
  auto integrand = [&](double J) {
    const double lg_mag = n * std::log(J) -
                          states::log_rho_discrete(mode, n, kappa) + lg_pref -
                          J / kappa + (-n + eta - 1.0) * std::log(J);
    return std::exp(lg_mag) * specfun::hyp1f1_one(eta, J / kappa) *
           specfun::laguerre(n, eta - 1.0, (mu - sigma) * J);
  };
  return quad::integrate_semiaxis(integrand, 1e-10, 4000);
}

}  // namespace

VerificationReport check_moment_discrete(SpectrumMode mode,
                                         MomentMeasure measure, int n,
                                         double kappa, double mu, double sigma,
                                         const Tolerances& tol) {
  if (n < 0) throw std::domain_error("check_moment_discrete: n must be >= 0");
  Timer timer;
  VerificationReport rep;
  rep.tolerance = tol.moment;
  rep.params = {{"n", double(n)}, {"kappa", kappa}};
  switch (measure) {
    case MomentMeasure::exp_measure:
      rep.check_name = "moment_exp";
      rep.residual = std::abs(moment_exp(n) - 1.0);
      rep.pass = rep.residual <= rep.tolerance;
      break;
    case MomentMeasure::gamma32:
      rep.check_name = "moment_gamma32";
      rep.residual = std::abs(moment_gamma32(mode, n, kappa) - 1.0);
      rep.pass = rep.residual <= rep.tolerance;
      break;
    case MomentMeasure::direct_laguerre:
      rep.check_name = "moment_direct_laguerre";
      rep.params["mu"] = mu;
      rep.params["sigma"] = sigma;
      try {
        rep.residual = std::abs(moment_direct_laguerre(mode, n, kappa, mu, sigma) - 1.0);
        rep.pass = rep.residual <= rep.tolerance;
      } catch (const quad::NonConvergence& e) {
        // the integrand tends to a nonzero level at infinity; record the
        // divergence instead of hiding it
        rep.residual = kInf;
        rep.pass = false;
        rep.params["nonconvergence"] = 1.0;
        rep.params["best_estimate"] = e.best_estimate();
        rep.params["error_bound"] = e.error_bound();
      } catch (const std::overflow_error&) {
        rep.residual = kInf;
        rep.pass = false;
        rep.params["nonconvergence"] = 1.0;
        rep.params["overflow"] = 1.0;
      }
      break;
  }
  rep.runtime_ms = timer.ms();
  return rep;
}

// --- Laplace-transform identity --------------------------------------------

VerificationReport check_laguerre_identity(int n, double nu, double mu,
                                           double sigma, double s,
                                           const Tolerances& tol) {
  if (n < 0) throw std::domain_error("check_laguerre_identity: n must be >= 0");
  if (!(nu > n - 1.0))
    throw std::domain_error("check_laguerre_identity: requires nu > n-1");
  if (!(s > mu))
    throw std::domain_error("check_laguerre_identity: diverges unless s > mu");
  Timer timer;
  const double nfact = specfun::gamma_fn(n + 1.0);
  // Termwise Laplace transform of the Laguerre expansion gives
  //   n! integral t^{nu-n} e^{(mu-s)t} L_n^{nu-n}[a t] dt
  //     = Gamma(nu+1) (s-mu)^{-nu-1} (s-mu-a)^n,
  // so the (s-sigma)^n closed form corresponds to argument a = sigma - mu.
  auto integrand = [&](double t) {
    return nfact * std::pow(t, nu - n) * std::exp((mu - s) * t) *
           specfun::laguerre(n, nu - n, (sigma - mu) * t);
  };
  const double lhs = quad::integrate_semiaxis(integrand, 1e-12);
  const double rhs = std::exp(specfun::log_gamma(nu + 1.0)) *
                     std::pow(s - sigma, n) * std::pow(s - mu, -nu - 1.0);
  VerificationReport rep;
  rep.check_name = "laguerre_identity";
  rep.params = {{"n", double(n)}, {"nu", nu}, {"mu", mu}, {"sigma", sigma}, {"s", s}};
  rep.tolerance = tol.laguerre_identity;
  rep.residual = std::abs(lhs - rhs) / std::abs(rhs);
  rep.pass = rep.residual <= rep.tolerance;
  rep.runtime_ms = timer.ms();
  return rep;
}

// --- discrete resolution of identity ---------------------------------------

VerificationReport check_resolution_discrete(const ResolutionDiscreteConfig& cfg,
                                             const Tolerances& tol) {
  if (cfg.cutoff < 2 || cfg.gl_order < 4 || cfg.fixed_value < 0 ||
      cfg.level_count < 1 || !(cfg.kappa > 0.0))
    throw std::invalid_argument("check_resolution_discrete: bad config");
  Timer timer;
  const bool shifted = cfg.mode == SpectrumMode::shifted;
  const int N = cfg.cutoff, Q = cfg.gl_order;

  // J-rule against the mode's measure: e^{-J} dJ (shifted) or the gamma32
  // density evaluated on the unit-rate alpha = 1/2 rule (unshifted; exact at
  // kappa = 1, genuinely convergent otherwise).
  const quad::QuadratureRule rule =
      quad::gauss_laguerre(Q, shifted ? 0.0 : 0.5);
  std::vector<double> jw(Q);
  if (shifted) {
    jw = rule.weights;
  } else {
    const double norm =
        std::pow(cfg.kappa, 1.5) * specfun::gamma_fn(1.5);
    for (int i = 0; i < Q; ++i)
      jw[i] = rule.weights[i] *
              std::exp(rule.nodes[i] * (1.0 - 1.0 / cfg.kappa)) / norm;
  }

  std::vector<double> amp(size_t(Q) * N);
  for (int i = 0; i < Q; ++i) {
    const double logJ = std::log(rule.nodes[i]);
    for (int n = 0; n < N; ++n)
      amp[size_t(i) * N + n] = std::exp(
          0.5 * (n * logJ - states::log_rho_discrete(cfg.mode, n, cfg.kappa)));
  }

  std::vector<double> freq(N);
  for (int n = 0; n < N; ++n)
    freq[n] = states::phase_frequency(cfg.mode, n, cfg.kappa);
  // Frequency differences are multiples of 1 (shifted) or kappa (unshifted);
  // M >= 2N+1 equispaced nodes over one period average them to exact deltas.
  const int M = 2 * N + 1;
  const double period = shifted ? 2.0 * kPi : 2.0 * kPi / cfg.kappa;
  std::vector<double> phase(M);
  for (int k = 0; k < M; ++k) phase[k] = period * k / M;

  const Eigen::MatrixXcd T_run =
      cfg.parallel ? kernels::projector_phase_sum(amp, jw, freq, phase)
                   : kernels::projector_phase_sum_serial(amp, jw, freq, phase);

  auto sector_scalar = [&](int l) {
    double acc = 0.0;
    for (int i = 0; i < Q; ++i)
      acc += jw[i] *
             std::exp(l * std::log(rule.nodes[i]) -
                      states::log_rho_discrete(cfg.mode, l, cfg.kappa));
    return acc;
  };

  double residual = 0.0;
  double max_offdiag = 0.0;
  const int l_lo = cfg.scope == ResolutionScope::fixed_level ? cfg.fixed_value : 0;
  const int l_hi = cfg.scope == ResolutionScope::fixed_level
                       ? cfg.fixed_value + 1
                       : cfg.level_count;
  for (int l = l_lo; l < l_hi; ++l) {
    const double s_l = sector_scalar(l);
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        const Complex entry = s_l * T_run(a, b);
        const double dev = std::abs(entry - (a == b ? 1.0 : 0.0));
        residual = std::max(residual, dev);
        if (a != b) max_offdiag = std::max(max_offdiag, std::abs(entry));
      }
  }

  VerificationReport rep;
  rep.check_name = shifted ? "resolution_discrete_shifted"
                           : "resolution_discrete_unshifted";
  rep.params = {{"cutoff", double(N)},
                {"gl_order", double(Q)},
                {"kappa", cfg.kappa},
                {"fixed_value", double(cfg.fixed_value)},
                {"phase_nodes", double(M)},
                {"summed_levels",
                 cfg.scope == ResolutionScope::summed_levels ? 1.0 : 0.0},
                {"max_offdiag", max_offdiag}};
  rep.tolerance = shifted ? tol.resolution_shifted : tol.resolution_unshifted;
  rep.residual = residual;
  rep.pass = rep.residual <= rep.tolerance;
  rep.runtime_ms = timer.ms();
  return rep;
}

// --- continuous resolution (windowed delta) --------------------------------

VerificationReport check_resolution_continuous(
    const ResolutionContinuousConfig& cfg, const Tolerances& tol) {
  if (cfg.n_nodes < 16 || !(cfg.eps_max > 0.0) || cfg.windows.empty())
    throw std::invalid_argument("check_resolution_continuous: bad config");
  if (cfg.psi_center - 5.0 * cfg.psi_width < 0.0 ||
      cfg.psi_center + 5.0 * cfg.psi_width > cfg.eps_max)
    throw std::invalid_argument(
        "check_resolution_continuous: test function support leaves the grid");
  for (size_t i = 1; i < cfg.windows.size(); ++i)
    if (!(cfg.windows[i] > cfg.windows[i - 1]))
      throw std::invalid_argument(
          "check_resolution_continuous: windows must be increasing");
  Timer timer;

  const quad::QuadratureRule grid =
      quad::trapezoid(0.0, cfg.eps_max, cfg.n_nodes);
  const int n = cfg.n_nodes;
  std::vector<double> half_lg(n), wpsi(n);
  double norm = 0.0;
  for (int i = 0; i < n; ++i) {
    const double eps = grid.nodes[i];
    half_lg[i] = 0.5 * specfun::log_gamma(eps + 1.0);
    const double d = (eps - cfg.psi_center) / cfg.psi_width;
    const double psi = std::exp(-0.5 * d * d);
    wpsi[i] = grid.weights[i] * psi;
    norm += grid.weights[i] * psi * psi;
  }

  // Kernel ratio rho((e+e')/2)/sqrt(rho(e) rho(e')); on the diagonal the
  // exponent cancels exactly in floating point, giving 1.0 bit-for-bit.
  bool diag_exact = true;
  Eigen::MatrixXd R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double mid = 0.5 * (grid.nodes[i] + grid.nodes[j]);
      const double ratio =
          std::exp(specfun::log_gamma(mid + 1.0) - half_lg[i] - half_lg[j]);
      if (i == j && ratio != 1.0) diag_exact = false;
      R(i, j) = wpsi[i] * wpsi[j] * ratio;
      R(j, i) = R(i, j);
    }

  VerificationReport rep;
  rep.check_name = "resolution_continuous";
  rep.params = {{"eps_max", cfg.eps_max},
                {"n_nodes", double(cfg.n_nodes)},
                {"psi_center", cfg.psi_center},
                {"psi_width", cfg.psi_width},
                {"diag_exact", diag_exact ? 1.0 : 0.0}};
  rep.tolerance = tol.resolution_continuous;

  bool monotone = true;
  double prev = kInf;
  double last = kInf;
  for (double W : cfg.windows) {
    const double form = cfg.parallel
                            ? kernels::window_form(R, grid.nodes, W)
                            : kernels::window_form_serial(R, grid.nodes, W);
    const double res = std::abs(form / norm - 1.0);
    rep.params[fmt_key("res_W", W)] = res;
    if (!(res < prev)) monotone = false;
    prev = res;
    last = res;
  }
  rep.params["monotone"] = monotone ? 1.0 : 0.0;
  rep.residual = last;
  rep.pass = diag_exact && monotone && rep.residual <= rep.tolerance;
  rep.runtime_ms = timer.ms();
  return rep;
}

// --- cross-term elimination ------------------------------------------------

namespace {

// Bohr mean of e^{i sgn freq angle} over the mode's frequency lattice,
// realized as an exact finite average: frequencies are multiples of 1
// (shifted) or kappa/2 (unshifted: E_n = (2n+1) kappa/2), so averaging over
// one period of the fundamental with enough nodes reproduces the mean.
Complex bohr_single_average(SpectrumMode mode, double kappa, double freq,
                            double sgn, int cutoff) {
  const double fundamental =
      mode == SpectrumMode::shifted ? 1.0 : 0.5 * kappa;
  const double period = 2.0 * kPi / fundamental;
  const int M = 2 * (2 * cutoff + 1) + 1;
  Complex acc(0.0, 0.0);
  for (int k = 0; k < M; ++k) {
    const double angle = period * k / M;
    acc += Complex(std::cos(sgn * freq * angle), std::sin(sgn * freq * angle));
  }
  return acc / double(M);
}

}  // namespace

VerificationReport check_cross_term(const CrossTermConfig& cfg,
                                    const Tolerances& tol) {
  if (cfg.cutoff < 2 || cfg.beta_nodes < 4 || cfg.fixed_value < 0)
    throw std::invalid_argument("check_cross_term: bad config");
  Timer timer;
  const states::RhoContinuous rho_c;
  const states::EnvelopeMeasures meas = states::make_envelope_measures(
      cfg.mode, cfg.kappa, rho_c, cfg.theta_window);
  const bool shifted = cfg.mode == SpectrumMode::shifted;
  const int N = cfg.cutoff;

  // Shared eps-grid wide enough for every K node in the K-quadrature.
  const double K_max = 8.0;
  const states::GridSpec gspec{cfg.grid_nodes, 500.0};
  const states::EpsilonGrid grid =
      states::norm_const_continuous(K_max, rho_c, gspec).grid;
  const int n_eps = static_cast<int>(grid.nodes.size());

  // K-quadrature: composite Gauss-Legendre panels on [0, K_max].
  std::vector<double> Kq, Kw;
  {
    const quad::QuadratureRule gl = quad::gauss_legendre(24);
    for (int panel = 0; panel < 4; ++panel) {
      const double a = 2.0 * panel, b = a + 2.0;
      for (int i = 0; i < 24; ++i) {
        Kq.push_back(0.5 * (a + b) + 0.5 * (b - a) * gl.nodes[i]);
        Kw.push_back(0.5 * (b - a) * gl.weights[i]);
      }
    }
  }
  std::vector<double> nrho(Kq.size());
  for (size_t q = 0; q < Kq.size(); ++q)
    nrho[q] = states::norm_const_continuous_on(Kq[q], rho_c, grid);

  // Continuous-side vector v_i = N_f thetapart(eps_i) * K-integral(eps_i).
  std::vector<double> v(n_eps);
  double f_bar_K = 0.0;
  for (size_t q = 0; q < Kq.size(); ++q)
    f_bar_K += Kw[q] * nrho[q] * rho_c.sigma(Kq[q]) *
               std::exp(-0.5 * Kq[q] * Kq[q]);
  for (int i = 0; i < n_eps; ++i) {
    const double eps = grid.nodes[i];
    const double theta_part =
        gl_on([&](double t) { return std::exp(-0.5 * t * t) *
                                     std::cos(eps * t); },
              0.0, cfg.theta_window, 48) /
        kPi;
    double k_part = 0.0;
    for (size_t q = 0; q < Kq.size(); ++q)
      k_part += Kw[q] * std::sqrt(nrho[q]) * rho_c.sigma(Kq[q]) *
                std::exp(-0.5 * Kq[q] * Kq[q]) *
                std::exp(0.5 * (eps * std::log(Kq[q]) - rho_c.log_rho(eps)));
    v[i] = meas.N_f * theta_part * k_part;
  }

  // Discrete-side vector u_n: Bohr averages in gamma and gamma' times the
  // radial integrals against N(J) dnu(J).
  const quad::QuadratureRule jrule =
      quad::gauss_laguerre(cfg.gl_order, shifted ? 0.0 : 0.5);
  const double jnorm =
      shifted ? 1.0 : std::pow(cfg.kappa, 1.5) * specfun::gamma_fn(1.5);
  auto radial = [&](int idx) {
    double acc = 0.0;
    for (int i = 0; i < cfg.gl_order; ++i) {
      const double J = jrule.nodes[i];
      const double half_series =
          std::exp(0.5 * (idx * std::log(J) -
                          states::log_rho_discrete(cfg.mode, idx, cfg.kappa)));
      const double sqrtN =
          std::sqrt(states::norm_const_discrete(cfg.mode, J, cfg.kappa));
      const double fold =
          shifted ? 1.0 : std::exp(J * (1.0 - 1.0 / cfg.kappa)) / jnorm;
      acc += jrule.weights[i] * fold * sqrtN * std::exp(-0.5 * J * J) *
             half_series;
    }
    return acc;
  };
  const double I_fix = radial(cfg.fixed_value);
  const Complex A_fix = bohr_single_average(
      cfg.mode, cfg.kappa,
      states::phase_frequency(cfg.mode, cfg.fixed_value, cfg.kappa), 1.0, N);
  std::vector<Complex> u(N);
  for (int nidx = 0; nidx < N; ++nidx) {
    const Complex A_run = bohr_single_average(
        cfg.mode, cfg.kappa, states::phase_frequency(cfg.mode, nidx, cfg.kappa),
        -1.0, N);
    u[nidx] = meas.N_g * A_fix * A_run * radial(nidx) * I_fix;
  }

  // Off-diagonal block assembled over beta nodes, with and without the
  // e^{i beta} factor whose average eliminates it.
  Eigen::MatrixXcd B_avg = Eigen::MatrixXcd::Zero(N, n_eps);
  Eigen::MatrixXcd B_raw = Eigen::MatrixXcd::Zero(N, n_eps);
  Complex beta_mean(0.0, 0.0);
  for (int k = 0; k < cfg.beta_nodes; ++k) {
    const double beta = 2.0 * kPi * k / cfg.beta_nodes;
    const Complex w(std::cos(beta), std::sin(beta));
    beta_mean += w / double(cfg.beta_nodes);
    for (int nidx = 0; nidx < N; ++nidx)
      for (int i = 0; i < n_eps; ++i) {
        const Complex cell = u[nidx] * v[i] / double(cfg.beta_nodes);
        B_avg(nidx, i) += w * cell;
        B_raw(nidx, i) += cell;
      }
  }

  auto weighted_frobenius = [&](const Eigen::MatrixXcd& B) {
    double acc = 0.0;
    for (int nidx = 0; nidx < N; ++nidx)
      for (int i = 0; i < n_eps; ++i)
        acc += grid.weights[i] * std::norm(B(nidx, i));
    return std::sqrt(acc);
  };
  const double block_avg = weighted_frobenius(B_avg);
  const double block_raw = weighted_frobenius(B_raw);

  const double theta_bar =
      gl_on([](double t) { return std::exp(-0.5 * t * t); }, 0.0,
            cfg.theta_window, 48) /
      kPi;
  const double f_bar = meas.N_f * f_bar_K * theta_bar;
  double g_bar_1d = 0.0;
  for (int i = 0; i < cfg.gl_order; ++i) {
    const double J = jrule.nodes[i];
    const double fold =
        shifted ? 1.0 : std::exp(J * (1.0 - 1.0 / cfg.kappa)) / jnorm;
    g_bar_1d += jrule.weights[i] * fold *
                states::norm_const_discrete(cfg.mode, J, cfg.kappa) *
                std::exp(-0.5 * J * J);
  }
  const double g_bar = meas.N_g * g_bar_1d * g_bar_1d;
  const double necessity = block_raw / (f_bar * g_bar);

  VerificationReport rep;
  rep.check_name = "cross_term";
  rep.params = {{"cutoff", double(N)},
                {"beta_nodes", double(cfg.beta_nodes)},
                {"beta_mean", std::abs(beta_mean)},
                {"block_averaged", block_avg},
                {"block_disabled", block_raw},
                {"f_bar", f_bar},
                {"g_bar", g_bar},
                {"necessity_ratio", necessity}};
  rep.tolerance = tol.crossterm;
  rep.residual = std::max(std::abs(beta_mean), block_avg);
  rep.pass = rep.residual <= rep.tolerance &&
             necessity > tol.crossterm_necessity;
  rep.runtime_ms = timer.ms();
  return rep;
}

// --- temporal stability ----------------------------------------------------

VerificationReport check_temporal_stability(const TemporalConfig& cfg,
                                            const PhysicalParams& p,
                                            const Tolerances& tol) {
  Timer timer;
  const states::RhoContinuous rho_c;
  const states::EnvelopeMeasures meas =
      states::make_envelope_measures(cfg.mode, p.kappa, rho_c);
  states::DiscreteLabels labels = cfg.labels;
  labels.running = cfg.running;
  states::CombinedConfig ccfg;
  ccfg.cutoff = cfg.cutoff;
  const states::CombinedCS base = states::build_combined_cs(
      cfg.mode, labels, cfg.K, cfg.theta, cfg.beta, p.kappa, meas, rho_c, ccfg);
  const double Omega =
      cfg.Omega != 0.0 ? cfg.Omega : p.kappa * (cfg.cutoff + 1);

  VerificationReport rep;
  rep.check_name = "temporal_stability";
  rep.params = {{"cutoff", double(cfg.cutoff)},
                {"Omega", Omega},
                {"running_l", cfg.running == states::RunningIndex::level_l ? 1.0 : 0.0},
                {"unshifted", cfg.mode == SpectrumMode::unshifted ? 1.0 : 0.0}};
  rep.tolerance = tol.temporal;
  double residual = 0.0;
  for (double factor : cfg.t_factors) {
    const double t = factor / p.omega_c;
    const states::CombinedCS shifted_labels =
        states::time_evolve(base, t, Omega, p, rho_c);
    const states::CombinedCS phased =
        states::evolve_coefficientwise(base, t, Omega, p);
    const double dev = states::max_deviation(shifted_labels, phased);
    rep.params[fmt_key("dev_t", factor)] = dev;
    residual = std::max(residual, dev);
  }
  rep.residual = residual;
  rep.pass = rep.residual <= rep.tolerance;
  rep.runtime_ms = timer.ms();
  return rep;
}

// --- commutators -----------------------------------------------------------

VerificationReport check_commutators(int N, const PhysicalParams& p,
                                     const Tolerances& tol) {
  if (N < 3) throw std::invalid_argument("check_commutators: N must be >= 3");
  Timer timer;
  using model::ComplexMatrix;
  using model::LadderKind;
  const ComplexMatrix bp = model::ladder_matrix(LadderKind::b_prime, N, p);
  const ComplexMatrix bpd = model::ladder_matrix(LadderKind::b_prime_dag, N, p);
  const ComplexMatrix b = model::ladder_matrix(LadderKind::b, N, p);
  const ComplexMatrix bd = model::ladder_matrix(LadderKind::b_dag, N, p);

  const ComplexMatrix C1 = model::commutator(bp, bpd);
  double r1 = 0.0;
  for (int i = 0; i < N - 1; ++i)
    for (int j = 0; j < N - 1; ++j)
      r1 = std::max(r1, std::abs(C1(i, j) - Complex(i == j ? 1.0 : 0.0, 0.0)));
  const Complex corner = C1(N - 1, N - 1);
  const bool corner_exact =
      corner.real() == double(1 - N) && corner.imag() == 0.0;

  const double scale = 2.0 * p.m * p.hbar * p.omega_c;
  const ComplexMatrix C2 = model::commutator(b, bd);
  double r2 = 0.0;
  for (int i = 0; i < N - 1; ++i)
    for (int j = 0; j < N - 1; ++j)
      r2 = std::max(r2, std::abs(C2(i, j) / scale -
                                 Complex(i == j ? 1.0 : 0.0, 0.0)));

  // Dimensionless quadratures: [Q, P] = i on the same trustworthy block.
  const double inv_sqrt2 = 0.70710678118654752440;
  const ComplexMatrix Q = inv_sqrt2 * (bp + bpd);
  const ComplexMatrix P = Complex(0.0, 1.0) * inv_sqrt2 * (bpd - bp);
  const ComplexMatrix C3 = model::commutator(Q, P);
  double r3 = 0.0;
  for (int i = 0; i < N - 1; ++i)
    for (int j = 0; j < N - 1; ++j)
      r3 = std::max(r3, std::abs(C3(i, j) - Complex(0.0, i == j ? 1.0 : 0.0)));

  // Tensor-extended operators on distinct factors commute exactly.
  const int L = 4;
  const ComplexMatrix IN = ComplexMatrix::Identity(N, N);
  const ComplexMatrix IL = ComplexMatrix::Identity(L, L);
  const ComplexMatrix H1 = model::kron(model::osc_hamiltonian_matrix(N, p), IL);
  const ComplexMatrix H2 = model::kron(IN, model::osc_hamiltonian_matrix(L, p));
  const double r_tensor = model::commutator(H1, H2).cwiseAbs().maxCoeff();

  VerificationReport rep;
  rep.check_name = "commutators";
  rep.params = {{"N", double(N)},
                {"corner", corner.real()},
                {"corner_exact", corner_exact ? 1.0 : 0.0},
                {"block_bprime", r1},
                {"block_b_scaled", r2},
                {"block_qp", r3},
                {"tensor_cross", r_tensor}};
  rep.tolerance = tol.commutator;
  rep.residual = std::max(r1, r2);
  // the quadrature identity goes through two product layers, so its floor is
  // dimension-scaled round-off rather than the ladder tolerance
  const double qp_bound = 16.0 * N * std::numeric_limits<double>::epsilon();
  rep.params["qp_bound"] = qp_bound;
  rep.pass = rep.residual <= rep.tolerance && r3 <= qp_bound && corner_exact &&
             r_tensor == 0.0;
  rep.runtime_ms = timer.ms();
  return rep;
}

}  // namespace gkcs::verify
