#include "gkcs/states.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gkcs/quadrature.hpp"
#include "gkcs/specfun.hpp"

namespace gkcs::states {

namespace {

constexpr double kTwoPi = 6.283185307179586476925;

Complex unit_phase(double phase) { return {std::cos(phase), std::sin(phase)}; }

double wrap_2pi(double x) {
  double b = std::fmod(x, kTwoPi);
  if (b < 0.0) b += kTwoPi;
  return b;
}

// Fixed-order Gauss-Legendre on [a, b]; used for the finite theta window.
double gl_integrate(const std::function<double(double)>& f, double a, double b,
                    int order = 32) {
  const quad::QuadratureRule rule = quad::gauss_legendre(order);
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < order; ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * acc;
}

}  // namespace

// --- rho weights -----------------------------------------------------------

double log_rho_discrete(SpectrumMode mode, int n, double kappa) {
  if (n < 0) throw std::domain_error("log_rho_discrete: n must be >= 0");
  if (mode == SpectrumMode::shifted) return specfun::log_gamma(n + 1.0);
  if (!(kappa > 0.0)) throw std::domain_error("log_rho_discrete: kappa must be > 0");
  return n * std::log(kappa) + specfun::log_pochhammer(1.5, n);
}

double rho_discrete(SpectrumMode mode, int n, double kappa) {
  const double lr = log_rho_discrete(mode, n, kappa);
  if (lr > 709.0) throw std::overflow_error("rho_discrete: overflow, use log variant");
  return std::exp(lr);
}

double phase_frequency(SpectrumMode mode, int n, double kappa) {
  return mode == SpectrumMode::shifted ? double(n) : kappa * (n + 0.5);
}

double norm_const_discrete(SpectrumMode mode, double J, double kappa) {
  if (J < 0.0) throw std::domain_error("norm_const_discrete: J must be >= 0");
  if (mode == SpectrumMode::shifted) {
    if (J > 700.0) throw std::overflow_error("norm_const_discrete: exp overflow");
    return std::exp(J);
  }
  if (!(kappa > 0.0)) throw std::domain_error("norm_const_discrete: kappa must be > 0");
  return specfun::hyp1f1_one(1.5, J / kappa);
}

PartialNorm norm_const_discrete_partial(SpectrumMode mode, double J,
                                        double kappa, int cutoff) {
  if (J < 0.0) throw std::domain_error("norm_const_discrete_partial: J must be >= 0");
  if (cutoff < 1) throw std::invalid_argument("norm_const_discrete_partial: cutoff < 1");
  if (J == 0.0) return {1.0, 0.0};
  const double logJ = std::log(J);
  double sum = 0.0;
  for (int r = 0; r < cutoff; ++r)
    sum += std::exp(r * logJ - log_rho_discrete(mode, r, kappa));
  // Remainder bound: first dropped term times the geometric ratio bound at
  // the truncation point (term ratios are decreasing in r).
  const double step = mode == SpectrumMode::shifted ? double(cutoff + 1)
                                                    : kappa * (cutoff + 1.5);
  const double ratio = J / step;
  double tail = std::numeric_limits<double>::infinity();
  if (ratio < 1.0) {
    const double first_dropped =
        std::exp(cutoff * logJ - log_rho_discrete(mode, cutoff, kappa));
    tail = first_dropped / (1.0 - ratio);
  }
  return {sum, tail};
}

// --- continuous rho --------------------------------------------------------

double RhoContinuous::log_rho(double eps) const {
  if (eps < 0.0) throw std::domain_error("RhoContinuous: eps must be >= 0");
  return specfun::log_gamma(eps + 1.0);
}

double RhoContinuous::rho(double eps) const { return std::exp(log_rho(eps)); }

double RhoContinuous::sigma(double K) const {
  if (K < 0.0) throw std::domain_error("RhoContinuous: K must be >= 0");
  return std::exp(-K);
}

// --- epsilon grid ----------------------------------------------------------

EpsilonGrid EpsilonGrid::trapezoid_grid(double eps_max, int n_nodes) {
  if (n_nodes < 2) throw std::invalid_argument("EpsilonGrid: need >= 2 nodes");
  if (!(eps_max > 0.0)) throw std::invalid_argument("EpsilonGrid: eps_max <= 0");
  EpsilonGrid g;
  g.eps_max = eps_max;
  const quad::QuadratureRule rule = quad::trapezoid(0.0, eps_max, n_nodes);
  g.nodes = rule.nodes;
  g.weights = rule.weights;
  return g;
}

bool EpsilonGrid::same_as(const EpsilonGrid& other) const {
  return eps_max == other.eps_max && nodes == other.nodes;
}

namespace {

// Extend eps until the integrand K^eps/rho(eps) has dropped 40 e-folds below
// its peak (e^-40 < 1e-17 of the maximum).
double choose_eps_max(double K, const RhoContinuous& rho_c,
                      const GridSpec& spec) {
  const double logK = std::log(K);
  const double step = 0.25;
  double peak = -std::numeric_limits<double>::infinity();
  double peak_pos = 0.0;
  for (double eps = 0.0;; eps += step) {
    if (eps > spec.eps_budget)
      throw quad::NonConvergence(
          "norm_const_continuous: integrand support exceeds grid budget", 0.0,
          std::numeric_limits<double>::infinity());
    const double h = eps * logK - rho_c.log_rho(eps);
    if (h > peak) {
      peak = h;
      peak_pos = eps;
    }
    if (eps > peak_pos && h < peak - 40.0) return std::max(eps, 2.0);
  }
}

}  // namespace

ContinuousNorm norm_const_continuous(double K, const RhoContinuous& rho_c,
                                     const GridSpec& spec) {
  if (!(K > 0.0)) throw std::domain_error("norm_const_continuous: K must be > 0");
  const double eps_max = choose_eps_max(K, rho_c, spec);
  EpsilonGrid grid = EpsilonGrid::trapezoid_grid(eps_max, spec.n_nodes);
  return {norm_const_continuous_on(K, rho_c, grid), std::move(grid)};
}

double norm_const_continuous_on(double K, const RhoContinuous& rho_c,
                                const EpsilonGrid& grid) {
  if (!(K > 0.0)) throw std::domain_error("norm_const_continuous_on: K must be > 0");
  const double logK = std::log(K);
  double acc = 0.0;
  for (size_t i = 0; i < grid.nodes.size(); ++i)
    acc += grid.weights[i] *
           std::exp(grid.nodes[i] * logK - rho_c.log_rho(grid.nodes[i]));
  return acc;
}

// --- discrete sector -------------------------------------------------------

double DiscreteCS::norm_sq() const {
  double acc = 0.0;
  for (const Complex& c : coeffs) acc += std::norm(c);
  return acc;
}

DiscreteCS build_discrete_cs(SpectrumMode mode, const DiscreteLabels& labels,
                             int cutoff, double kappa, double tail_tol) {
  if (labels.J < 0.0 || labels.Jprime < 0.0)
    throw std::domain_error("build_discrete_cs: J and J' must be >= 0");
  if (labels.fixed_value < 0)
    throw std::domain_error("build_discrete_cs: fixed_value must be >= 0");
  if (cutoff < 1) throw std::invalid_argument("build_discrete_cs: cutoff < 1");
  if (!(tail_tol > 0.0)) throw std::invalid_argument("build_discrete_cs: tail_tol <= 0");

  const bool run_n = labels.running == RunningIndex::level_n;
  const double J_run = run_n ? labels.J : labels.Jprime;
  const double a_run = run_n ? labels.gamma : labels.gamma_prime;
  const double J_fix = run_n ? labels.Jprime : labels.J;
  const double a_fix = run_n ? labels.gamma_prime : labels.gamma;
  const int fixed = labels.fixed_value;

  DiscreteCS cs;
  cs.mode = mode;
  cs.kappa = kappa;
  cs.labels = labels;
  cs.coeffs.assign(cutoff, Complex(0.0, 0.0));
  cs.tail_bound = 0.0;

  if (J_fix == 0.0 && fixed > 0) return cs;  // prefactor kills the state

  double log_pref = -0.5 * (std::log(norm_const_discrete(mode, labels.J, kappa)) +
                            std::log(norm_const_discrete(mode, labels.Jprime, kappa)));
  if (fixed > 0)
    log_pref += 0.5 * (fixed * std::log(J_fix) -
                       log_rho_discrete(mode, fixed, kappa));
  const double phase_fix = phase_frequency(mode, fixed, kappa) * a_fix;

  if (J_run == 0.0) {
    cs.coeffs[0] = std::exp(log_pref) * unit_phase(phase_fix);
    return cs;
  }

  const double logJr = std::log(J_run);
  for (int r = 0; r < cutoff; ++r) {
    const double mag =
        std::exp(log_pref + 0.5 * (r * logJr - log_rho_discrete(mode, r, kappa)));
    const double phase = phase_fix - phase_frequency(mode, r, kappa) * a_run;
    cs.coeffs[r] = mag * unit_phase(phase);
  }

  const PartialNorm pn = norm_const_discrete_partial(mode, J_run, kappa, cutoff);
  const double frac = pn.tail / norm_const_discrete(mode, J_run, kappa);
  if (!(frac <= tail_tol)) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g above tolerance %.3g", frac, tail_tol);
    throw CutoffError(
        std::string("build_discrete_cs: running-series tail fraction ") + buf +
        "; raise cutoff");
  }
  cs.tail_bound = frac;
  return cs;
}

// --- continuous sector -----------------------------------------------------

double ContinuousCS::norm_sq() const {
  double acc = 0.0;
  for (size_t i = 0; i < values.size(); ++i)
    acc += grid.weights[i] * std::norm(values[i]);
  return acc;
}

ContinuousCS build_continuous_cs_on(double K, double theta,
                                    const RhoContinuous& rho_c,
                                    const EpsilonGrid& grid, PhaseSign sign) {
  if (!(K > 0.0)) throw std::domain_error("build_continuous_cs: K must be > 0");
  ContinuousCS cs;
  cs.K = K;
  cs.theta = theta;
  cs.sign = sign;
  cs.grid = grid;
  cs.norm_const = norm_const_continuous_on(K, rho_c, grid);
  cs.values.resize(grid.nodes.size());
  const double logK = std::log(K);
  const double half_log_norm = 0.5 * std::log(cs.norm_const);
  const double sgn = sign == PhaseSign::negative ? -1.0 : 1.0;
  for (size_t i = 0; i < grid.nodes.size(); ++i) {
    const double eps = grid.nodes[i];
    const double mag =
        std::exp(0.5 * (eps * logK - rho_c.log_rho(eps)) - half_log_norm);
    cs.values[i] = mag * unit_phase(sgn * eps * theta);
  }
  return cs;
}

ContinuousCS build_continuous_cs(double K, double theta,
                                 const RhoContinuous& rho_c,
                                 const GridSpec& spec, PhaseSign sign) {
  const ContinuousNorm nc = norm_const_continuous(K, rho_c, spec);
  return build_continuous_cs_on(K, theta, rho_c, nc.grid, sign);
}

// --- envelopes -------------------------------------------------------------

namespace {

// Density of N(J) dnu(J) against dJ for the mode's moment measure.
double discrete_measure_density(SpectrumMode mode, double kappa, double J) {
  if (mode == SpectrumMode::shifted) return 1.0;  // e^J * e^-J
  // 1F1(1;3/2;J/kappa) * J^{1/2} e^{-J/kappa} / (kappa^{3/2} Gamma(3/2))
  const double g32 = specfun::gamma_fn(1.5);
  return specfun::hyp1f1_one(1.5, J / kappa) * std::sqrt(J) *
         std::exp(-J / kappa) / (std::pow(kappa, 1.5) * g32);
}

}  // namespace

EnvelopeMeasures make_envelope_measures(SpectrumMode mode, double kappa,
                                        const RhoContinuous& rho_c,
                                        double theta_window) {
  if (!(theta_window > 0.0))
    throw std::invalid_argument("make_envelope_measures: theta_window <= 0");
  EnvelopeMeasures meas;
  meas.mode = mode;
  meas.kappa = kappa;
  meas.theta_window = theta_window;

  const double I_g = quad::integrate_semiaxis(
      [&](double J) {
        return std::exp(-J * J) * discrete_measure_density(mode, kappa, J);
      },
      1e-12);
  meas.N_g = 1.0 / I_g;

  // e^{-K^2} truncates the K integral below 1e-27 by K=8, so one eps-grid
  // sized for K=8 serves every node; a fresh adaptive grid per node would
  // cost a quadrature per integrand evaluation
  const GridSpec spec;
  const EpsilonGrid shared = norm_const_continuous(8.0, rho_c, spec).grid;
  double I_K = 0.0;
  {
    const quad::QuadratureRule gl = quad::gauss_legendre(24);
    for (int panel = 0; panel < 4; ++panel) {
      const double a = 2.0 * panel, half = 1.0;
      for (int i = 0; i < 24; ++i) {
        const double K = a + half + half * gl.nodes[i];
        I_K += half * gl.weights[i] * std::exp(-K * K) *
               norm_const_continuous_on(K, rho_c, shared) * rho_c.sigma(K);
      }
    }
  }
  const double I_theta =
      2.0 *
      gl_integrate([](double t) { return std::exp(-t * t); }, 0.0, theta_window) /
      kTwoPi;
  meas.N_f = 1.0 / std::sqrt(I_K * I_theta);
  return meas;
}

std::pair<double, double> envelopes(double K, double theta, double J,
                                    double gamma, double Jprime,
                                    double gamma_prime,
                                    const EnvelopeMeasures& meas) {
  (void)gamma;
  (void)gamma_prime;  // Gaussian envelopes depend on the radial labels only
  const double f = meas.N_f * std::exp(-0.5 * (K * K + theta * theta));
  const double g = meas.N_g * std::exp(-0.5 * (J * J + Jprime * Jprime));
  return {f, g};
}

// --- combined state --------------------------------------------------------

double CombinedCS::norm_sq() const {
  return f_value * f_value * discrete.norm_sq() +
         g_value * g_value * continuous.norm_sq();
}

CombinedCS build_combined_cs(SpectrumMode mode, const DiscreteLabels& labels,
                             double K, double theta, double beta, double kappa,
                             const EnvelopeMeasures& meas,
                             const RhoContinuous& rho_c,
                             const CombinedConfig& config) {
  if (!(beta >= 0.0 && beta < kTwoPi))
    throw std::domain_error("build_combined_cs: beta must lie in [0, 2pi)");
  CombinedCS cs;
  cs.discrete = build_discrete_cs(mode, labels, config.cutoff, kappa,
                                  config.tail_tol);
  cs.continuous = config.fixed_grid
                      ? build_continuous_cs_on(K, theta, rho_c,
                                               *config.fixed_grid, config.sign)
                      : build_continuous_cs(K, theta, rho_c, config.grid,
                                            config.sign);
  cs.beta = beta;
  const auto [f, g] = envelopes(K, theta, labels.J, labels.gamma, labels.Jprime,
                                labels.gamma_prime, meas);
  cs.f_value = f;
  cs.g_value = g;
  return cs;
}

// --- overlaps --------------------------------------------------------------

Complex overlap(const DiscreteCS& a, const DiscreteCS& b) {
  if (a.mode != b.mode || a.kappa != b.kappa)
    throw std::invalid_argument("overlap: incompatible discrete bases");
  if (a.labels.running == b.labels.running) {
    if (a.coeffs.size() != b.coeffs.size())
      throw std::invalid_argument("overlap: cutoff mismatch");
    if (a.labels.fixed_value != b.labels.fixed_value)
      return {0.0, 0.0};  // distinct fixed sectors are orthogonal
    Complex acc(0.0, 0.0);
    for (size_t i = 0; i < a.coeffs.size(); ++i)
      acc += std::conj(a.coeffs[i]) * b.coeffs[i];
    return acc;
  }
  // Mixed running conventions share exactly one tensor basis cell.
  const size_t ia = static_cast<size_t>(b.labels.fixed_value);
  const size_t ib = static_cast<size_t>(a.labels.fixed_value);
  if (ia >= a.coeffs.size() || ib >= b.coeffs.size()) return {0.0, 0.0};
  return std::conj(a.coeffs[ia]) * b.coeffs[ib];
}

Complex overlap(const ContinuousCS& a, const ContinuousCS& b) {
  if (a.sign != b.sign)
    throw std::invalid_argument("overlap: mixed continuous phase conventions");
  if (!a.grid.same_as(b.grid))
    throw std::invalid_argument("overlap: continuous grids differ");
  Complex acc(0.0, 0.0);
  for (size_t i = 0; i < a.values.size(); ++i)
    acc += a.grid.weights[i] * std::conj(a.values[i]) * b.values[i];
  return acc;
}

Complex overlap(const CombinedCS& a, const CombinedCS& b) {
  const Complex d = overlap(a.discrete, b.discrete);
  const Complex c = overlap(a.continuous, b.continuous);
  return a.f_value * b.f_value * d +
         a.g_value * b.g_value * unit_phase(a.beta - b.beta) * c;
}

// --- time evolution --------------------------------------------------------

CombinedCS time_evolve(const CombinedCS& cs, double t, double Omega,
                       const PhysicalParams& p, const RhoContinuous& rho_c) {
  const SpectrumMode mode = cs.discrete.mode;
  const double delta_run =
      mode == SpectrumMode::shifted ? p.omega_c * t : t / p.hbar;
  DiscreteLabels labels = cs.discrete.labels;
  if (labels.running == RunningIndex::level_n)
    labels.gamma += delta_run;
  else
    labels.gamma_prime += delta_run;

  const double theta_shift =
      (cs.continuous.sign == PhaseSign::negative ? 1.0 : -1.0) * p.omega_c * t;

  CombinedCS out;
  out.discrete = build_discrete_cs(
      mode, labels, static_cast<int>(cs.discrete.coeffs.size()), cs.discrete.kappa,
      std::max(1e-12, cs.discrete.tail_bound * (1.0 + 1e-9) +
                          std::numeric_limits<double>::min()));
  out.continuous =
      build_continuous_cs_on(cs.continuous.K, cs.continuous.theta + theta_shift,
                             rho_c, cs.continuous.grid, cs.continuous.sign);
  out.beta = wrap_2pi(cs.beta + Omega * t / p.hbar);
  out.f_value = cs.f_value;  // envelopes ride along unchanged
  out.g_value = cs.g_value;
  return out;
}

CombinedCS evolve_coefficientwise(const CombinedCS& cs, double t, double Omega,
                                  const PhysicalParams& p) {
  CombinedCS out = cs;
  const SpectrumMode mode = cs.discrete.mode;
  const double kappa = cs.discrete.kappa;
  for (size_t r = 0; r < out.discrete.coeffs.size(); ++r) {
    const double energy = mode == SpectrumMode::shifted
                              ? kappa * double(r)
                              : kappa * (double(r) + 0.5);
    out.discrete.coeffs[r] *= unit_phase(-energy * t / p.hbar);
  }
  for (size_t i = 0; i < out.continuous.values.size(); ++i) {
    const double energy = kappa * out.continuous.grid.nodes[i] + Omega;
    out.continuous.values[i] *= unit_phase(-energy * t / p.hbar);
  }
  return out;  // labels and beta left stale by design
}

double max_deviation(const CombinedCS& a, const CombinedCS& b) {
  if (a.discrete.coeffs.size() != b.discrete.coeffs.size() ||
      !a.continuous.grid.same_as(b.continuous.grid))
    throw std::invalid_argument("max_deviation: states not comparable");
  double dev = 0.0;
  for (size_t i = 0; i < a.discrete.coeffs.size(); ++i)
    dev = std::max(dev, std::abs(a.f_value * a.discrete.coeffs[i] -
                                 b.f_value * b.discrete.coeffs[i]));
  const Complex pa = unit_phase(-a.beta) * a.g_value;
  const Complex pb = unit_phase(-b.beta) * b.g_value;
  for (size_t i = 0; i < a.continuous.values.size(); ++i)
    dev = std::max(dev, std::abs(pa * a.continuous.values[i] -
                                 pb * b.continuous.values[i]));
  return dev;
}

}  // namespace gkcs::states
