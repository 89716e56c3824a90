// Acceptance gate: every release criterion exercised end to end, one
// [PASS]/[FAIL] line each, wall-clock budget included in the verdict.
// Exit code is the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "gkcs/model.hpp"
#include "gkcs/specfun.hpp"
#include "gkcs/states.hpp"
#include "gkcs/verify.hpp"

using namespace gkcs;
using model::SpectrumMode;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

const verify::Tolerances tol{};
const model::PhysicalParams unitp = model::derive_params(1, 1, 1, 1, 1, 1);

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

Verdict c1_commutators() {
  const auto rep = verify::check_commutators(40, unitp, tol);
  return {rep.pass, "residual=" + fmt(rep.residual) +
                        " corner_exact=" + fmt(rep.params.at("corner_exact")) +
                        " tensor=" + fmt(rep.params.at("tensor_cross")) +
                        " tol=" + fmt(tol.commutator)};
}

Verdict c2_moments() {
  double worst = 0.0;
  bool ok = true;
  for (int n = 0; n <= 40; ++n) {
    const auto e = verify::check_moment_discrete(
        SpectrumMode::shifted, verify::MomentMeasure::exp_measure, n, 1.0, 0, 0,
        tol);
    ok = ok && e.pass;
    worst = std::max(worst, e.residual);
    for (double kap : {0.5, 1.0, 2.0}) {
      const auto g = verify::check_moment_discrete(
          SpectrumMode::unshifted, verify::MomentMeasure::gamma32, n, kap, 0, 0,
          tol);
      ok = ok && g.pass;
      worst = std::max(worst, g.residual);
    }
  }
  return {ok && worst <= 1e-10,
          "max residual=" + fmt(worst) + " over n=0..40, kappa={0.5,1,2}"};
}

Verdict c3_confluent() {
  double worst = 0.0;
  for (double x : {0.1, 1.0, 5.0, 20.0, 40.0}) {
    const double oracle =
        std::sqrt(M_PI) / (2.0 * std::sqrt(x)) * std::exp(x) *
        std::erf(std::sqrt(x));
    const double got = specfun::hyp1f1_one(1.5, x);
    worst = std::max(worst, std::abs(got - oracle) / oracle);
  }
  return {worst <= 1e-10, "max rel err=" + fmt(worst) + " vs erf closed form"};
}

Verdict c4_laguerre() {
  double worst = 0.0;
  bool ok = true;
  for (int n : {0, 2, 5})
    for (double mu : {0.0, 0.15, 0.3})
      for (double sigma : {-0.2, 0.0, mu}) {
        const auto rep = verify::check_laguerre_identity(
            n, n + 0.5, mu, sigma, 1.0 + mu, tol);
        ok = ok && rep.pass;
        worst = std::max(worst, rep.residual);
      }
  return {ok && worst <= 1e-7,
          "max residual=" + fmt(worst) + " on the 27-point grid"};
}

Verdict c5_resolution_discrete() {
  verify::ResolutionDiscreteConfig cfg;
  const auto sh = verify::check_resolution_discrete(cfg, tol);
  cfg.mode = SpectrumMode::unshifted;
  const auto un = verify::check_resolution_discrete(cfg, tol);
  cfg.kappa = 4.0;
  double prev = 0.0, last = 0.0;
  bool halves = true;
  for (int order : {32, 64, 128}) {
    cfg.gl_order = order;
    last = verify::check_resolution_discrete(cfg, tol).residual;
    if (order > 32) halves = halves && last <= 0.5 * prev;
    prev = last;
  }
  const bool ok = sh.pass && sh.residual <= 1e-9 && un.pass &&
                  un.residual <= 1e-8 && halves && last <= 1e-8;
  return {ok, "shifted=" + fmt(sh.residual) + " unshifted=" + fmt(un.residual) +
                  " cert(kappa=4)=" + fmt(last) +
                  (halves ? " halves-or-better" : " CONVERGENCE STALL")};
}

Verdict c6_resolution_continuous() {
  verify::ResolutionContinuousConfig cfg;
  const auto rep = verify::check_resolution_continuous(cfg, tol);
  return {rep.pass && rep.residual < 1e-2,
          "diag_exact=" + fmt(rep.params.at("diag_exact")) +
              " final residual=" + fmt(rep.residual) + " (monotone over W=" +
              fmt(cfg.windows.front()) + ".." + fmt(cfg.windows.back()) + ")"};
}

Verdict c7_crossterm() {
  verify::CrossTermConfig cfg;
  const auto rep = verify::check_cross_term(cfg, tol);
  return {rep.pass, "averaged block=" + fmt(rep.residual) +
                        " necessity ratio=" +
                        fmt(rep.params.at("necessity_ratio")) + " (need > " +
                        fmt(tol.crossterm_necessity) + ")"};
}

Verdict c8_temporal() {
  double worst = 0.0;
  bool ok = true;
  for (auto mode : {SpectrumMode::shifted, SpectrumMode::unshifted})
    for (auto running :
         {states::RunningIndex::level_n, states::RunningIndex::level_l}) {
      verify::TemporalConfig cfg;
      cfg.mode = mode;
      cfg.running = running;
      const auto rep = verify::check_temporal_stability(cfg, unitp, tol);
      ok = ok && rep.pass;
      worst = std::max(worst, rep.residual);
    }
  return {ok && worst <= 1e-12,
          "max deviation=" + fmt(worst) + " over 4 label conventions, t/T={0.1,1,10}"};
}

Verdict c9_continuity() {
  const states::RhoContinuous rho_c;
  const states::EnvelopeMeasures meas =
      states::make_envelope_measures(SpectrumMode::shifted, 1.0, rho_c);
  states::DiscreteLabels lab;
  lab.J = 1.0;
  lab.gamma = 0.4;
  lab.Jprime = 1.5;
  lab.gamma_prime = -0.3;
  const states::CombinedCS base = states::build_combined_cs(
      SpectrumMode::shifted, lab, 1.2, 0.7, 1.1, 1.0, meas, rho_c);

  const auto dist_at = [&](double delta) {
    const double d = delta / std::sqrt(6.0);  // unit step across all six labels
    states::DiscreteLabels pl = lab;
    pl.J += d;
    pl.gamma += d;
    pl.Jprime += d;
    pl.gamma_prime += d;
    states::CombinedConfig cfg;
    cfg.fixed_grid = &base.continuous.grid;
    const states::CombinedCS p = states::build_combined_cs(
        SpectrumMode::shifted, pl, 1.2 + d, 0.7 + d, 1.1, 1.0, meas, rho_c, cfg);
    double acc = 0.0;
    for (size_t n = 0; n < base.discrete.coeffs.size(); ++n)
      acc += std::norm(base.f_value * base.discrete.coeffs[n] -
                       p.f_value * p.discrete.coeffs[n]);
    for (size_t i = 0; i < base.continuous.values.size(); ++i)
      acc += base.continuous.grid.weights[i] *
             std::norm(base.g_value * base.continuous.values[i] -
                       p.g_value * p.continuous.values[i]);
    return std::sqrt(acc);
  };

  double delta = 0.25;
  double prev = dist_at(delta);
  bool decreasing = true;
  for (int i = 0; i < 20; ++i) {
    delta *= 0.5;
    const double cur = dist_at(delta);
    decreasing = decreasing && cur < prev;
    prev = cur;
  }
  return {decreasing && prev < 1e-6,
          std::string(decreasing ? "20 halvings all decrease" : "NON-MONOTONE") +
              ", final distance=" + fmt(prev)};
}

Verdict c10_poisson() {
  double worst = 0.0;
  for (double J : {0.5, 2.0, 4.0}) {
    const int cutoff = int(J + 8.0 * std::sqrt(J) + 25.0);
    states::DiscreteLabels lab;
    lab.J = J;
    lab.gamma = 0.3;
    lab.Jprime = 0.0;
    lab.fixed_value = 0;
    const states::DiscreteCS cs =
        states::build_discrete_cs(SpectrumMode::shifted, lab, cutoff, 1.0);
    double wsum = 0.0, nsum = 0.0;
    for (size_t n = 0; n < cs.coeffs.size(); ++n) {
      wsum += std::norm(cs.coeffs[n]);
      nsum += double(n) * std::norm(cs.coeffs[n]);
    }
    worst = std::max(worst, std::abs(nsum / wsum - J));
  }
  return {worst <= 1e-9, "max |<n> - J|=" + fmt(worst) + " for J={0.5,2,4}"};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    double budget_s;
    std::function<Verdict()> fn;
  };
  const std::vector<Criterion> gate = {
      {"C1 ladder commutators exact to truncation", 1.0, c1_commutators},
      {"C2 discrete measures close their moments", 1.0, c2_moments},
      {"C3 confluent function against erf oracle", 1.0, c3_confluent},
      {"C4 Laguerre Laplace-transform identity", 10.0, c4_laguerre},
      {"C5 discrete resolution of identity", 30.0, c5_resolution_discrete},
      {"C6 continuous resolution window limit", 30.0, c6_resolution_continuous},
      {"C7 cross-term averages away yet matters", 5.0, c7_crossterm},
      {"C8 temporal stability of the combined state", 1.0, c8_temporal},
      {"C9 label continuity under halved steps", 5.0, c9_continuity},
      {"C10 Poisson mean matches the action label", 1.0, c10_poisson},
  };

  int failures = 0;
  for (const auto& c : gate) {
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = c.fn();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
    const bool in_budget = secs < c.budget_s;
    const bool pass = v.pass && in_budget;
    if (!pass) ++failures;
    std::printf("[%s] %s: %s (%.2fs, budget %.0fs)%s\n", pass ? "PASS" : "FAIL",
                c.name, v.detail.c_str(), secs, c.budget_s,
                in_budget ? "" : " OVER BUDGET");
  }
  if (failures)
    std::printf("%d of %zu criteria failed\n", failures, gate.size());
  else
    std::printf("all %zu criteria passed\n", gate.size());
  return failures;
}
