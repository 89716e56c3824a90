#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "gkcs/verify.hpp"

using namespace gkcs;
using namespace gkcs::verify;
using gkcs::model::SpectrumMode;

namespace {
const Tolerances tol{};
const model::PhysicalParams unitp = model::derive_params(1, 1, 1, 1, 1, 1);
}  // namespace

TEST_CASE("moment checks pass for both closed measures") {
  for (int n : {0, 3, 40}) {
    CAPTURE(n);
    const auto exp_rep = check_moment_discrete(
        SpectrumMode::shifted, MomentMeasure::exp_measure, n, 1.0, 0, 0, tol);
    CHECK(exp_rep.pass);
    CHECK(exp_rep.residual <= 1e-10);
    for (double kap : {0.5, 2.0}) {
      const auto g_rep = check_moment_discrete(
          SpectrumMode::unshifted, MomentMeasure::gamma32, n, kap, 0, 0, tol);
      CAPTURE(kap);
      CHECK(g_rep.pass);
      CHECK(g_rep.residual <= 1e-10);
    }
  }
}

TEST_CASE("divergent measure is reported failed, never silently patched") {
  const auto rep = check_moment_discrete(SpectrumMode::unshifted,
                                         MomentMeasure::direct_laguerre, 1, 1.0,
                                         0, 0, tol);
  CHECK_FALSE(rep.pass);
  CHECK(std::isinf(rep.residual));
  REQUIRE(rep.params.count("nonconvergence") == 1);
  CHECK(rep.params.at("nonconvergence") == 1.0);
  // divergence surfaces either as a budget stall with its best estimate or as
  // integrand overflow; both must be named, neither patched over
  const bool stalled = rep.params.count("best_estimate") == 1;
  const bool overflowed = rep.params.count("overflow") == 1;
  CHECK((stalled || overflowed));
  if (stalled) CHECK(rep.params.at("best_estimate") > 0.0);
}

TEST_CASE("Laplace identity including the sigma = mu collapse") {
  // sigma = mu kills the polynomial argument: the integral reduces to a pure
  // gamma moment and must agree just as tightly
  for (double sigma : {0.0, 0.15}) {
    const auto rep = check_laguerre_identity(2, 2.5, 0.15, sigma, 1.15, tol);
    CAPTURE(sigma);
    CHECK(rep.pass);
    CHECK(rep.residual <= 1e-9);
  }
  CHECK_THROWS_AS(check_laguerre_identity(2, 0.5, 0.0, 0.0, 1.0, tol),
                  std::domain_error);  // nu <= n-1
  CHECK_THROWS_AS(check_laguerre_identity(1, 1.5, 2.0, 0.0, 1.0, tol),
                  std::domain_error);  // s <= mu
}

TEST_CASE("discrete resolution passes in all scopes") {
  ResolutionDiscreteConfig cfg;
  auto rep = check_resolution_discrete(cfg, tol);
  CHECK(rep.pass);
  CHECK(rep.residual <= tol.resolution_shifted);
  // the angular rule only has to separate the cutoff many frequencies
  CHECK(rep.params.at("phase_nodes") == 2 * cfg.cutoff + 1);

  cfg.mode = SpectrumMode::unshifted;
  rep = check_resolution_discrete(cfg, tol);
  CHECK(rep.pass);
  CHECK(rep.residual <= tol.resolution_unshifted);

  cfg.scope = ResolutionScope::summed_levels;
  rep = check_resolution_discrete(cfg, tol);
  CHECK(rep.pass);
}

TEST_CASE("resolution residual halves or better as the rule doubles") {
  // the convergence certificate needs a kappa where the unit-rate fold decays
  // slowly enough that order 32 sits above the rounding floor
  ResolutionDiscreteConfig cfg;
  cfg.mode = SpectrumMode::unshifted;
  cfg.kappa = 4.0;
  std::vector<double> res;
  for (int order : {32, 64, 128}) {
    cfg.gl_order = order;
    res.push_back(check_resolution_discrete(cfg, tol).residual);
  }
  CHECK(res[1] <= 0.5 * res[0]);
  CHECK(res[2] <= 0.5 * res[1]);
  CHECK(res[2] <= 1e-8);
}

TEST_CASE("continuous resolution: exact diagonal and monotone window tail") {
  ResolutionContinuousConfig cfg;
  const auto rep = check_resolution_continuous(cfg, tol);
  CHECK(rep.pass);
  CHECK(rep.params.at("diag_exact") == 1.0);
  double prev = std::numeric_limits<double>::infinity();
  for (double W : cfg.windows) {
    const double r = rep.params.at("res_W" + std::to_string(int(W)));
    CHECK(r < prev);
    prev = r;
  }
  CHECK(prev <= tol.resolution_continuous);
  // serial path computes the same residuals
  cfg.parallel = false;
  const auto serial = check_resolution_continuous(cfg, tol);
  CHECK(serial.residual == rep.residual);
}

TEST_CASE("cross-term block averages away and matters when it does not") {
  CrossTermConfig cfg;
  const auto rep = check_cross_term(cfg, tol);
  CHECK(rep.pass);
  CHECK(rep.residual <= tol.crossterm);
  CHECK(rep.params.at("necessity_ratio") > tol.crossterm_necessity);
  CHECK(rep.params.at("block_disabled") >
        tol.crossterm_necessity * rep.params.at("f_bar") *
            rep.params.at("g_bar"));
}

TEST_CASE("temporal stability holds for every label convention") {
  for (auto mode : {SpectrumMode::shifted, SpectrumMode::unshifted})
    for (auto running :
         {states::RunningIndex::level_n, states::RunningIndex::level_l}) {
      TemporalConfig cfg;
      cfg.mode = mode;
      cfg.running = running;
      const auto rep = check_temporal_stability(cfg, unitp, tol);
      CAPTURE(int(mode));
      CAPTURE(int(running));
      CHECK(rep.pass);
      CHECK(rep.residual <= tol.temporal);
    }
}

TEST_CASE("commutator certificate at the acceptance dimension") {
  const auto rep = check_commutators(40, unitp, tol);
  CHECK(rep.pass);
  CHECK(rep.residual <= tol.commutator);
  CHECK(rep.params.at("corner_exact") == 1.0);
  CHECK(rep.params.at("tensor_cross") == 0.0);
}

TEST_CASE("checks are deterministic across repeated runs") {
  ResolutionDiscreteConfig rcfg;
  CHECK(check_resolution_discrete(rcfg, tol).residual ==
        check_resolution_discrete(rcfg, tol).residual);
  CrossTermConfig ccfg;
  CHECK(check_cross_term(ccfg, tol).residual ==
        check_cross_term(ccfg, tol).residual);
}

TEST_CASE("tolerance overrides are validated by name and sign") {
  Tolerances t;
  set_tolerance(t, "moment", 1e-8);
  CHECK(t.moment == 1e-8);
  set_tolerance(t, "crossterm_necessity", 0.25);
  CHECK(t.crossterm_necessity == 0.25);
  CHECK_THROWS_AS(set_tolerance(t, "bogus", 1.0), std::invalid_argument);
  CHECK_THROWS_AS(set_tolerance(t, "moment", -1.0), std::invalid_argument);
  const auto names = tolerance_names();
  CHECK(names.size() == 9);
  CHECK(std::count(names.begin(), names.end(), "resolution_continuous") == 1);
}
