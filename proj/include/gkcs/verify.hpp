#pragma once

#include <map>
#include <string>
#include <vector>

#include "gkcs/model.hpp"
#include "gkcs/states.hpp"

// Executable certificates: each check assembles a numerical statement of one
// structural property (moment closure, resolution of identity, cross-term
// cancellation, temporal stability, commutator truncation) and reports the
// measured residual against a stated tolerance.

namespace gkcs::verify {

struct VerificationReport {
  std::string check_name;
  std::map<std::string, double> params;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;       // residual <= tolerance and any exactness side conditions
  double runtime_ms = 0.0; // console diagnostics only, not serialized
};

struct Tolerances {
  double commutator = 1e-14;
  double moment = 1e-10;
  double laguerre_identity = 1e-7;
  double resolution_shifted = 1e-9;
  double resolution_unshifted = 1e-8;
  double resolution_continuous = 1e-2;
  double crossterm = 1e-12;
  double crossterm_necessity = 0.1;  // disabled block must exceed this * f_bar*g_bar
  double temporal = 1e-12;
};

// Named override used by the CLI --tol NAME=VAL; throws on unknown names.
void set_tolerance(Tolerances& tol, const std::string& name, double value);
std::vector<std::string> tolerance_names();

enum class MomentMeasure { exp_measure, gamma32, direct_laguerre };
enum class ResolutionScope { fixed_level, summed_levels };

// |integral J^n/rho(n) dnu(J) - 1| for the chosen measure.  (mu, sigma) feed
// only the direct_laguerre variant.  A non-convergent quadrature is reported
// as a failed check carrying the best estimate, not thrown.
VerificationReport check_moment_discrete(model::SpectrumMode mode,
                                         MomentMeasure measure, int n,
                                         double kappa, double mu, double sigma,
                                         const Tolerances& tol);

// Laplace-transform identity
//   n! integral t^{nu-n} e^{mu t} L_n^{nu-n}[(sigma-mu) t] e^{-st} dt
//     = Gamma(nu+1) (s-sigma)^n (s-mu)^{-nu-1},
// adaptive quadrature against the closed form.  Requires nu > n-1, s > mu.
VerificationReport check_laguerre_identity(int n, double nu, double mu,
                                           double sigma, double s,
                                           const Tolerances& tol);

struct ResolutionDiscreteConfig {
  model::SpectrumMode mode = model::SpectrumMode::shifted;
  int fixed_value = 0;  // the non-running index labelling the sector
  int cutoff = 20;
  int gl_order = 64;
  double kappa = 1.0;
  ResolutionScope scope = ResolutionScope::fixed_level;
  int level_count = 3;  // sectors covered when scope = summed_levels
  bool parallel = true;
};
VerificationReport check_resolution_discrete(const ResolutionDiscreteConfig& cfg,
                                             const Tolerances& tol);

struct ResolutionContinuousConfig {
  double eps_max = 6.0;
  int n_nodes = 1500;
  double psi_center = 3.0;
  double psi_width = 0.5;
  std::vector<double> windows = {1.0, 2.0, 4.0, 8.0};
  bool parallel = true;
};
VerificationReport check_resolution_continuous(
    const ResolutionContinuousConfig& cfg, const Tolerances& tol);

struct CrossTermConfig {
  model::SpectrumMode mode = model::SpectrumMode::shifted;
  double kappa = 1.0;
  int fixed_value = 0;  // gamma'-average keeps the block only for l = 0
  int cutoff = 12;
  int beta_nodes = 64;
  int gl_order = 48;
  double theta_window = 8.0;
  int grid_nodes = 1200;
};
VerificationReport check_cross_term(const CrossTermConfig& cfg,
                                    const Tolerances& tol);

struct TemporalConfig {
  model::SpectrumMode mode = model::SpectrumMode::shifted;
  states::RunningIndex running = states::RunningIndex::level_n;
  states::DiscreteLabels labels;  // running/fixed fields overridden below
  double K = 1.2;
  double theta = 0.7;
  double beta = 1.1;
  int cutoff = 24;
  double Omega = 0.0;  // 0 selects the default kappa*(cutoff+1)
  std::vector<double> t_factors = {0.1, 1.0, 10.0};  // units of 1/omega_c
};
VerificationReport check_temporal_stability(const TemporalConfig& cfg,
                                            const model::PhysicalParams& p,
                                            const Tolerances& tol);

// Ladder commutators on the truncated basis: identity block, exact corner
// artifact, the 2 m hbar omega_c scaling, and exact vanishing of tensor
// cross-commutators.
VerificationReport check_commutators(int N, const model::PhysicalParams& p,
                                     const Tolerances& tol);

}  // namespace gkcs::verify
