#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include "gkcs/model.hpp"

// Discrete, continuous and combined coherent states over the Landau (+ drift)
// spectrum, their overlaps and time evolution.
//
// Phase-sign convention used throughout: discrete coefficients carry
// e^{-i freq(n) gamma} on the running index and e^{+i freq(fixed) angle} on
// the fixed one; continuous samples carry e^{-i eps theta} by default
// (PhaseSign::positive flips the continuous exponent).

namespace gkcs::states {

using model::PhysicalParams;
using model::SpectrumMode;
using Complex = std::complex<double>;

// --- rho weights -----------------------------------------------------------

// shifted: rho(n) = n!; unshifted: rho(n) = kappa^n (3/2)_n.
double log_rho_discrete(SpectrumMode mode, int n, double kappa);
double rho_discrete(SpectrumMode mode, int n, double kappa);

// Coefficient phase frequency: n (shifted) or the energy kappa*(n+1/2)
// (unshifted, where coefficients carry e^{-i E_n gamma} literally).
double phase_frequency(SpectrumMode mode, int n, double kappa);

// N(J): e^J (shifted) or 1F1(1; 3/2; J/kappa) (unshifted).
double norm_const_discrete(SpectrumMode mode, double J, double kappa);

struct PartialNorm {
  double value;  // sum of the first `cutoff` series terms
  double tail;   // geometric bound on the dropped remainder
};
PartialNorm norm_const_discrete_partial(SpectrumMode mode, double J,
                                        double kappa, int cutoff);

// Continuous-branch weight pair: rho(eps) = Gamma(eps+1) with sigma(K) = e^-K,
// which satisfies the moment link  integral K^eps sigma(K) dK = rho(eps).
struct RhoContinuous {
  double log_rho(double eps) const;
  double rho(double eps) const;
  double sigma(double K) const;
};

// --- epsilon grid ----------------------------------------------------------

struct EpsilonGrid {
  std::vector<double> nodes;    // ascending, in [0, eps_max]
  std::vector<double> weights;  // positive
  double eps_max = 0.0;

  static EpsilonGrid trapezoid_grid(double eps_max, int n_nodes);
  bool same_as(const EpsilonGrid& other) const;
};

struct GridSpec {
  int n_nodes = 2000;
  double eps_budget = 500.0;  // NonConvergence if the integrand needs more
};

struct ContinuousNorm {
  double value;
  EpsilonGrid grid;
};

// N_rho(K) = integral K^eps / rho(eps) d eps on a grid extended until the
// integrand has dropped 40 e-folds below its peak.  K > 0.
ContinuousNorm norm_const_continuous(double K, const RhoContinuous& rho_c,
                                     const GridSpec& spec = {});
double norm_const_continuous_on(double K, const RhoContinuous& rho_c,
                                const EpsilonGrid& grid);

// --- discrete sector -------------------------------------------------------

// Which Fock index runs in the coefficient series; the other is fixed.
enum class RunningIndex { level_n, level_l };

struct DiscreteLabels {
  double J = 1.0;
  double gamma = 0.0;
  double Jprime = 1.0;
  double gamma_prime = 0.0;
  RunningIndex running = RunningIndex::level_n;
  int fixed_value = 0;
};

class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DiscreteCS {
  SpectrumMode mode = SpectrumMode::shifted;
  double kappa = 1.0;
  DiscreteLabels labels;
  std::vector<Complex> coeffs;  // running index 0 .. cutoff-1
  double tail_bound = 0.0;      // bound on the truncated fraction of the series
  double norm_sq() const;
};

// c_r = [N(J)N(J')]^{-1/2} Jf^{fixed/2} e^{+i freq(fixed) angle_f} / sqrt(rho(fixed))
//       * Jr^{r/2} e^{-i freq(r) angle_r} / sqrt(rho(r)),
// where (Jr, angle_r) belong to the running index and (Jf, angle_f) to the
// fixed one.  Throws CutoffError if the running-series tail fraction exceeds
// tail_tol.
DiscreteCS build_discrete_cs(SpectrumMode mode, const DiscreteLabels& labels,
                             int cutoff, double kappa,
                             double tail_tol = 1e-12);

// --- continuous sector -----------------------------------------------------

enum class PhaseSign { negative, positive };

struct ContinuousCS {
  double K = 1.0;
  double theta = 0.0;
  PhaseSign sign = PhaseSign::negative;
  double norm_const = 1.0;  // N_rho(K) on this grid
  EpsilonGrid grid;
  std::vector<Complex> values;  // c(eps_i)
  double norm_sq() const;       // quadrature norm, = 1 by construction
};

ContinuousCS build_continuous_cs(double K, double theta,
                                 const RhoContinuous& rho_c,
                                 const GridSpec& spec = {},
                                 PhaseSign sign = PhaseSign::negative);
ContinuousCS build_continuous_cs_on(double K, double theta,
                                    const RhoContinuous& rho_c,
                                    const EpsilonGrid& grid,
                                    PhaseSign sign = PhaseSign::negative);

// --- envelopes and the combined state --------------------------------------

// Normalizers N_f, N_g fixed by the two unit conditions
//   integral f^2 dmu_C = 1,  integral g^2 dmu_D = 1,
// with dmu_C = N_rho(K) sigma(K) dK dtheta/2pi (theta over a finite window)
// and dmu_D = N(J)N(J') dnu(J) dnu(J') against the mode's moment measure.
struct EnvelopeMeasures {
  SpectrumMode mode = SpectrumMode::shifted;
  double kappa = 1.0;
  double theta_window = 8.0;
  double N_f = 1.0;
  double N_g = 1.0;
};

EnvelopeMeasures make_envelope_measures(SpectrumMode mode, double kappa,
                                        const RhoContinuous& rho_c,
                                        double theta_window = 8.0);

// f = N_f exp(-(K^2+theta^2)/2), g = N_g exp(-(J^2+J'^2)/2).
std::pair<double, double> envelopes(double K, double theta, double J,
                                    double gamma, double Jprime,
                                    double gamma_prime,
                                    const EnvelopeMeasures& meas);

struct CombinedCS {
  DiscreteCS discrete;
  ContinuousCS continuous;
  double beta = 0.0;  // continuous sector carries the global phase e^{-i beta}
  double f_value = 0.0;
  double g_value = 0.0;
  double norm_sq() const;  // f^2 |D|^2 + g^2 |C|^2, sectors orthogonal
};

struct CombinedConfig {
  int cutoff = 32;
  double tail_tol = 1e-12;
  GridSpec grid;
  PhaseSign sign = PhaseSign::negative;
  const EpsilonGrid* fixed_grid = nullptr;  // share a grid across states
};

CombinedCS build_combined_cs(SpectrumMode mode, const DiscreteLabels& labels,
                             double K, double theta, double beta, double kappa,
                             const EnvelopeMeasures& meas,
                             const RhoContinuous& rho_c,
                             const CombinedConfig& config = {});

// --- overlaps --------------------------------------------------------------

Complex overlap(const DiscreteCS& a, const DiscreteCS& b);
Complex overlap(const ContinuousCS& a, const ContinuousCS& b);
Complex overlap(const CombinedCS& a, const CombinedCS& b);

// --- time evolution --------------------------------------------------------

// Label-shift evolution: running angle advances by omega_c t (shifted mode)
// or t/hbar (unshifted, energy-valued frequencies), theta by omega_c t and
// beta by Omega t / hbar.  Envelope values are carried over unchanged; the
// evolved state is the original family member at shifted labels.
CombinedCS time_evolve(const CombinedCS& cs, double t, double Omega,
                       const PhysicalParams& p, const RhoContinuous& rho_c);

// Coefficientwise evolution: discrete coefficients gain e^{-i E_r t/hbar},
// continuous samples gain e^{-i (kappa eps + Omega) t/hbar}; labels and beta
// are left untouched (stale) for comparison against time_evolve.
CombinedCS evolve_coefficientwise(const CombinedCS& cs, double t, double Omega,
                                  const PhysicalParams& p);

// Max componentwise deviation of the physical coefficient vectors
// (f * discrete coeffs and e^{-i beta} g * continuous values).
double max_deviation(const CombinedCS& a, const CombinedCS& b);

}  // namespace gkcs::states
