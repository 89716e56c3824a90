#pragma once

#include <Eigen/Core>
#include <complex>
#include <stdexcept>

// Physical parameters, gauge choices, truncated ladder operators and the
// discrete/continuous spectral data of a charged particle on a plane in
// crossed uniform magnetic and electric fields.

namespace gkcs::model {

using ComplexMatrix = Eigen::MatrixXcd;

struct PhysicalParams {
  double m = 1.0;
  double hbar = 1.0;
  double e_charge = 1.0;
  double B = 1.0;
  double c = 1.0;
  double E_field = 0.0;
  // Derived; filled by derive_params.
  double omega_c = 0.0;  // cyclotron frequency e*B/(m*c)
  double lambda = 0.0;   // drift momentum scale m*c*E/B
  double kappa = 0.0;    // level spacing hbar*omega_c
};

// Symmetric gauge A = (B/2*y, -B/2*x) or its sign-swapped partner.
enum class GaugeChoice { gauge1, gauge2 };

// shifted: discrete energies kappa*n, continuous branch bounded by alpha <= 0.
// unshifted: energies kappa*(n+1/2), bound alpha <= -lambda/(2*hbar).
enum class SpectrumMode { shifted, unshifted };

struct TruncatedBasis {
  int n_max = 2;  // Fock cutoff for the level index, >= 2
  int l_max = 1;  // Fock cutoff for the degeneracy index, >= 1
  void validate() const {
    if (n_max < 2 || l_max < 1)
      throw std::invalid_argument("TruncatedBasis: need n_max >= 2, l_max >= 1");
  }
};

enum class LadderKind { b, b_dag, b_prime, b_prime_dag };

PhysicalParams derive_params(double m, double hbar, double e_charge, double B,
                             double c, double E_field);

double discrete_energy(SpectrumMode mode, int n, const PhysicalParams& p);

// epsilon(alpha); the continuous coherent states use eps_minus = -epsilon >= 0.
double epsilon_of_alpha(SpectrumMode mode, double alpha, const PhysicalParams& p);

// Supremum of admissible alpha.  Throws std::domain_error in unshifted mode
// when lambda = 0 (the bound degenerates and the branch is empty).
double alpha_bound(SpectrumMode mode, const PhysicalParams& p);

// N x N truncation of the ladder operators.  b_prime has <n-1|b'|n> = sqrt(n);
// b = sqrt(2 m hbar omega_c) * b_prime; _dag kinds are adjoints.
ComplexMatrix ladder_matrix(LadderKind kind, int N, const PhysicalParams& p);

// Diagonal oscillator Hamiltonian with entries kappa*(n + 1/2).
ComplexMatrix osc_hamiltonian_matrix(int N, const PhysicalParams& p);

// Unit-modulus plane eigenfunction factor at (x, y).
std::complex<double> phi_alpha(GaugeChoice gauge, double alpha, double x,
                               double y, const PhysicalParams& p);

// Eigenvalues of the two commuting oscillators on |Psi_nl>.
std::pair<double, double> tensor_energy(int n, int l, const PhysicalParams& p);

// Dense Kronecker product, first factor varying slowest.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// ab - ba accumulated in long double: double products of sqrt-valued ladder
// entries carry 2-ulp noise that extended accumulation removes, leaving only
// the entries' own representation error
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace gkcs::model
