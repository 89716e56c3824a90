#include "gkcs/model.hpp"

#include <cmath>

namespace gkcs::model {

PhysicalParams derive_params(double m, double hbar, double e_charge, double B,
                             double c, double E_field) {
  if (!(m > 0.0)) throw std::domain_error("derive_params: m must be positive");
  if (!(hbar > 0.0)) throw std::domain_error("derive_params: hbar must be positive");
  if (!(e_charge > 0.0)) throw std::domain_error("derive_params: e_charge must be positive");
  if (!(B > 0.0)) throw std::domain_error("derive_params: B must be positive");
  if (!(c > 0.0)) throw std::domain_error("derive_params: c must be positive");
  if (E_field < 0.0) throw std::domain_error("derive_params: E_field must be >= 0");
  PhysicalParams p;
  p.m = m;
  p.hbar = hbar;
  p.e_charge = e_charge;
  p.B = B;
  p.c = c;
  p.E_field = E_field;
  p.omega_c = e_charge * B / (m * c);
  p.lambda = m * c * E_field / B;
  p.kappa = hbar * p.omega_c;
  return p;
}

double discrete_energy(SpectrumMode mode, int n, const PhysicalParams& p) {
  if (n < 0) throw std::domain_error("discrete_energy: n must be >= 0");
  return mode == SpectrumMode::shifted ? p.kappa * n : p.kappa * (n + 0.5);
}

double epsilon_of_alpha(SpectrumMode mode, double alpha, const PhysicalParams& p) {
  const double base = p.lambda * alpha / (p.m * p.omega_c);
  if (mode == SpectrumMode::shifted) return base;
  return base + p.lambda * p.lambda / (2.0 * p.m * p.hbar * p.omega_c);
}

double alpha_bound(SpectrumMode mode, const PhysicalParams& p) {
  if (mode == SpectrumMode::shifted) return 0.0;
  if (p.lambda == 0.0)
    throw std::domain_error(
        "alpha_bound: lambda = 0 degenerates the unshifted bound");
  return -p.lambda / (2.0 * p.hbar);
}

ComplexMatrix ladder_matrix(LadderKind kind, int N, const PhysicalParams& p) {
  if (N < 2) throw std::invalid_argument("ladder_matrix: cutoff N must be >= 2");
  // dimensionful entries take one sqrt of the full product rather than
  // sqrt(scale)*sqrt(n), halving their representation error
  const double scale_sq = 2.0 * p.m * p.hbar * p.omega_c;
  const bool dimensionful = kind == LadderKind::b || kind == LadderKind::b_dag;
  ComplexMatrix lower = ComplexMatrix::Zero(N, N);
  for (int n = 1; n < N; ++n)
    lower(n - 1, n) = std::sqrt(dimensionful ? scale_sq * n : double(n));
  switch (kind) {
    case LadderKind::b_prime:
    case LadderKind::b: return lower;
    case LadderKind::b_prime_dag:
    case LadderKind::b_dag: return lower.adjoint();
  }
  throw std::logic_error("ladder_matrix: unreachable");
}

ComplexMatrix osc_hamiltonian_matrix(int N, const PhysicalParams& p) {
  if (N < 2) throw std::invalid_argument("osc_hamiltonian_matrix: cutoff N must be >= 2");
  ComplexMatrix h = ComplexMatrix::Zero(N, N);
  for (int n = 0; n < N; ++n) h(n, n) = p.kappa * (n + 0.5);
  return h;
}

std::complex<double> phi_alpha(GaugeChoice gauge, double alpha, double x,
                               double y, const PhysicalParams& p) {
  const double cross = p.m * p.omega_c * x * y / (2.0 * p.hbar);
  const double linear = (gauge == GaugeChoice::gauge1) ? alpha * x : alpha * y;
  const double phase = linear + cross;
  return {std::cos(phase), std::sin(phase)};
}

std::pair<double, double> tensor_energy(int n, int l, const PhysicalParams& p) {
  if (n < 0 || l < 0) throw std::domain_error("tensor_energy: indices must be >= 0");
  return {p.kappa * (n + 0.5), p.kappa * (l + 0.5)};
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows())
    throw std::invalid_argument("commutator: dimensions must match");
  const Eigen::Index n = a.rows();
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) {
      long double re = 0.0L, im = 0.0L;
      for (Eigen::Index k = 0; k < n; ++k) {
        const auto &aik = a(i, k), &bkj = b(k, j);
        const auto &bik = b(i, k), &akj = a(k, j);
        re += (long double)aik.real() * bkj.real() -
              (long double)aik.imag() * bkj.imag() -
              (long double)bik.real() * akj.real() +
              (long double)bik.imag() * akj.imag();
        im += (long double)aik.real() * bkj.imag() +
              (long double)aik.imag() * bkj.real() -
              (long double)bik.real() * akj.imag() -
              (long double)bik.imag() * akj.real();
      }
      out(i, j) = std::complex<double>((double)re, (double)im);
    }
  return out;
}

}  // namespace gkcs::model
