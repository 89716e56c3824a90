#pragma once

#include <Eigen/Core>
#include <vector>

// Data-parallel numerical kernels with serial reference implementations.
// The OpenMP variants accumulate into per-thread partials merged in thread
// order, so results are deterministic for a fixed thread count.

namespace gkcs::kernels {

// Accumulated projector sum
//   T = sum_i jw[i] * (1/M) sum_k v(i,k) v(i,k)^dag,
//   v(i,k)[n] = amp[i*N + n] * exp(-i freq[n] phase[k]),
// with amp a row-major Q x N array of real amplitudes, jw the Q radial
// quadrature weights, phase the M angular nodes.
Eigen::MatrixXcd projector_phase_sum(const std::vector<double>& amp,
                                     const std::vector<double>& jw,
                                     const std::vector<double>& freq,
                                     const std::vector<double>& phase);
Eigen::MatrixXcd projector_phase_sum_serial(const std::vector<double>& amp,
                                            const std::vector<double>& jw,
                                            const std::vector<double>& freq,
                                            const std::vector<double>& phase);

// Windowed quadratic form sum_{ij} R(i,j) * sin(W(eps_i - eps_j))/(pi(eps_i - eps_j)),
// with the diagonal limit W/pi.  R must be symmetric.
double window_form(const Eigen::MatrixXd& R, const std::vector<double>& eps,
                   double W);
double window_form_serial(const Eigen::MatrixXd& R,
                          const std::vector<double>& eps, double W);

}  // namespace gkcs::kernels
