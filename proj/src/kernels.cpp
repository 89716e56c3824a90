#include "gkcs/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <complex>
#include <stdexcept>

namespace gkcs::kernels {

namespace {

using Complex = std::complex<double>;

void check_projector_args(const std::vector<double>& amp,
                          const std::vector<double>& jw,
                          const std::vector<double>& freq,
                          const std::vector<double>& phase) {
  if (jw.empty() || freq.empty() || phase.empty())
    throw std::invalid_argument("projector_phase_sum: empty input");
  if (amp.size() != jw.size() * freq.size())
    throw std::invalid_argument("projector_phase_sum: amp size mismatch");
}

// Rank-one accumulation for one (i, k) pair into T.
void accumulate_pair(const double* amp_row, const std::vector<double>& freq,
                     double phi, double weight, Eigen::MatrixXcd& T) {
  const int N = static_cast<int>(freq.size());
  static thread_local std::vector<Complex> v;
  v.resize(N);
  for (int n = 0; n < N; ++n) {
    const double arg = -freq[n] * phi;
    v[n] = amp_row[n] * Complex(std::cos(arg), std::sin(arg));
  }
  for (int n = 0; n < N; ++n) {
    const Complex vn = weight * v[n];
    for (int p = 0; p < N; ++p) T(n, p) += vn * std::conj(v[p]);
  }
}

}  // namespace

Eigen::MatrixXcd projector_phase_sum_serial(const std::vector<double>& amp,
                                            const std::vector<double>& jw,
                                            const std::vector<double>& freq,
                                            const std::vector<double>& phase) {
  check_projector_args(amp, jw, freq, phase);
  const int Q = static_cast<int>(jw.size());
  const int N = static_cast<int>(freq.size());
  const int M = static_cast<int>(phase.size());
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < Q; ++i)
    for (int k = 0; k < M; ++k)
      accumulate_pair(amp.data() + i * N, freq, phase[k], jw[i] / M, T);
  return T;
}

Eigen::MatrixXcd projector_phase_sum(const std::vector<double>& amp,
                                     const std::vector<double>& jw,
                                     const std::vector<double>& freq,
                                     const std::vector<double>& phase) {
  check_projector_args(amp, jw, freq, phase);
  const int Q = static_cast<int>(jw.size());
  const int N = static_cast<int>(freq.size());
  const int M = static_cast<int>(phase.size());
  const int nt = omp_get_max_threads();
  std::vector<Eigen::MatrixXcd> partial(nt, Eigen::MatrixXcd::Zero(N, N));
#pragma omp parallel
  {
    Eigen::MatrixXcd& local = partial[omp_get_thread_num()];
#pragma omp for schedule(static)
    for (int i = 0; i < Q; ++i)
      for (int k = 0; k < M; ++k)
        accumulate_pair(amp.data() + i * N, freq, phase[k], jw[i] / M, local);
  }
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
  for (const Eigen::MatrixXcd& part : partial) T += part;
  return T;
}

namespace {

inline double sinc_window(double W, double d) {
  const double x = W * d;
  if (std::abs(x) < 1e-8) return W * (1.0 - x * x / 6.0) / M_PI;
  return std::sin(x) / (M_PI * d);
}

void check_window_args(const Eigen::MatrixXd& R, const std::vector<double>& eps) {
  if (R.rows() != R.cols() ||
      static_cast<size_t>(R.rows()) != eps.size())
    throw std::invalid_argument("window_form: dimension mismatch");
}

}  // namespace

double window_form_serial(const Eigen::MatrixXd& R,
                          const std::vector<double>& eps, double W) {
  check_window_args(R, eps);
  const int n = static_cast<int>(eps.size());
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    acc += R(i, i) * (W / M_PI);
    for (int j = i + 1; j < n; ++j)
      acc += 2.0 * R(i, j) * sinc_window(W, eps[i] - eps[j]);
  }
  return acc;
}

double window_form(const Eigen::MatrixXd& R, const std::vector<double>& eps,
                   double W) {
  check_window_args(R, eps);
  const int n = static_cast<int>(eps.size());
  const int nt = omp_get_max_threads();
  std::vector<double> partial(nt, 0.0);
#pragma omp parallel
  {
    double local = 0.0;
#pragma omp for schedule(static)
    for (int i = 0; i < n; ++i) {
      local += R(i, i) * (W / M_PI);
      for (int j = i + 1; j < n; ++j)
        local += 2.0 * R(i, j) * sinc_window(W, eps[i] - eps[j]);
    }
    partial[omp_get_thread_num()] = local;
  }
  double acc = 0.0;
  for (double part : partial) acc += part;
  return acc;
}

}  // namespace gkcs::kernels
