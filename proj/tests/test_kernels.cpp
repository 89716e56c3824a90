#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "gkcs/kernels.hpp"

using namespace gkcs;

namespace {

Eigen::MatrixXcd projector_naive(const std::vector<double>& amp,
                                 const std::vector<double>& jw,
                                 const std::vector<double>& freq,
                                 const std::vector<double>& phase) {
  const int Q = int(jw.size()), N = int(freq.size()), M = int(phase.size());
  Eigen::MatrixXcd T = Eigen::MatrixXcd::Zero(N, N);
  for (int i = 0; i < Q; ++i)
    for (int k = 0; k < M; ++k)
      for (int n = 0; n < N; ++n)
        for (int m = 0; m < N; ++m) {
          const std::complex<double> vn =
              amp[i * N + n] * std::polar(1.0, -freq[n] * phase[k]);
          const std::complex<double> vm =
              amp[i * N + m] * std::polar(1.0, -freq[m] * phase[k]);
          T(n, m) += jw[i] / double(M) * vn * std::conj(vm);
        }
  return T;
}

double window_naive(const Eigen::MatrixXd& R, const std::vector<double>& eps,
                    double W) {
  double acc = 0.0;
  for (int i = 0; i < R.rows(); ++i)
    for (int j = 0; j < R.cols(); ++j) {
      const double d = eps[i] - eps[j];
      acc += R(i, j) * (i == j ? W / M_PI : std::sin(W * d) / (M_PI * d));
    }
  return acc;
}

}  // namespace

TEST_CASE("projector sum against a quadruple-loop oracle") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int Q = 3, N = 4, M = 9;
  std::vector<double> amp(Q * N), jw(Q), freq(N), phase(M);
  for (auto& a : amp) a = u(rng);
  for (auto& w : jw) w = 0.5 + 0.5 * u(rng);
  for (int n = 0; n < N; ++n) freq[n] = n + 0.5 * u(rng);
  for (int k = 0; k < M; ++k) phase[k] = 2.0 * M_PI * k / M;
  const Eigen::MatrixXcd oracle = projector_naive(amp, jw, freq, phase);
  const Eigen::MatrixXcd serial =
      kernels::projector_phase_sum_serial(amp, jw, freq, phase);
  const Eigen::MatrixXcd par = kernels::projector_phase_sum(amp, jw, freq, phase);
  CHECK((serial - oracle).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((par - serial).cwiseAbs().maxCoeff() < 1e-13);
  CHECK((par - par.adjoint().eval()).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("integer frequencies over a full period diagonalize the projector") {
  const int N = 5, M = 2 * N + 1;
  std::vector<double> amp(N), jw{1.0}, freq(N), phase(M);
  for (int n = 0; n < N; ++n) {
    amp[n] = 1.0 / (1.0 + n);
    freq[n] = n;
  }
  for (int k = 0; k < M; ++k) phase[k] = 2.0 * M_PI * k / M;
  const Eigen::MatrixXcd T = kernels::projector_phase_sum(amp, jw, freq, phase);
  for (int n = 0; n < N; ++n)
    for (int m = 0; m < N; ++m) {
      CAPTURE(n);
      CAPTURE(m);
      if (n == m)
        CHECK(std::abs(T(n, n) - amp[n] * amp[n]) < 1e-15);
      else
        CHECK(std::abs(T(n, m)) < 1e-15);
    }
}

TEST_CASE("serial and parallel projector agree on a large case") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int Q = 48, N = 24, M = 33;
  std::vector<double> amp(Q * N), jw(Q), freq(N), phase(M);
  for (auto& a : amp) a = u(rng);
  for (auto& w : jw) w = std::exp(u(rng));
  for (int n = 0; n < N; ++n) freq[n] = 1.5 * n + 0.25;
  for (int k = 0; k < M; ++k) phase[k] = 2.0 * M_PI * k / M + 0.1 * u(rng);
  const Eigen::MatrixXcd a = kernels::projector_phase_sum(amp, jw, freq, phase);
  const Eigen::MatrixXcd b =
      kernels::projector_phase_sum_serial(amp, jw, freq, phase);
  CHECK((a - b).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("window form against direct loops") {
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const int n = 5;
  Eigen::MatrixXd R(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j <= i; ++j) R(i, j) = R(j, i) = u(rng);
  std::vector<double> eps{0.1, 0.7, 1.3, 2.0, 4.5};
  for (double W : {0.5, 2.0, 8.0}) {
    CAPTURE(W);
    const double oracle = window_naive(R, eps, W);
    CHECK(kernels::window_form_serial(R, eps, W) ==
          doctest::Approx(oracle).epsilon(1e-14));
    CHECK(kernels::window_form(R, eps, W) ==
          doctest::Approx(oracle).epsilon(1e-13));
  }
}

TEST_CASE("single node gives the exact diagonal limit") {
  Eigen::MatrixXd R(1, 1);
  R(0, 0) = 3.0;
  std::vector<double> eps{2.5};
  CHECK(kernels::window_form(R, eps, 4.0) == 3.0 * 4.0 / M_PI);
}

TEST_CASE("near-coincident nodes stay continuous") {
  Eigen::MatrixXd R = Eigen::MatrixXd::Ones(2, 2);
  const double W = 3.0;
  for (double d : {1e-7, 1e-9, 1e-12}) {
    std::vector<double> eps{1.0, 1.0 + d};
    const double got = kernels::window_form(R, eps, W);
    const double limit = 4.0 * W / M_PI;  // all four entries at the peak
    CAPTURE(d);
    CHECK(got == doctest::Approx(limit).epsilon(1e-9));
    CHECK(got == doctest::Approx(kernels::window_form_serial(R, eps, W))
                     .epsilon(1e-15));
  }
}
