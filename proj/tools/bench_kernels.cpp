// Timing comparison of the OpenMP kernels against their serial references.
// Prints wall times and the max deviation between the two implementations so
// a parallel speedup never comes at the cost of a silent numerical drift.

#include <cstdio>
#include <random>
#include <vector>

#include <omp.h>

#include "gkcs/kernels.hpp"

namespace {

struct ProjectorCase {
  std::vector<double> amp, jw, freq, phase;
  int Q, N, M;
};

ProjectorCase make_projector_case(int Q, int N, int M, std::mt19937& rng) {
  std::uniform_real_distribution<double> u(0.1, 1.0);
  ProjectorCase c;
  c.Q = Q;
  c.N = N;
  c.M = M;
  c.amp.resize(size_t(Q) * N);
  for (auto& v : c.amp) v = u(rng);
  c.jw.resize(Q);
  for (auto& v : c.jw) v = u(rng);
  c.freq.resize(N);
  for (int n = 0; n < N; ++n) c.freq[n] = n + 0.5;
  c.phase.resize(M);
  for (int k = 0; k < M; ++k) c.phase[k] = 6.283185307179586 * k / M;
  return c;
}

}  // namespace

int main() {
  std::mt19937 rng(20250817);
  std::printf("threads: %d\n", omp_get_max_threads());

  {
    const ProjectorCase c = make_projector_case(128, 48, 97, rng);
    const double t0 = omp_get_wtime();
    const auto serial =
        gkcs::kernels::projector_phase_sum_serial(c.amp, c.jw, c.freq, c.phase);
    const double t1 = omp_get_wtime();
    const auto parallel =
        gkcs::kernels::projector_phase_sum(c.amp, c.jw, c.freq, c.phase);
    const double t2 = omp_get_wtime();
    const double dev = (serial - parallel).cwiseAbs().maxCoeff();
    std::printf("projector_phase_sum  Q=%d N=%d M=%d  serial %.3f s  "
                "parallel %.3f s  speedup %.2fx  max|diff| %.3e\n",
                c.Q, c.N, c.M, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1), dev);
  }

  {
    const int n = 1600;
    std::uniform_real_distribution<double> u(0.1, 1.0);
    Eigen::MatrixXd R(n, n);
    std::vector<double> eps(n);
    for (int i = 0; i < n; ++i) eps[i] = 6.0 * i / (n - 1);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        R(i, j) = u(rng);
        R(j, i) = R(i, j);
      }
    const double t0 = omp_get_wtime();
    const double serial = gkcs::kernels::window_form_serial(R, eps, 4.0);
    const double t1 = omp_get_wtime();
    const double parallel = gkcs::kernels::window_form(R, eps, 4.0);
    const double t2 = omp_get_wtime();
    std::printf("window_form          n=%d          serial %.3f s  "
                "parallel %.3f s  speedup %.2fx  |diff| %.3e\n",
                n, t1 - t0, t2 - t1, (t1 - t0) / (t2 - t1),
                std::abs(serial - parallel));
  }
  return 0;
}
