#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace gkcs::quad {

enum class RuleKind { gauss_laguerre, gauss_legendre, trapezoid };

struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
  RuleKind kind = RuleKind::trapezoid;

  // Throws std::invalid_argument unless nodes are strictly increasing,
  // weights are positive and both arrays have the same nonzero length.
  void validate() const;
};

// Generalized Gauss-Laguerre rule: integrates g(x) x^alpha e^{-x} on [0,inf)
// exactly for polynomial g up to degree 2*order-1.  Golub-Welsch via a
// symmetric tridiagonal eigensolve.
QuadratureRule gauss_laguerre(int order, double alpha = 0.0);

// Gauss-Legendre rule on [-1, 1].
QuadratureRule gauss_legendre(int order);

// Composite trapezoid rule with n equispaced nodes on [a, b].
QuadratureRule trapezoid(double a, double b, int n);

double apply(const QuadratureRule& rule, const std::function<double(double)>& f);

// Thrown when an adaptive integration cannot reach the requested tolerance
// within its work budget.  Carries the best estimate and its error bound.
class NonConvergence : public std::runtime_error {
 public:
  NonConvergence(const std::string& what, double best, double bound)
      : std::runtime_error(what), best_(best), bound_(bound) {}
  double best_estimate() const { return best_; }
  double error_bound() const { return bound_; }

 private:
  double best_;
  double bound_;
};

// Integral of f over [0, inf).  Splits the semiaxis into doubling segments
// [0,1], [1,2], [2,4], ... and integrates each with adaptive bisected
// 15-point Gauss-Legendre panels.  Stops once two consecutive segments are
// negligible at the requested relative tolerance; throws NonConvergence if
// the panel budget or the segment range is exhausted first.
double integrate_semiaxis(const std::function<double(double)>& f,
                          double rel_tol = 1e-12, int max_panels = 20000);

// Integral of g(x) x^alpha e^{-rate*x} over [0, inf) by generalized
// Gauss-Laguerre at escalating orders until two successive orders agree to
// rel_tol.  rate > 0.
double integrate_weighted_laguerre(const std::function<double(double)>& g,
                                   double alpha, double rate,
                                   double rel_tol = 1e-12);

}  // namespace gkcs::quad
