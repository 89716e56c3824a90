#pragma once

#include <stdexcept>

// Scalar special functions used by the coherent-state machinery.
// All functions are pure and thread-safe.

namespace gkcs::specfun {

// ln Gamma(x) for x > 0.  Lanczos approximation (g = 7, 9 coefficients),
// relative accuracy better than 1e-13 over [1e-3, 1e4].
// Throws std::domain_error for x <= 0.
double log_gamma(double x);

// Gamma(x) = exp(log_gamma(x)); throws std::overflow_error past ~171.6.
double gamma_fn(double x);

// Rising factorial (a)_n = a (a+1) ... (a+n-1), (a)_0 = 1.
double pochhammer(double a, unsigned n);

// log (a)_n for a > 0, evaluated as log_gamma(a+n) - log_gamma(a).
double log_pochhammer(double a, unsigned n);

// Confluent hypergeometric 1F1(1; eta; x) for eta > 0, x >= 0.
// Power series below x = 30, large-argument expansion above.
// Throws std::overflow_error when the result would exceed ~1e290 and
// std::domain_error for invalid eta or negative x.
double hyp1f1_one(double eta, double x);

// Associated Laguerre polynomial L_n^a(x), three-term recurrence.
double laguerre(unsigned n, double a, double x);

}  // namespace gkcs::specfun
