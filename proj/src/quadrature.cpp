#include "gkcs/quadrature.hpp"

#include <Eigen/Core>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <limits>
#include <utility>

#include "gkcs/specfun.hpp"

namespace gkcs::quad {

void QuadratureRule::validate() const {
  if (nodes.empty() || nodes.size() != weights.size())
    throw std::invalid_argument("QuadratureRule: node/weight length mismatch");
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!std::isfinite(nodes[i]) || !std::isfinite(weights[i]))
      throw std::invalid_argument("QuadratureRule: non-finite entry");
    if (i > 0 && !(nodes[i] > nodes[i - 1]))
      throw std::invalid_argument("QuadratureRule: nodes not strictly increasing");
    if (!(weights[i] > 0.0))
      throw std::invalid_argument("QuadratureRule: non-positive weight");
  }
}

namespace {

// Golub-Welsch: nodes are eigenvalues of the Jacobi matrix, weights are
// mu0 * (first eigenvector component)^2.
QuadratureRule golub_welsch(const Eigen::VectorXd& diag,
                            const Eigen::VectorXd& subdiag, double mu0,
                            RuleKind kind) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("golub_welsch: eigensolve failed");
  const int q = static_cast<int>(diag.size());
  QuadratureRule rule;
  rule.kind = kind;
  rule.nodes.resize(q);
  rule.weights.resize(q);
  for (int i = 0; i < q; ++i) {
    rule.nodes[i] = solver.eigenvalues()(i);
    const double v0 = solver.eigenvectors()(0, i);
    rule.weights[i] = mu0 * v0 * v0;
  }
  return rule;
}

}  // namespace

namespace {

// (L_n^a(x), L_{n-1}^a(x)) by the three-term recurrence. Magnitudes between
// roots reach e^{x/2} scale, which still fits in long double for the orders in
// use (x up to ~1100).
std::pair<long double, long double> laguerre_pair(int n, double alpha,
                                                  long double x) {
  long double prev = 1.0L, cur = 1.0L + (long double)alpha - x;
  if (n == 0) return {prev, 0.0L};
  for (int k = 1; k < n; ++k) {
    const long double next =
        ((2.0L * k + 1.0L + alpha - x) * cur - (k + alpha) * prev) / (k + 1);
    prev = cur;
    cur = next;
  }
  return {cur, prev};
}

}  // namespace

QuadratureRule gauss_laguerre(int order, double alpha) {
  if (order < 1) throw std::invalid_argument("gauss_laguerre: order < 1");
  if (!(alpha > -1.0)) throw std::invalid_argument("gauss_laguerre: alpha <= -1");
  // Nodes come from the Jacobi matrix. Eigenvector weights bottom out at
  // absolute noise ~1e-32, which wrecks any integrand that grows against the
  // weight, so weights use the classical closed form
  //   w_i = Gamma(n+a+1) x_i / (n! (n+1)^2 [L_{n+1}^a(x_i)]^2)
  // through logs after polishing each node with two Newton steps.
  Eigen::VectorXd diag(order), subdiag(order - 1);
  for (int i = 0; i < order; ++i) diag(i) = 2.0 * i + alpha + 1.0;
  for (int i = 1; i < order; ++i) subdiag(i - 1) = std::sqrt(i * (i + alpha));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, subdiag, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("gauss_laguerre: eigensolve failed");

  const double lg_pref = specfun::log_gamma(order + alpha + 1.0) -
                         specfun::log_gamma(order + 1.0) -
                         2.0 * std::log(order + 1.0);
  QuadratureRule rule;
  rule.kind = RuleKind::gauss_laguerre;
  rule.nodes.resize(order);
  rule.weights.resize(order);
  for (int i = 0; i < order; ++i) {
    long double x = solver.eigenvalues()(i);
    for (int step = 0; step < 2; ++step) {
      const auto [Ln, Lnm1] = laguerre_pair(order, alpha, x);
      const long double deriv = (order * Ln - (order + alpha) * Lnm1) / x;
      if (deriv != 0.0L) x -= Ln / deriv;
    }
    const auto [Ln, Lnm1] = laguerre_pair(order, alpha, x);
    const long double Lnp1 =
        ((2.0L * order + 1.0L + alpha - x) * Ln - (order + alpha) * Lnm1) /
        (order + 1);
    const double lw = lg_pref + std::log((double)x) - 2.0 * (double)logl(fabsl(Lnp1));
    rule.nodes[i] = (double)x;
    // clamp keeps the strictly-positive invariant when the true weight
    // underflows double entirely; the absolute error is below any use
    rule.weights[i] = std::max(std::exp(lw), std::numeric_limits<double>::min());
  }
  return rule;
}

QuadratureRule gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order < 1");
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(order), subdiag(order - 1);
  for (int k = 1; k < order; ++k)
    subdiag(k - 1) = k / std::sqrt(4.0 * k * k - 1.0);
  return golub_welsch(diag, subdiag, 2.0, RuleKind::gauss_legendre);
}

QuadratureRule trapezoid(double a, double b, int n) {
  if (n < 2) throw std::invalid_argument("trapezoid: need at least 2 nodes");
  if (!(b > a)) throw std::invalid_argument("trapezoid: empty interval");
  QuadratureRule rule;
  rule.kind = RuleKind::trapezoid;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const double h = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) {
    rule.nodes[i] = a + h * i;
    rule.weights[i] = (i == 0 || i == n - 1) ? h / 2.0 : h;
  }
  return rule;
}

double apply(const QuadratureRule& rule, const std::function<double(double)>& f) {
  double acc = 0.0;
  for (size_t i = 0; i < rule.nodes.size(); ++i)
    acc += rule.weights[i] * f(rule.nodes[i]);
  return acc;
}

namespace {

const QuadratureRule& panel_rule() {
  static const QuadratureRule rule = gauss_legendre(15);
  return rule;
}

double panel_gl15(const std::function<double(double)>& f, double a, double b) {
  const QuadratureRule& rule = panel_rule();
  const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  double acc = 0.0;
  for (int i = 0; i < 15; ++i)
    acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
  return half * acc;
}

struct PanelBudget {
  int left;
  double best;   // value accumulated so far, for error reporting
  double bound;  // error bound accumulated so far
};

double adaptive_panel(const std::function<double(double)>& f, double a,
                      double b, double whole, double abs_tol, int depth,
                      PanelBudget& budget) {
  if (budget.left <= 0)
    throw NonConvergence("integrate_semiaxis: panel budget exhausted",
                         budget.best, budget.bound + std::abs(whole));
  budget.left -= 1;
  const double mid = 0.5 * (a + b);
  const double left = panel_gl15(f, a, mid);
  const double right = panel_gl15(f, mid, b);
  const double err = std::abs(left + right - whole);
  if (err <= abs_tol || depth >= 48) {
    budget.bound += err;
    return left + right;
  }
  const double li =
      adaptive_panel(f, a, mid, left, abs_tol / 2.0, depth + 1, budget);
  const double ri =
      adaptive_panel(f, mid, b, right, abs_tol / 2.0, depth + 1, budget);
  return li + ri;
}

}  // namespace

double integrate_semiaxis(const std::function<double(double)>& f,
                          double rel_tol, int max_panels) {
  if (!(rel_tol > 0.0)) throw std::invalid_argument("integrate_semiaxis: rel_tol <= 0");
  PanelBudget budget{max_panels, 0.0, 0.0};
  double acc = 0.0;
  double scale = 0.0;
  double lower = 0.0, upper = 1.0;
  int negligible_run = 0;
  for (int seg = 0; seg < 64; ++seg) {
    const double rough = panel_gl15(f, lower, upper);
    scale = std::max({scale, std::abs(acc), std::abs(rough), 1e-300});
    const double seg_tol = 0.25 * rel_tol * scale;
    budget.best = acc;
    const double value =
        adaptive_panel(f, lower, upper, rough, seg_tol, 0, budget);
    acc += value;
    scale = std::max(scale, std::abs(acc));
    if (std::abs(value) <= 0.5 * rel_tol * scale) {
      if (++negligible_run >= 2) {
        budget.bound += std::abs(value);
        return acc;
      }
    } else {
      negligible_run = 0;
    }
    lower = upper;
    upper *= 2.0;
  }
  throw NonConvergence("integrate_semiaxis: tail did not decay", acc,
                       budget.bound + std::abs(acc) * rel_tol + 1.0);
}

double integrate_weighted_laguerre(const std::function<double(double)>& g,
                                   double alpha, double rate, double rel_tol) {
  if (!(rate > 0.0)) throw std::invalid_argument("integrate_weighted_laguerre: rate <= 0");
  static const int orders[] = {16, 24, 32, 48, 64, 96, 128, 192, 256};
  const double scale = std::pow(rate, -(alpha + 1.0));
  double prev = 0.0;
  bool have_prev = false;
  for (int order : orders) {
    const QuadratureRule rule = gauss_laguerre(order, alpha);
    double acc = 0.0;
    for (int i = 0; i < order; ++i)
      acc += rule.weights[i] * g(rule.nodes[i] / rate);
    acc *= scale;
    if (have_prev && std::abs(acc - prev) <= rel_tol * std::abs(acc) + 1e-300)
      return acc;
    prev = acc;
    have_prev = true;
  }
  throw NonConvergence("integrate_weighted_laguerre: orders exhausted", prev,
                       std::abs(prev) * rel_tol * 100.0);
}

}  // namespace gkcs::quad
