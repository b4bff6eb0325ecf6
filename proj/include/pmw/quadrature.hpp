#pragma once

// Gauss-Jacobi rules on [-1,1] with weight (1-t)^a (1+t)^b, built by the
// Golub-Welsch eigenvalue method and polished with Newton steps on the
// Jacobi three-term recurrence.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Eigenvalues>

#include "pmw/error.hpp"
#include "pmw/special_fn.hpp"

namespace pmw {

struct GaussJacobiRule {
  double alpha = 0.0;  // exponent of (1-t)
  double beta = 0.0;   // exponent of (1+t)
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
  /// Highest polynomial degree integrated exactly.
  int exact_degree() const { return 2 * static_cast<int>(nodes.size()) - 1; }
};

namespace detail {

// Orthonormal Jacobi recurrence: t p_k = b_{k+1} p_{k+1} + a_k p_k + b_k p_{k-1}.
inline double jacobi_diag(int k, double a, double b) {
  const double s = 2.0 * k + a + b;
  if (k == 0) return (b - a) / (a + b + 2.0);
  if (b * b - a * a == 0.0) return 0.0;
  return (b * b - a * a) / (s * (s + 2.0));
}

inline double jacobi_offdiag(int k, double a, double b) {
  const double s = 2.0 * k + a + b;
  if (k == 1) {
    // limit form; stays finite when a + b = -1
    return std::sqrt(4.0 * (1.0 + a) * (1.0 + b) / ((a + b + 2.0) * (a + b + 2.0) * (a + b + 3.0)));
  }
  return std::sqrt(4.0 * k * (k + a) * (k + b) * (k + a + b) / (s * s * (s + 1.0) * (s - 1.0)));
}

// Orthonormal p_m(t) and p_m'(t) by the recurrence above.
inline void jacobi_orthonormal(int m, double a, double b, double mu0, double t, double& p, double& dp) {
  double p_prev = 0.0, dp_prev = 0.0;
  double p_cur = 1.0 / std::sqrt(mu0), dp_cur = 0.0;
  for (int k = 0; k < m; ++k) {
    const double bk1 = jacobi_offdiag(k + 1, a, b);
    const double bk = k == 0 ? 0.0 : jacobi_offdiag(k, a, b);
    const double ak = jacobi_diag(k, a, b);
    const double p_next = ((t - ak) * p_cur - bk * p_prev) / bk1;
    const double dp_next = ((t - ak) * dp_cur + p_cur - bk * dp_prev) / bk1;
    p_prev = p_cur;
    dp_prev = dp_cur;
    p_cur = p_next;
    dp_cur = dp_next;
  }
  p = p_cur;
  dp = dp_cur;
}

}  // namespace detail

/// m-point Gauss-Jacobi rule for weight (1-t)^alpha (1+t)^beta.
inline GaussJacobiRule gauss_jacobi(int m, double alpha, double beta) {
  if (m < 1) throw DomainError("gauss_jacobi: need at least one node");
  if (!(alpha > -1.0 && beta > -1.0)) throw DomainError("gauss_jacobi: exponents must exceed -1");
  using detail::log_gamma;
  const double mu0 = std::exp((alpha + beta + 1.0) * std::log(2.0) + log_gamma(alpha + 1.0) + log_gamma(beta + 1.0) -
                              log_gamma(alpha + beta + 2.0));

  Eigen::VectorXd diag(m);
  Eigen::VectorXd sub(std::max(m - 1, 0));
  for (int k = 0; k < m; ++k) diag(k) = detail::jacobi_diag(k, alpha, beta);
  for (int k = 1; k < m; ++k) sub(k - 1) = detail::jacobi_offdiag(k, alpha, beta);

  GaussJacobiRule rule;
  rule.alpha = alpha;
  rule.beta = beta;
  rule.nodes.resize(m);
  rule.weights.resize(m);
  if (m == 1) {
    rule.nodes[0] = diag(0);
    rule.weights[0] = mu0;
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw DomainError("gauss_jacobi: eigenvalue solver failed");

  for (int i = 0; i < m; ++i) {
    double t = solver.eigenvalues()(i);
    // two Newton steps on the orthonormal p_m recover full relative accuracy
    for (int it = 0; it < 2; ++it) {
      double p, dp;
      detail::jacobi_orthonormal(m, alpha, beta, mu0, t, p, dp);
      if (dp != 0.0) t -= p / dp;
    }
    double p, dp;
    detail::jacobi_orthonormal(m, alpha, beta, mu0, t, p, dp);
    // Christoffel weight: 1 / sum_{k<m} p_k(t)^2 = 1 / (b_m p_{m-1}(t) p_m'(t))
    double pm1, dpm1;
    detail::jacobi_orthonormal(m - 1, alpha, beta, mu0, t, pm1, dpm1);
    const double bm = detail::jacobi_offdiag(m, alpha, beta);
    rule.nodes[i] = t;
    rule.weights[i] = 1.0 / (bm * pm1 * dp);
  }
  if (alpha == beta) {
    for (int i = 0; i < m / 2; ++i) {
      const int j = m - 1 - i;
      const double x = 0.5 * (rule.nodes[j] - rule.nodes[i]);
      const double w = 0.5 * (rule.weights[i] + rule.weights[j]);
      rule.nodes[i] = -x;
      rule.nodes[j] = x;
      rule.weights[i] = rule.weights[j] = w;
    }
    if (m % 2 == 1) rule.nodes[m / 2] = 0.0;
  }
  return rule;
}

/// Symmetric rule for the Gegenbauer weight (1-t^2)^{order-1/2}.
inline GaussJacobiRule gauss_gegenbauer(int m, double order) { return gauss_jacobi(m, order - 0.5, order - 0.5); }

inline GaussJacobiRule gauss_legendre(int m) { return gauss_jacobi(m, 0.0, 0.0); }

}  // namespace pmw
