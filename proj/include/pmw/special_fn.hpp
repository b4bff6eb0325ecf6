#pragma once

// Gegenbauer polynomials, harmonic normalization constants and the
// reproducing kernel of H_l(S^n).
//
// Conventions used throughout the library:
//   lambda = (n - 1) / 2,   Sigma_n = 2 pi^{(n+1)/2} / Gamma((n+1)/2),
//   C_l^{a}(t) = 0 for l < 0.
// Every ratio of gamma functions goes through log-gamma, so degrees in the
// hundreds never overflow.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "pmw/error.hpp"

namespace pmw {

/// Surface measure of the unit sphere S^n embedded in R^{n+1}.
inline double sphere_measure(int n) {
  if (n < 0) throw DomainError("sphere_measure: n must be >= 0");
  const double h = 0.5 * (n + 1);
  return 2.0 * std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

/// Sphere dimension n >= 2 together with lambda = (n-1)/2 and Sigma_n.
class LambdaParam {
 public:
  explicit LambdaParam(int n) : n_(n) {
    if (n < 2) throw DomainError("LambdaParam: sphere dimension must be >= 2, got " + std::to_string(n));
    lambda_ = 0.5 * (n - 1);
    sigma_ = sphere_measure(n);
  }

  int n() const { return n_; }
  double lambda() const { return lambda_; }
  double sigma() const { return sigma_; }

  friend bool operator==(const LambdaParam& a, const LambdaParam& b) { return a.n_ == b.n_; }

 private:
  int n_;
  double lambda_;
  double sigma_;
};

namespace detail {

inline double log_gamma(double x) {
  int sign = 1;
  double v = boost::math::lgamma(x, &sign);
  if (sign < 0) throw DomainError("log_gamma: negative gamma value for argument " + detail::num(x));
  return v;
}

inline void check_order(double order) {
  if (!(order > -0.5)) throw DomainError("Gegenbauer order must exceed -1/2, got " + detail::num(order));
}

inline void check_argument(double t) {
  if (!(t >= -1.0 && t <= 1.0)) throw DomainError("Gegenbauer argument outside [-1,1]: " + detail::num(t));
}

}  // namespace detail

/// Fills out[l] = C_l^{order}(t) for l = 0..out.size()-1 by the upward
/// three-term recurrence. No argument checking; used on hot paths.
inline void gegenbauer_fill(double order, double t, std::span<double> out) {
  if (out.empty()) return;
  out[0] = 1.0;
  if (out.size() == 1) return;
  out[1] = 2.0 * order * t;
  for (std::size_t l = 1; l + 1 < out.size(); ++l) {
    const double ld = static_cast<double>(l);
    out[l + 1] = (2.0 * (order + ld) * t * out[l] - (2.0 * order + ld - 1.0) * out[l - 1]) / (ld + 1.0);
  }
}

/// C_0^{order}(t), ..., C_L^{order}(t).
inline std::vector<double> gegenbauer_batch(double order, int L, double t) {
  if (L < 0) throw DomainError("gegenbauer_batch: L must be >= 0");
  detail::check_order(order);
  detail::check_argument(t);
  std::vector<double> out(static_cast<std::size_t>(L) + 1);
  gegenbauer_fill(order, t, out);
  return out;
}

/// Single value C_l^{order}(t); zero for l < 0.
inline double gegenbauer(int l, double order, double t) {
  if (l < 0) return 0.0;
  return gegenbauer_batch(order, l, t).back();
}

/// d/dt C_l^{order}(t) = 2 order C_{l-1}^{order+1}(t).
inline double gegenbauer_derivative(int l, double order, double t) {
  if (l < 0) throw DomainError("gegenbauer_derivative: l must be >= 0");
  detail::check_order(order);
  detail::check_argument(t);
  if (l == 0) return 0.0;
  return 2.0 * order * gegenbauer(l - 1, order + 1.0, t);
}

/// C_l^{order}(1) = Gamma(2 order + l) / (Gamma(2 order) l!), order > 0.
inline double gegenbauer_at_one(int l, double order) {
  if (l < 0) return 0.0;
  if (!(order > 0.0)) throw DomainError("gegenbauer_at_one: order must be positive");
  return std::exp(detail::log_gamma(2.0 * order + l) - detail::log_gamma(2.0 * order) - detail::log_gamma(l + 1.0));
}

/// Normalization constant A_l^{(k1,0,...,0)} of the sector harmonics.
inline double norm_const_A(const LambdaParam& lp, int l, int k1) {
  if (k1 < 0 || k1 > l) throw DomainError("norm_const_A: need 0 <= k1 <= l");
  using detail::log_gamma;
  const double pi = std::numbers::pi;
  const double ld = l;
  const double kd = k1;
  if (lp.n() == 2) {
    const double log_a = kd * std::log(2.0) + log_gamma(kd + 0.5) +
                         0.5 * (std::log(2.0 * ld + 1.0) + log_gamma(ld - kd + 1.0) - std::log(pi) - log_gamma(ld + kd + 1.0));
    return std::exp(log_a);
  }
  const double n = lp.n();
  const double log_a2 = (2.0 * n + 2.0 * kd - 6.0) * std::log(2.0) + log_gamma(ld - kd + 1.0) + log_gamma(kd + 1.0) +
                        std::log(n + 2.0 * ld - 1.0) + std::log(n + 2.0 * kd - 2.0) +
                        2.0 * log_gamma(0.5 * (n - 1.0) + kd) + 2.0 * log_gamma(0.5 * (n - 2.0)) -
                        std::log(n - 1.0) - std::log(pi) - log_gamma(n + ld + kd - 1.0) - log_gamma(n + kd - 2.0);
  return std::exp(0.5 * log_a2);
}

/// N(n,l) = (n+2l-1)(n+l-2)! / ((n-1)! l!), exact.
inline std::uint64_t dim_harmonic(int n, int l) {
  if (n < 2 || l < 0) throw DomainError("dim_harmonic: need n >= 2, l >= 0");
  // binom(n+l-2, l) built so that every partial product is an exact binomial.
  unsigned __int128 b = 1;
  for (int i = 1; i <= l; ++i) {
    b = b * static_cast<unsigned __int128>(n - 2 + i) / static_cast<unsigned __int128>(i);
    if (b > static_cast<unsigned __int128>(UINT64_MAX)) throw OverflowError("dim_harmonic: result exceeds 64 bits");
  }
  const unsigned __int128 num = b * static_cast<unsigned __int128>(n + 2 * l - 1);
  const unsigned __int128 out = num / static_cast<unsigned __int128>(n - 1);
  if (out > static_cast<unsigned __int128>(UINT64_MAX)) throw OverflowError("dim_harmonic: result exceeds 64 bits");
  return static_cast<std::uint64_t>(out);
}

/// K_l(t) = (lambda + l)/lambda C_l^lambda(t).
inline double reproducing_kernel(const LambdaParam& lp, int l, double t) {
  if (l < 0) throw DomainError("reproducing_kernel: l must be >= 0");
  const double lam = lp.lambda();
  return (lam + l) / lam * gegenbauer(l, lam, t);
}

/// K_l(1); the sup norm of K_l on [-1,1].
inline double reproducing_kernel_at_one(const LambdaParam& lp, int l) {
  const double lam = lp.lambda();
  return (lam + l) / lam * gegenbauer_at_one(l, lam);
}

/// Funk-Hecke weight c(l, lambda): f^(l) = c(l, lambda) int f C_l^lambda (1-t^2)^{lambda-1/2} dt.
inline double gegenbauer_coefficient_weight(int l, double lambda) {
  using detail::log_gamma;
  const double log_c = log_gamma(l + 1.0) + std::log(lambda + l) + log_gamma(lambda) + log_gamma(2.0 * lambda) -
                       0.5 * std::log(std::numbers::pi) - log_gamma(2.0 * lambda + l) - log_gamma(lambda + 0.5);
  return std::exp(log_c);
}

}  // namespace pmw
