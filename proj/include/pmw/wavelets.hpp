#pragma once

// Poisson and heat kernels at the north pole, directional wavelets built
// from their rotational derivatives, and truncation control.
//
//   Poisson:  p_rho   = (1/Sigma_n) sum_l e^{-rho l}            K_l(x . e)
//   heat:     h_rho   = (1/Sigma_n) sum_l e^{-rho l^2/(2 lambda)} K_l(x . e)
//   g_rho^[d] = rho^d d^d/dTheta^d p_rho(Upsilon_Theta x)|_0
//
// Closed forms use r = e^{-rho} and D = 1 - 2 r cos t1 + r^2.

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "pmw/error.hpp"
#include "pmw/gamma_vector.hpp"
#include "pmw/harmonics.hpp"
#include "pmw/rot_deriv.hpp"
#include "pmw/special_fn.hpp"

namespace pmw {

enum class KernelKind { Poisson, Heat };

inline const char* to_string(KernelKind k) { return k == KernelKind::Poisson ? "poisson" : "heat"; }

struct WaveletSpec {
  LambdaParam lp;
  KernelKind kind = KernelKind::Poisson;
  int order = 0;
  double rho = 1.0;

  WaveletSpec(const LambdaParam& lp_, KernelKind kind_, int order_, double rho_) : lp(lp_), kind(kind_), order(order_), rho(rho_) {
    if (!(rho > 0.0) || !std::isfinite(rho)) throw DomainError("WaveletSpec: rho must be positive and finite");
    if (order < 0) throw DomainError("WaveletSpec: derivative order must be >= 0");
  }

  double r() const { return std::exp(-rho); }
};

/// Degree cap for every truncated series in the library.
inline constexpr int kMaxDegree = 5000;

namespace detail {

inline double kernel_log_weight(KernelKind kind, double lambda, double rho, int l) {
  return kind == KernelKind::Poisson ? -rho * l : -rho * double(l) * l / (2.0 * lambda);
}

}  // namespace detail

/// a_l^0 of the kernel in the sector basis, l = 0..L.
inline std::vector<double> kernel_zonal_coeffs(const WaveletSpec& spec, int L) {
  if (L < 0) throw DomainError("kernel_zonal_coeffs: L must be >= 0");
  if (L > kMaxDegree) throw TruncationError("kernel_zonal_coeffs: L exceeds the degree cap " + std::to_string(kMaxDegree));
  const double lam = spec.lp.lambda();
  std::vector<double> a(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) {
    const double w = std::exp(detail::kernel_log_weight(spec.kind, lam, spec.rho, l));
    a[l] = (lam + l) / lam * w / (spec.lp.sigma() * norm_const_A(spec.lp, l, 0));
  }
  return a;
}

/// Smallest L whose dropped degrees contribute less than eps in sup norm to
/// scale * (d-th rotational derivative of the kernel), scale being rho^d for
/// Poisson and 1 for heat. Uses |d^d/dTheta^d F_l| <= l^d |F_l|_inf on H_l and
/// |K_l| <= K_l(1); the tail is summed as a geometric series once the term
/// ratio has settled below one.
inline int truncation_degree(const WaveletSpec& spec, double eps, double extra_scale = 1.0) {
  if (!(eps > 0.0)) throw DomainError("truncation_degree: eps must be positive");
  using detail::log_gamma;
  const double lam = spec.lp.lambda();
  const int d = spec.order;
  double log_scale = std::log(extra_scale) - std::log(spec.lp.sigma());
  if (spec.kind == KernelKind::Poisson) log_scale += d * std::log(spec.rho);
  const double lg2l = log_gamma(2.0 * lam);
  auto log_term = [&](int l) {
    const double log_k1 = std::log((lam + l) / lam) + log_gamma(2.0 * lam + l) - lg2l - log_gamma(l + 1.0);
    return log_scale + d * std::log(double(l)) + log_k1 + detail::kernel_log_weight(spec.kind, lam, spec.rho, l);
  };
  const double log_eps = std::log(eps);
  for (int L = 0; L <= kMaxDegree; ++L) {
    const double t1 = log_term(L + 1);
    const double t2 = log_term(L + 2);
    const double log_q = t2 - t1;
    if (log_q >= 0.0) continue;
    // once the ratio is below one it only decreases, so the tail is dominated by t1 / (1 - q)
    const double log_tail = t1 - std::log1p(-std::exp(log_q));
    if (log_tail < log_eps) return L;
  }
  throw TruncationError("truncation_degree: tolerance " + detail::num(eps) + " at rho = " + detail::num(spec.rho) +
                        " needs more than " + std::to_string(kMaxDegree) + " degrees");
}

/// Unscaled d-th rotational derivative g_rho^(d) or h_rho^(d).
inline CoefficientField kernel_derivative_field(const WaveletSpec& spec, int L) {
  return derivative_order(kernel_zonal_coeffs(spec, L), spec.lp, spec.order);
}

/// g_rho^[d] = rho^d g_rho^(d) for the Poisson kernel, bare h_rho^(d) for heat.
/// With tol > 0 the call fails if L is below the recommended truncation.
inline CoefficientField directional_wavelet_field(const WaveletSpec& spec, int L, double tol = 0.0) {
  if (tol > 0.0) {
    const int need = truncation_degree(spec, tol);
    if (L < need)
      throw TruncationError("directional_wavelet_field: L = " + std::to_string(L) + " below required " + std::to_string(need));
  }
  CoefficientField f = kernel_derivative_field(spec, L);
  if (spec.kind == KernelKind::Poisson) f *= std::pow(spec.rho, spec.order);
  return f;
}

/// Field at the recommended truncation for tolerance tol.
inline CoefficientField directional_wavelet_field_auto(const WaveletSpec& spec, double tol) {
  return directional_wavelet_field(spec, truncation_degree(spec, tol));
}

/// Poisson kernel p_rho(x) with x . e = cos t1.
inline double poisson_closed(const LambdaParam& lp, double rho, double t1) {
  const double r = std::exp(-rho);
  const double D = 1.0 - 2.0 * r * std::cos(t1) + r * r;
  return (1.0 - r * r) / (lp.sigma() * std::pow(D, lp.lambda() + 1.0));
}

inline double g1_closed(const WaveletSpec& spec, double t1, double t2) {
  const double lam = spec.lp.lambda();
  const double r = spec.r();
  const double D = 1.0 - 2.0 * r * std::cos(t1) + r * r;
  return -2.0 * spec.rho * (lam + 1.0) * r * (1.0 - r * r) * std::sin(t1) * std::cos(t2) /
         (spec.lp.sigma() * std::pow(D, lam + 2.0));
}

inline double g2_closed(const WaveletSpec& spec, double t1, double t2) {
  const double lam = spec.lp.lambda();
  const double r = spec.r();
  const double c1 = std::cos(t1), s1 = std::sin(t1), c2 = std::cos(t2);
  const double D = 1.0 - 2.0 * r * c1 + r * r;
  const double sig = spec.lp.sigma();
  const double first = -2.0 * (lam + 1.0) * r * (1.0 - r * r) * c1 / (sig * std::pow(D, lam + 2.0));
  const double second =
      4.0 * (lam + 1.0) * (lam + 2.0) * r * r * (1.0 - r * r) * s1 * s1 * c2 * c2 / (sig * std::pow(D, lam + 3.0));
  return spec.rho * spec.rho * (first + second);
}

/// G_rho^[D] = rho^D sum_d gamma_d g_rho^(d) (Poisson) or H_rho^[D] = sum_d gamma_d h_rho^(d) (heat).
inline CoefficientField modified_wavelet_field(const LambdaParam& lp, const GammaVector& gamma, KernelKind kind, double rho, int L) {
  if (static_cast<int>(gamma.gammas.size()) != gamma.order + 1)
    throw DomainError("modified_wavelet_field: gamma vector length does not match its order");
  if (std::abs(gamma.lambda - lp.lambda()) > 1e-15)
    throw DomainError("modified_wavelet_field: gamma vector was solved for a different lambda");
  const WaveletSpec spec(lp, kind, 0, rho);
  CoefficientField f = CoefficientField::zonal(lp, kernel_zonal_coeffs(spec, L));
  CoefficientField acc(lp, L, gamma.order);
  for (int d = 0; d <= gamma.order; ++d) {
    if (d > 0) f = derivative_step(f);
    if (gamma[d] != 0.0) acc.add_scaled(f, gamma[d]);
  }
  if (kind == KernelKind::Poisson) acc *= std::pow(rho, gamma.order);
  return acc;
}

}  // namespace pmw
