#pragma once

// Small-scale limits of the directional Poisson wavelets.
//
//   rho^n g_rho^[d](S^{-1}(rho xi)) -> G^[d](xi) = d^d/dxi_2^d  2 / (Sigma_n (1 + |xi|^2)^{lambda+1})
//
// with the inverse stereographic map t1 = 2 arctan(|xi| / 2),
// (x_2, ..., x_{n+1}) = sin t1 * xi / |xi|.

#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "pmw/error.hpp"
#include "pmw/harmonics.hpp"
#include "pmw/parallel.hpp"
#include "pmw/rot_deriv.hpp"
#include "pmw/special_fn.hpp"
#include "pmw/wavelets.hpp"

namespace pmw {

struct EuclideanPoint {
  std::vector<double> coords;  // xi_2, ..., xi_{n+1}

  int dimension() const { return static_cast<int>(coords.size()); }
  double radius() const {
    double s = 0.0;
    for (double c : coords) s += c * c;
    return std::sqrt(s);
  }
  EuclideanPoint scaled(double s) const {
    EuclideanPoint p = *this;
    for (double& c : p.coords) c *= s;
    return p;
  }
};

inline SphericalPoint inverse_stereographic(const EuclideanPoint& xi, int n) {
  if (xi.dimension() != n) throw DomainError("inverse_stereographic: xi must have n coordinates");
  const double R = xi.radius();
  if (R == 0.0) return SphericalPoint::north_pole(n);
  const double t1 = 2.0 * std::atan(0.5 * R);
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  x[0] = std::cos(t1);
  const double s = std::sin(t1) / R;
  for (int i = 0; i < n; ++i) x[i + 1] = s * xi.coords[i];
  return from_cartesian(x);
}

namespace detail {

// c * xi_2^i * w^{-(lambda + 1 + j)} with w = 1 + |xi|^2, keyed by (i, j).
using LimitTerms = std::map<std::pair<int, int>, double>;

inline LimitTerms limit_terms(const LambdaParam& lp, int d) {
  const double lam = lp.lambda();
  LimitTerms cur{{{0, 0}, 2.0 / lp.sigma()}};
  for (int step = 0; step < d; ++step) {
    LimitTerms next;
    for (const auto& [key, c] : cur) {
      const auto [i, j] = key;
      if (i > 0) next[{i - 1, j}] += c * i;
      next[{i + 1, j + 1}] += -2.0 * (lam + 1.0 + j) * c;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

/// G^[d](xi) by exact differentiation of the rational form.
inline double euclidean_limit_symbolic(const LambdaParam& lp, int d, const EuclideanPoint& xi) {
  if (d < 0) throw DomainError("euclidean_limit_symbolic: d must be >= 0");
  if (xi.dimension() != lp.n()) throw DomainError("euclidean_limit_symbolic: xi must have n coordinates");
  const double R = xi.radius();
  const double w = 1.0 + R * R;
  const double x2 = xi.coords[0];
  double acc = 0.0;
  for (const auto& [key, c] : detail::limit_terms(lp, d))
    acc += c * std::pow(x2, key.first) * std::pow(w, -(lp.lambda() + 1.0 + key.second));
  return acc;
}

/// G^[d](xi); closed forms for d <= 2, symbolic differentiation above.
inline double euclidean_limit_eval(const LambdaParam& lp, int d, const EuclideanPoint& xi) {
  if (d < 0 || d > 6) throw DomainError("euclidean_limit_eval: need 0 <= d <= 6");
  if (xi.dimension() != lp.n()) throw DomainError("euclidean_limit_eval: xi must have n coordinates");
  const double lam = lp.lambda();
  const double sig = lp.sigma();
  const double R = xi.radius();
  const double w = 1.0 + R * R;
  const double x2 = xi.coords[0];
  switch (d) {
    case 0:
      return 2.0 / (sig * std::pow(w, lam + 1.0));
    case 1:
      return -4.0 * (lam + 1.0) * x2 / (sig * std::pow(w, lam + 2.0));
    case 2:
      return -4.0 * (lam + 1.0) / (sig * std::pow(w, lam + 2.0)) +
             8.0 * (lam + 1.0) * (lam + 2.0) * x2 * x2 / (sig * std::pow(w, lam + 3.0));
    default:
      return euclidean_limit_symbolic(lp, d, xi);
  }
}

/// rho^n g_rho^[d](S^{-1}(rho xi)); closed forms for d <= 2, truncated series above.
inline double scaled_wavelet_at(const LambdaParam& lp, int d, double rho, const EuclideanPoint& xi, double power, double tol = 1e-13) {
  const SphericalPoint p = inverse_stereographic(xi.scaled(rho), lp.n());
  const double t1 = p.theta1(), t2 = p.sector_angle();
  const WaveletSpec spec(lp, KernelKind::Poisson, d, rho);
  double g = 0.0;
  switch (d) {
    case 0:
      g = poisson_closed(lp, rho, t1);
      break;
    case 1:
      g = g1_closed(spec, t1, t2);
      break;
    case 2:
      g = g2_closed(spec, t1, t2);
      break;
    default: {
      // the series must resolve a function of size ~rho^{-n}
      const int L = truncation_degree(spec, tol * std::pow(rho, -static_cast<double>(lp.n())));
      g = synthesize(directional_wavelet_field(spec, L), p);
    }
  }
  return std::pow(rho, power) * g;
}

struct LimitProbe {
  int n = 0;
  int d = 0;
  double power = 0.0;
  double limit = 0.0;
  std::vector<double> rho;
  std::vector<double> value;
  std::vector<double> error;  // |value - limit|
  std::vector<double> ratio;  // error[i] / error[i+1]

  bool decreasing() const {
    for (std::size_t i = 1; i < error.size(); ++i)
      if (!(error[i] < error[i - 1])) return false;
    return true;
  }
  /// Least-squares slope of log error against log rho.
  double empirical_order() const {
    const std::size_t m = rho.size();
    if (m < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const double x = std::log(rho[i]), y = std::log(error[i]);
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    return (m * sxy - sx * sy) / (m * sxx - sx * sx);
  }
};

/// E(rho) = |rho^power g_rho^[d](S^{-1}(rho xi)) - G^[d](xi)| along a decreasing rho sequence.
/// power defaults to n, the scaling under which the limit exists.
inline LimitProbe limit_convergence_probe(const LambdaParam& lp, int d, const EuclideanPoint& xi, const std::vector<double>& rhos,
                                          double power = -1.0) {
  if (rhos.empty()) throw DomainError("limit_convergence_probe: empty rho sequence");
  for (std::size_t i = 0; i < rhos.size(); ++i) {
    if (rhos[i] < 1e-3) throw DomainError("limit_convergence_probe: rho below 1e-3");
    if (i > 0 && !(rhos[i] < rhos[i - 1])) throw DomainError("limit_convergence_probe: rho sequence must decrease");
  }
  LimitProbe out;
  out.n = lp.n();
  out.d = d;
  out.power = power < 0.0 ? static_cast<double>(lp.n()) : power;
  out.limit = euclidean_limit_eval(lp, d, xi);
  out.rho = rhos;
  out.value.resize(rhos.size());
  parallel_for(rhos.size(), [&](std::size_t i) { out.value[i] = scaled_wavelet_at(lp, d, rhos[i], xi, out.power); });
  for (double v : out.value) out.error.push_back(std::abs(v - out.limit));
  for (std::size_t i = 0; i + 1 < out.error.size(); ++i) out.ratio.push_back(out.error[i] / out.error[i + 1]);
  return out;
}

}  // namespace pmw
