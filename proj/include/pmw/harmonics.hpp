#pragma once

// Spherical geometry and the sector of hyperspherical harmonics
// Y_l^{(k1,0,...,0)}.
//
// Coordinates on S^n (n >= 2):
//   x_1 = cos t1, x_2 = sin t1 cos t2, ..., x_n = sin t1...sin t_{n-1} cos phi,
//   x_{n+1} = sin t1...sin t_{n-1} sin phi.
// For n = 2 there is no t2; its role is played by phi.
//
// Sector basis for n >= 3:
//   Y_l^{k}(x) = A_l^k C_{l-k}^{lambda+k}(cos t1) sin^k t1 C_k^{lambda-1/2}(cos t2).
// For n = 2 the real combinations are used:
//   Yt_l^0 = Y_l^0,   Yt_l^k = Y_l^k + Y_l^{-k} = 2 A_l^k C_{l-k}^{k+1/2}(cos t1) sin^k t1 cos(k phi),  k >= 1.
// Yt_l^k (k >= 1) has squared norm 2 under <f,g> = (1/Sigma_n) int f g dsigma;
// inner products over coefficient fields carry that weight explicitly.
// Note the zonal member is taken as Y_l^0 itself, not 2 Y_l^0; the
// derivative recursion in rot_deriv.hpp is written for this choice.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <string>
#include <vector>

#include "pmw/error.hpp"
#include "pmw/quadrature.hpp"
#include "pmw/special_fn.hpp"

namespace pmw {

struct SphericalPoint {
  std::vector<double> thetas;  // t1..t_{n-1}, each in [0, pi]
  double phi = 0.0;            // [0, 2 pi)

  int dimension() const { return static_cast<int>(thetas.size()) + 1; }
  double theta1() const { return thetas.at(0); }
  /// Second sector angle: t2 for n >= 3, phi for n = 2.
  double sector_angle() const { return thetas.size() >= 2 ? thetas[1] : phi; }

  static SphericalPoint north_pole(int n) { return SphericalPoint{std::vector<double>(static_cast<std::size_t>(n - 1), 0.0), 0.0}; }
  /// Point with the given (t1, t2) and every further angle zero. For n = 2, t2 is phi.
  static SphericalPoint sector(int n, double t1, double t2) {
    SphericalPoint p = north_pole(n);
    p.thetas[0] = t1;
    if (n == 2) p.phi = t2;
    else p.thetas[1] = t2;
    return p;
  }
};

struct SectorHarmonicIndex {
  int l = 0;
  int k1 = 0;

  SectorHarmonicIndex(int l_, int k1_) : l(l_), k1(k1_) {
    if (l < 0 || k1 < 0) throw DomainError("SectorHarmonicIndex: negative index");
  }
};

inline std::vector<double> to_cartesian(const SphericalPoint& p) {
  const int n = p.dimension();
  if (n < 2) throw DomainError("to_cartesian: need at least one theta");
  std::vector<double> x(static_cast<std::size_t>(n) + 1);
  double s = 1.0;
  for (int i = 0; i < n - 1; ++i) {
    x[i] = s * std::cos(p.thetas[i]);
    s *= std::sin(p.thetas[i]);
  }
  x[n - 1] = s * std::cos(p.phi);
  x[n] = s * std::sin(p.phi);
  return x;
}

inline SphericalPoint from_cartesian(std::span<const double> v) {
  const int n = static_cast<int>(v.size()) - 1;
  if (n < 2) throw DomainError("from_cartesian: need a vector in R^{n+1}, n >= 2");
  double norm2 = 0.0;
  for (double c : v) norm2 += c * c;
  if (norm2 == 0.0) throw DomainError("from_cartesian: zero vector");
  const double inv = 1.0 / std::sqrt(norm2);

  // tail[i] = |(x_{i+1}, ..., x_{n+1})|, computed from the back for accuracy
  std::vector<double> x(v.begin(), v.end());
  for (double& c : x) c *= inv;
  std::vector<double> tail(x.size() + 1, 0.0);
  for (int i = n; i >= 0; --i) tail[i] = std::hypot(tail[i + 1], x[i]);

  SphericalPoint p;
  p.thetas.assign(static_cast<std::size_t>(n - 1), 0.0);
  for (int i = 0; i < n - 1; ++i) {
    if (tail[i] == 0.0) break;  // chart degeneracy: remaining angles stay 0
    p.thetas[i] = std::atan2(tail[i + 1], x[i]);
  }
  if (tail[n - 1] > 0.0) {
    double phi = std::atan2(x[n], x[n - 1]);
    if (phi < 0.0) phi += 2.0 * std::numbers::pi;
    if (phi >= 2.0 * std::numbers::pi) phi = 0.0;
    p.phi = phi;
  }
  return p;
}

/// Rotation by Theta in the (x_1, x_2) plane, applied in Cartesian coordinates.
inline std::vector<double> rotate_in_plane(std::span<const double> x, double theta) {
  std::vector<double> y(x.begin(), x.end());
  const double c = std::cos(theta), s = std::sin(theta);
  y[0] = c * x[0] - s * x[1];
  y[1] = s * x[0] + c * x[1];
  return y;
}

inline SphericalPoint rotate_in_plane(const SphericalPoint& p, double theta) {
  const auto x = to_cartesian(p);
  return from_cartesian(rotate_in_plane(std::span<const double>(x), theta));
}

/// Table of A_l^{(k,0,...,0)} for 0 <= k <= min(l, kmax), 0 <= l <= L.
class SectorNorms {
 public:
  SectorNorms(const LambdaParam& lp, int L, int kmax) : L_(L), kmax_(kmax), table_((L + 1) * (kmax + 1), 0.0) {
    for (int l = 0; l <= L; ++l)
      for (int k = 0; k <= std::min(l, kmax); ++k) table_[index(l, k)] = norm_const_A(lp, l, k);
  }
  double operator()(int l, int k) const { return table_[index(l, k)]; }
  int degree() const { return L_; }
  int order_bound() const { return kmax_; }

 private:
  std::size_t index(int l, int k) const { return static_cast<std::size_t>(l) * (kmax_ + 1) + k; }
  int L_;
  int kmax_;
  std::vector<double> table_;
};

namespace detail {

// Angular factor of the sector harmonic in the second sector angle.
inline double sector_angular(const LambdaParam& lp, int k, double t2) {
  if (lp.n() == 2) return k == 0 ? 1.0 : 2.0 * std::cos(k * t2);
  return gegenbauer(k, lp.lambda() - 0.5, std::cos(t2));
}

inline double int_pow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

}  // namespace detail

/// Y_l^{(k1,0,...,0)}(p) for n >= 3, Yt_l^{k1}(p) for n = 2. Zero when k1 > l.
inline double eval_sector_harmonic(const LambdaParam& lp, const SectorHarmonicIndex& idx, const SphericalPoint& p) {
  if (p.dimension() != lp.n()) throw DomainError("eval_sector_harmonic: point dimension does not match n");
  if (idx.k1 > idx.l) return 0.0;
  const double t1 = p.theta1();
  const double s1 = std::sin(t1);
  if (idx.k1 >= 1 && s1 == 0.0) return 0.0;
  const double radial = gegenbauer(idx.l - idx.k1, lp.lambda() + idx.k1, std::clamp(std::cos(t1), -1.0, 1.0));
  return norm_const_A(lp, idx.l, idx.k1) * radial * detail::int_pow(s1, idx.k1) *
         detail::sector_angular(lp, idx.k1, p.sector_angle());
}

/// Squared norm of a sector basis function under the normalized inner product.
inline double sector_basis_norm2(const LambdaParam& lp, int k1) { return (lp.n() == 2 && k1 >= 1) ? 2.0 : 1.0; }

/// Gegenbauer coefficient f^(l) = c(l,lambda) int f C_l^lambda (1-t^2)^{lambda-1/2} dt
/// from samples of f at the nodes of a Gauss-Gegenbauer rule of order lambda.
inline double gegenbauer_coefficient(const LambdaParam& lp, const GaussJacobiRule& rule, std::span<const double> values, int l) {
  const double a = lp.lambda() - 0.5;
  if (rule.alpha != a || rule.beta != a)
    throw QuadratureError("gegenbauer_coefficient: rule weight does not match (1-t^2)^{lambda-1/2}");
  if (values.size() != rule.size()) throw DomainError("gegenbauer_coefficient: sample count differs from node count");
  if (l < 0) throw DomainError("gegenbauer_coefficient: l must be >= 0");
  if (2 * l > rule.exact_degree())
    throw QuadratureError("gegenbauer_coefficient: rule with " + std::to_string(rule.size()) +
                          " nodes cannot resolve degree " + std::to_string(l));
  double acc = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i)
    acc += rule.weights[i] * values[i] * gegenbauer(l, lp.lambda(), rule.nodes[i]);
  return gegenbauer_coefficient_weight(l, lp.lambda()) * acc;
}

}  // namespace pmw
