#pragma once

// Admissible pairs built from mixed rotational derivatives.
//
// For unit zonal seeds write a_l^m(f^(d)) = (prod_{i<m} beta_{l,i}) P_m^(d)(u),
// u = l(2 lambda + l). The P satisfy
//   P_m' = b_m(u) P_{m+1} - P_{m-1},   b_m(u) = beta_{l,m}^2,
// with b_m linear in u, and the sector pairing of two derivatives is the
// polynomial q_{d,d'}(u) = sum_m (prod_{i<m} b_i) P_m^(d) P_m^(d').
// Mixing coefficients gamma solve sum gamma_d gamma_d' q_{d,d'}(u) = u^D.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "pmw/error.hpp"
#include "pmw/gamma_vector.hpp"
#include "pmw/parallel.hpp"
#include "pmw/quadrature.hpp"
#include "pmw/rot_deriv.hpp"
#include "pmw/special_fn.hpp"
#include "pmw/wavelets.hpp"

namespace pmw {

/// Dense polynomial in u with ascending coefficients.
struct Polynomial {
  std::vector<double> c;

  Polynomial() = default;
  explicit Polynomial(std::vector<double> coeffs) : c(std::move(coeffs)) { trim(); }
  static Polynomial constant(double v) { return Polynomial({v}); }

  int degree() const { return c.empty() ? -1 : static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  double coeff(int j) const { return j >= 0 && j < static_cast<int>(c.size()) ? c[j] : 0.0; }

  double operator()(double u) const {
    double acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * u + *it;
    return acc;
  }

  void trim() {
    while (!c.empty() && c.back() == 0.0) c.pop_back();
  }

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
    std::vector<double> out(std::max(a.c.size(), b.c.size()), 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i) out[i] += a.c[i];
    for (std::size_t i = 0; i < b.c.size(); ++i) out[i] += b.c[i];
    return Polynomial(std::move(out));
  }
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-1.0) * b; }
  friend Polynomial operator*(double s, const Polynomial& a) {
    std::vector<double> out(a.c);
    for (double& v : out) v *= s;
    return Polynomial(std::move(out));
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<double> out(a.c.size() + b.c.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.c.size(); ++i)
      for (std::size_t j = 0; j < b.c.size(); ++j) out[i + j] += a.c[i] * b.c[j];
    return Polynomial(std::move(out));
  }
};

namespace detail {

// b_m(u) = beta_{l,m}^2 as a linear polynomial in u = l(2 lambda + l).
inline Polynomial beta_squared_linear(double lambda, int m) {
  const double two_lam = 2.0 * lambda;
  if (m == 0) return Polynomial({0.0, 1.0 / (two_lam + 1.0)});
  const double s = (m + 1.0) * (two_lam + m - 1.0) / ((two_lam + 2.0 * m - 1.0) * (two_lam + 2.0 * m + 1.0));
  return Polynomial({-s * m * (two_lam + m), s});
}

// P_m^(d) for m = 0..d.
inline std::vector<Polynomial> structure_polynomials(double lambda, int d) {
  std::vector<Polynomial> cur{Polynomial::constant(1.0)};
  for (int step = 0; step < d; ++step) {
    std::vector<Polynomial> next(cur.size() + 1);
    for (std::size_t m = 0; m < next.size(); ++m) {
      Polynomial v;
      if (m + 1 < cur.size()) v = beta_squared_linear(lambda, static_cast<int>(m)) * cur[m + 1];
      if (m >= 1 && m - 1 < cur.size()) v = v - cur[m - 1];
      next[m] = v;
    }
    cur = std::move(next);
  }
  return cur;
}

}  // namespace detail

/// q_{d,d'}(u); the zero polynomial when d and d' differ in parity.
inline Polynomial q_polynomial(double lambda, int d, int dp) {
  if (d < 0 || dp < 0) throw DomainError("q_polynomial: orders must be >= 0");
  if ((d - dp) % 2 != 0) return {};
  const auto Pd = detail::structure_polynomials(lambda, d);
  const auto Pdp = detail::structure_polynomials(lambda, dp);
  Polynomial acc;
  Polynomial weight = Polynomial::constant(1.0);
  for (std::size_t m = 0; m < std::min(Pd.size(), Pdp.size()); ++m) {
    acc = acc + weight * Pd[m] * Pdp[m];
    weight = weight * detail::beta_squared_linear(lambda, static_cast<int>(m));
  }
  // cancellation may leave tiny top coefficients; the degree is known exactly
  const int deg = (d + dp) / 2;
  if (static_cast<int>(acc.c.size()) > deg + 1) acc.c.resize(static_cast<std::size_t>(deg) + 1);
  acc.trim();
  return acc;
}

/// Table c[d][d'][J] of the u^J coefficients of q_{d,d'}.
class QTable {
 public:
  QTable(double lambda, int D) : D_(D), table_((D + 1) * (D + 1)) {
    for (int d = 0; d <= D; ++d)
      for (int e = 0; e <= D; ++e) table_[d * (D + 1) + e] = q_polynomial(lambda, d, e);
  }
  double operator()(int d, int e, int J) const { return table_[d * (D_ + 1) + e].coeff(J); }
  const Polynomial& poly(int d, int e) const { return table_[d * (D_ + 1) + e]; }
  int order() const { return D_; }

 private:
  int D_;
  std::vector<Polynomial> table_;
};

/// Residual of sum gamma_d gamma_d' q_{d,d'} - u^D, coefficient J = 0..D.
inline std::vector<double> gamma_system_residual(const QTable& q, const std::vector<double>& g) {
  const int D = q.order();
  std::vector<double> r(static_cast<std::size_t>(D) + 1, 0.0);
  for (int J = 0; J <= D; ++J) {
    double acc = J == D ? -1.0 : 0.0;
    for (int d = 0; d <= D; ++d)
      for (int e = 0; e <= D; ++e) acc += g[d] * g[e] * q(d, e, J);
    r[J] = acc;
  }
  return r;
}

namespace detail {

inline GammaVector make_gamma(double lambda, int D, std::vector<double> g) {
  GammaVector out;
  out.order = D;
  out.lambda = lambda;
  out.gammas = std::move(g);
  return out;
}

// D <= 3 by elimination. Roots are chosen with every gamma >= 0.
inline GammaVector solve_gamma_elimination(double lambda, int D) {
  const QTable q(lambda, D);
  std::vector<double> g(static_cast<std::size_t>(D) + 1, 0.0);
  if (D == 0) {
    g[0] = 1.0;
    return make_gamma(lambda, D, g);
  }
  const double top = q(D, D, D);
  if (!(top > 0.0)) throw SolverError("solve_gamma: leading coefficient is not positive");
  g[D] = 1.0 / std::sqrt(top);
  if (D == 1) return make_gamma(lambda, D, g);

  auto checked_sqrt = [&](double v, const char* what) {
    const double tol = 1e-12 * (1.0 + std::abs(v));
    if (v < -tol)
      throw SolverError(std::string("solve_gamma: no real solution (") + what + " = " + detail::num(v) +
                        " < 0) for lambda = " + detail::num(lambda) + ", order " + std::to_string(D));
    return std::sqrt(std::max(v, 0.0));
  };

  if (D == 2) {
    // u^1: g1^2 c11 + g2^2 c22 = 0
    g[1] = checked_sqrt(-g[2] * g[2] * q(2, 2, 1) / q(1, 1, 1), "gamma_1^2");
    return make_gamma(lambda, D, g);
  }
  // D == 3
  // u^2: g2^2 c22 + 2 g1 g3 c13 + g3^2 c33 = 0           (J = 2)
  // u^1: g1^2 c11 + 2 g1 g3 c13 + g2^2 c22 + g3^2 c33 = 0 (J = 1)
  const double g3 = g[3];
  const double a22 = q(2, 2, 2), a13 = q(1, 3, 2), a33 = q(3, 3, 2);
  const double b11 = q(1, 1, 1), b13 = q(1, 3, 1), b22 = q(2, 2, 1), b33 = q(3, 3, 1);
  // substitute g2^2 = -(2 g1 g3 a13 + g3^2 a33) / a22 into J = 1
  const double qa = b11;
  const double qb = 2.0 * g3 * b13 - 2.0 * g3 * a13 * b22 / a22;
  const double qc = g3 * g3 * b33 - g3 * g3 * a33 * b22 / a22;
  const double disc = qb * qb - 4.0 * qa * qc;
  const double root = checked_sqrt(disc, "discriminant of the gamma_1 equation");
  g[1] = (-qb + root) / (2.0 * qa);
  if (g[1] < 0.0) g[1] = (-qb - root) / (2.0 * qa);
  if (std::abs(g[1]) < 1e-13 * g3) g[1] = 0.0;
  if (g[1] < 0.0) throw SolverError("solve_gamma: no root with gamma_1 >= 0");
  g[2] = checked_sqrt(-(2.0 * g[1] * g3 * a13 + g3 * g3 * a33) / a22, "gamma_2^2");
  return make_gamma(lambda, D, g);
}

// Damped Newton on J = 1..D with gamma_0 = 0, fixed-seed restarts.
inline GammaVector solve_gamma_newton(double lambda, int D, int restarts, std::uint32_t seed) {
  const QTable q(lambda, D);
  const double gD = 1.0 / std::sqrt(q(D, D, D));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);

  // equation scales so every row is O(1)
  std::vector<double> row_scale(static_cast<std::size_t>(D) + 1, 1.0);
  for (int J = 1; J <= D; ++J) {
    double m = 0.0;
    for (int d = 0; d <= D; ++d)
      for (int e = 0; e <= D; ++e) m = std::max(m, std::abs(q(d, e, J)) * gD * gD);
    row_scale[J] = m > 0.0 ? 1.0 / m : 1.0;
  }
  auto residual = [&](const Eigen::VectorXd& x) {
    std::vector<double> g(static_cast<std::size_t>(D) + 1, 0.0);
    for (int i = 1; i <= D; ++i) g[i] = x(i - 1);
    const auto r = gamma_system_residual(q, g);
    Eigen::VectorXd out(D);
    for (int J = 1; J <= D; ++J) out(J - 1) = r[J] * row_scale[J];
    return out;
  };
  auto jacobian = [&](const Eigen::VectorXd& x) {
    Eigen::MatrixXd Jm(D, D);
    for (int J = 1; J <= D; ++J)
      for (int m = 1; m <= D; ++m) {
        double acc = 0.0;
        for (int d = 1; d <= D; ++d) acc += x(d - 1) * q(m, d, J);
        Jm(J - 1, m - 1) = 2.0 * acc * row_scale[J];
      }
    return Jm;
  };

  std::vector<Eigen::VectorXd> found;
  for (int attempt = 0; attempt < restarts; ++attempt) {
    Eigen::VectorXd x(D);
    for (int i = 0; i < D - 1; ++i) x(i) = 3.0 * gD * uni(rng);
    x(D - 1) = gD * (1.0 + 0.1 * uni(rng));
    double fnorm = residual(x).norm();
    for (int it = 0; it < 200 && fnorm > 1e-15; ++it) {
      const Eigen::VectorXd step = jacobian(x).colPivHouseholderQr().solve(-residual(x));
      double t = 1.0;
      bool moved = false;
      while (t > 1e-6) {
        const Eigen::VectorXd trial = x + t * step;
        const double fn = residual(trial).norm();
        if (fn < fnorm) {
          x = trial;
          fnorm = fn;
          moved = true;
          break;
        }
        t *= 0.5;
      }
      if (!moved) break;
    }
    if (fnorm > 1e-12 || !x.allFinite()) continue;
    if (x(D - 1) < 0.0) x = -x;
    // degenerate systems leave slowly converging components near zero; pin them and re-polish
    Eigen::VectorXd mask = Eigen::VectorXd::Ones(D);
    for (int i = 0; i < D - 1; ++i)
      if (std::abs(x(i)) < 1e-4 * x.cwiseAbs().maxCoeff()) mask(i) = 0.0;
    if (mask.sum() < D) {
      Eigen::VectorXd y = x.cwiseProduct(mask);
      for (int it = 0; it < 50; ++it) {
        const Eigen::MatrixXd Jm = jacobian(y) * mask.asDiagonal();
        const Eigen::VectorXd step = Jm.colPivHouseholderQr().solve(-residual(y));
        y += step.cwiseProduct(mask);
      }
      if (y.allFinite() && residual(y).norm() < 1e-13) x = y;
    }
    const bool dup = std::any_of(found.begin(), found.end(), [&](const Eigen::VectorXd& y) { return (y - x).norm() < 1e-8 * x.norm(); });
    if (!dup) found.push_back(x);
  }
  if (found.empty())
    throw SolverError("solve_gamma: Newton found no real solution for lambda = " + detail::num(lambda) + ", order " +
                      std::to_string(D) + " after " + std::to_string(restarts) + " restarts");
  // prefer solutions without negative entries, then the smallest norm
  auto negatives = [](const Eigen::VectorXd& x) { return (x.array() < -1e-12).count(); };
  std::sort(found.begin(), found.end(), [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    const auto na = negatives(a), nb = negatives(b);
    if (na != nb) return na < nb;
    return a.norm() < b.norm();
  });
  std::vector<double> g(static_cast<std::size_t>(D) + 1, 0.0);
  for (int i = 1; i <= D; ++i) g[i] = found.front()(i - 1);
  return make_gamma(lambda, D, g);
}

}  // namespace detail

inline constexpr int kMaxGammaOrder = 6;

/// Mixing coefficients for order D (0 <= D <= 6). Throws SolverError when no
/// real solution is found.
inline GammaVector solve_gamma(double lambda, int D) {
  if (D < 0 || D > kMaxGammaOrder) throw DomainError("solve_gamma: order must be in [0, 6]");
  if (!(lambda >= 0.5)) throw DomainError("solve_gamma: lambda must be >= 1/2");
  GammaVector out = D <= 3 ? detail::solve_gamma_elimination(lambda, D) : detail::solve_gamma_newton(lambda, D, 400, 20240601u);
  const QTable q(lambda, D);
  const auto r = gamma_system_residual(q, out.gammas);
  double worst = 0.0;
  for (double v : r) worst = std::max(worst, std::abs(v));
  if (worst > 1e-9)
    throw SolverError("solve_gamma: residual " + detail::num(worst) + " too large for lambda = " + detail::num(lambda));
  if (out.gammas[0] != 0.0 && D > 0) throw SolverError("solve_gamma: gamma_0 must vanish");
  return out;
}

inline GammaVector solve_gamma(const LambdaParam& lp, int D) { return solve_gamma(lp.lambda(), D); }

/// Numerically evaluated gamma-combination F = sum gamma_d f^(d) for the unit
/// zonal seed, degrees 0..L.
inline CoefficientField mixed_unit_field(const LambdaParam& lp, const GammaVector& g, int L) {
  std::vector<double> seed(static_cast<std::size_t>(L) + 1, 1.0);
  CoefficientField f = CoefficientField::zonal(lp, seed);
  CoefficientField acc(lp, L, g.order);
  for (int d = 0; d <= g.order; ++d) {
    if (d > 0) f = derivative_step(f);
    if (g[d] != 0.0) acc.add_scaled(f, g[d]);
  }
  return acc;
}

/// C = Sigma_n^2 / ((n-1)^D Gamma(D)).
inline double admissibility_constant(const LambdaParam& lp, int D) {
  if (D < 1) throw DomainError("admissibility_constant: order must be >= 1");
  return lp.sigma() * lp.sigma() / (std::pow(lp.n() - 1.0, D) * std::tgamma(static_cast<double>(D)));
}

struct DegreeCheck {
  int l = 0;
  double expected = 0.0;    // N(n,l)
  double closed = 0.0;      // sector sum times the exact rho integral
  double quadrature = 0.0;  // numerical rho integral of the coefficient products
  double rel_closed = 0.0;
  double rel_quadrature = 0.0;
  double rel_paths = 0.0;
};

struct PairReport {
  int n = 0;
  int order = 0;
  double C = 0.0;
  bool solved = true;
  std::string note;
  std::vector<DegreeCheck> degrees;

  double max_rel_closed() const {
    double m = 0.0;
    for (const auto& d : degrees) m = std::max(m, d.rel_closed);
    return m;
  }
  double max_rel_quadrature() const {
    double m = 0.0;
    for (const auto& d : degrees) m = std::max(m, d.rel_quadrature);
    return m;
  }
  double max_rel_paths() const {
    double m = 0.0;
    for (const auto& d : degrees) m = std::max(m, d.rel_paths);
    return m;
  }
  bool pass(double tol = 1e-6) const {
    return solved && !degrees.empty() && max_rel_closed() < tol && max_rel_quadrature() < tol;
  }
};

/// Condition 1 for the pair (G_rho^[D], C H_rho^[D]) at degrees 1..L_check.
inline PairReport verify_pair_condition1(const LambdaParam& lp, int D, int L_check) {
  if (D < 1) throw DomainError("verify_pair_condition1: order must be >= 1");
  if (L_check < 1) throw DomainError("verify_pair_condition1: L_check must be >= 1");
  PairReport rep;
  rep.n = lp.n();
  rep.order = D;
  rep.C = admissibility_constant(lp, D);
  GammaVector g;
  try {
    g = solve_gamma(lp, D);
  } catch (const SolverError& e) {
    rep.solved = false;
    rep.note = e.what();
    return rep;
  }
  const double lam = lp.lambda();
  const double C = rep.C;

  // rho-free sector sum: G and H at rho = 1 carry e^{-l} and e^{-l^2/(2 lambda)}
  const CoefficientField G1 = modified_wavelet_field(lp, g, KernelKind::Poisson, 1.0, L_check);
  const CoefficientField H1 = modified_wavelet_field(lp, g, KernelKind::Heat, 1.0, L_check);

  rep.degrees.resize(static_cast<std::size_t>(L_check));
  parallel_for(rep.degrees.size(), [&](std::size_t slot) {
    const int l = static_cast<int>(slot) + 1;
    DegreeCheck& dc = rep.degrees[slot];
    dc.l = l;
    dc.expected = static_cast<double>(dim_harmonic(lp.n(), l));
    const double u = l * (2.0 * lam + l);
    const double strip = std::exp(u / (2.0 * lam));  // undo e^{-l} e^{-l^2/(2 lambda)} at rho = 1
    const double sector = sector_pairing(G1, H1, l) * strip;
    dc.closed = C * sector * std::tgamma(static_cast<double>(D)) * std::pow(2.0 * lam / u, D);

    auto integrand = [&](double rho) {
      // beyond rho ~ 750 every l >= 1 coefficient underflows; rho^D would overflow first
      if (rho == 0.0 || rho > 750.0) return 0.0;
      const CoefficientField G = modified_wavelet_field(lp, g, KernelKind::Poisson, rho, l);
      const CoefficientField H = modified_wavelet_field(lp, g, KernelKind::Heat, rho, l);
      return C * sector_pairing(G, H, l) / rho;
    };
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0;
    dc.quadrature = integrator.integrate(integrand, 0.0, std::numeric_limits<double>::infinity(), 1e-12, &err);
    dc.rel_closed = std::abs(dc.closed - dc.expected) / dc.expected;
    dc.rel_quadrature = std::abs(dc.quadrature - dc.expected) / dc.expected;
    dc.rel_paths = std::abs(dc.closed - dc.quadrature) / std::abs(dc.closed);
  });
  return rep;
}

/// Coefficients z_l of f ^* g = sum_l z_l K_l(x . y), i.e. z_l = <f_l, g_l> / N(n,l)
/// with the pairing over an orthonormal basis of H_l.
inline std::vector<double> zonal_product_series(const CoefficientField& f, const CoefficientField& g) {
  if (!(f.lambda_param() == g.lambda_param())) throw DomainError("zonal_product_series: dimension mismatch");
  const LambdaParam& lp = f.lambda_param();
  const int L = std::min(f.degree(), g.degree());
  std::vector<double> z(static_cast<std::size_t>(L) + 1);
  for (int l = 0; l <= L; ++l) z[l] = sector_pairing(f, g, l) / static_cast<double>(dim_harmonic(lp.n(), l));
  return z;
}

/// Same coefficients attached to C_l^lambda instead of K_l.
inline std::vector<double> zonal_product_gegenbauer(const CoefficientField& f, const CoefficientField& g) {
  auto z = zonal_product_series(f, g);
  const double lam = f.lambda_param().lambda();
  for (std::size_t l = 0; l < z.size(); ++l) z[l] *= (lam + l) / lam;
  return z;
}

/// One term (1/Sigma_n^2) (2 lambda)^D Gamma(D, R u / (2 lambda)) of the tail at degree l.
inline double tail_term_coefficient(const LambdaParam& lp, int D, double R, int l) {
  const double lam = lp.lambda();
  const double u = l * (2.0 * lam + l);
  return std::pow(2.0 * lam, D) * boost::math::tgamma(static_cast<double>(D), R * u / (2.0 * lam)) / (lp.sigma() * lp.sigma());
}

/// Degree at which the tail series may be cut with sup-norm error below eps.
inline int tail_truncation_degree(const LambdaParam& lp, int D, double R, double eps) {
  if (!(R > 0.0)) throw DomainError("tail_integral: R must be positive");
  for (int L = 1; L <= kMaxDegree; ++L) {
    const double t1 = tail_term_coefficient(lp, D, R, L + 1) * reproducing_kernel_at_one(lp, L + 1);
    const double t2 = tail_term_coefficient(lp, D, R, L + 2) * reproducing_kernel_at_one(lp, L + 2);
    if (t1 == 0.0) return L;
    const double q = t2 / t1;
    if (q >= 1.0) continue;
    if (t1 / (1.0 - q) < eps) return L;
  }
  throw TruncationError("tail_integral: R = " + detail::num(R) + " needs more than " + std::to_string(kMaxDegree) + " degrees");
}

/// int_R^inf (G_rho ^* H_rho)(t) d rho / rho, summed over l >= 1 up to L.
inline double tail_integral(const LambdaParam& lp, int D, double R, double t, int L) {
  if (D < 1) throw DomainError("tail_integral: order must be >= 1");
  if (!(R > 0.0)) throw DomainError("tail_integral: R must be positive");
  if (L < 1) throw DomainError("tail_integral: L must be >= 1");
  if (L > kMaxDegree) throw TruncationError("tail_integral: L exceeds the degree cap");
  detail::check_argument(t);
  const double lam = lp.lambda();
  std::vector<double> c(static_cast<std::size_t>(L) + 1);
  gegenbauer_fill(lam, t, c);
  double acc = 0.0;
  for (int l = 1; l <= L; ++l) acc += tail_term_coefficient(lp, D, R, l) * (lam + l) / lam * c[l];
  return acc;
}

/// Tail with automatic truncation at sup-norm error eps.
inline double tail_integral(const LambdaParam& lp, int D, double R, double t, double eps = 1e-12) {
  return tail_integral(lp, D, R, t, tail_truncation_degree(lp, D, R, eps));
}

/// int_{S^n} |tail(x . e)| d sigma(x) by composite Gauss-Legendre in theta.
inline double tail_l1_norm(const LambdaParam& lp, int D, double R, int panels = 400, int per_panel = 10) {
  const int L = tail_truncation_degree(lp, D, R, 1e-12);
  const double lam = lp.lambda();
  std::vector<double> coef(static_cast<std::size_t>(L) + 1, 0.0);
  for (int l = 1; l <= L; ++l) coef[l] = tail_term_coefficient(lp, D, R, l) * (lam + l) / lam;
  const GaussJacobiRule gl = gauss_legendre(per_panel);
  std::vector<double> c(static_cast<std::size_t>(L) + 1);
  const double h = std::numbers::pi / panels;
  double acc = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double a = p * h;
    for (std::size_t i = 0; i < gl.size(); ++i) {
      const double th = a + 0.5 * h * (gl.nodes[i] + 1.0);
      gegenbauer_fill(lam, std::cos(th), c);
      double v = 0.0;
      for (int l = 1; l <= L; ++l) v += coef[l] * c[l];
      acc += 0.5 * h * gl.weights[i] * std::abs(v) * std::pow(std::sin(th), lp.n() - 1);
    }
  }
  return sphere_measure(lp.n() - 1) * acc;
}

}  // namespace pmw
