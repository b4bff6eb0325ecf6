#pragma once

// Quadrature grids on S^n, the spherical wavelet transform
//   W(rho, U) = (1/Sigma_n) int Psi_rho(U^{-1} x) f(x) d sigma(x)
// and its inversion
//   f(x) = int_0^inf int_SO(n+1) W(rho, U) Omega_rho(U^{-1} x) d nu(U) d rho / rho.
//
// On S^2 rotations are parametrized as U = Z(a) Y(b) Z(c) where Z rotates the
// (x2, x3) plane (a shift of phi) and Y is the (x1, x2) rotation used for the
// rotational derivative. Normalized Haar measure: sin b da db dc / (8 pi^2).
// Because the sphere grid and the a, c grids share one uniform spacing, the
// transform factorizes and costs O(#rho #b #a #nodes) instead of one synthesis
// per (rotation, node) pair.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pmw/admissibility.hpp"
#include "pmw/error.hpp"
#include "pmw/gamma_vector.hpp"
#include "pmw/harmonics.hpp"
#include "pmw/parallel.hpp"
#include "pmw/quadrature.hpp"
#include "pmw/rot_deriv.hpp"
#include "pmw/special_fn.hpp"
#include "pmw/wavelets.hpp"

namespace pmw {

struct SphereGrid {
  int n = 2;
  std::vector<SphericalPoint> nodes;
  std::vector<double> weights;  // sum to Sigma_n

  // S^2 product layout (theta-major): node index = t * phi_count + p, phi_p = 2 pi p / phi_count.
  int theta_count = 0;
  int phi_count = 0;

  std::size_t size() const { return nodes.size(); }

  double integrate(std::span<const double> values) const {
    if (values.size() != nodes.size()) throw DomainError("SphereGrid::integrate: sample count mismatch");
    double acc = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) acc += weights[i] * values[i];
    return acc;
  }

  template <class F>
  std::vector<double> sample(F&& f) const {
    std::vector<double> out;
    out.reserve(nodes.size());
    for (const auto& p : nodes) out.push_back(f(p));
    return out;
  }
};

namespace detail {

inline std::vector<double> uniform_angles(int count) {
  std::vector<double> a(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) a[i] = 2.0 * std::numbers::pi * i / count;
  return a;
}

}  // namespace detail

/// S^2 product grid: Gauss-Legendre in cos t1 with theta_nodes nodes, uniform phi.
inline SphereGrid build_s2_grid(int theta_nodes, int phi_nodes) {
  if (theta_nodes < 1 || phi_nodes < 1) throw DomainError("build_s2_grid: node counts must be positive");
  const GaussJacobiRule gl = gauss_legendre(theta_nodes);
  const auto phis = detail::uniform_angles(phi_nodes);
  SphereGrid g;
  g.n = 2;
  g.theta_count = theta_nodes;
  g.phi_count = phi_nodes;
  for (int t = 0; t < theta_nodes; ++t) {
    const double th = std::acos(std::clamp(gl.nodes[t], -1.0, 1.0));
    for (int p = 0; p < phi_nodes; ++p) {
      g.nodes.push_back(SphericalPoint::sector(2, th, phis[p]));
      g.weights.push_back(gl.weights[t] * 2.0 * std::numbers::pi / phi_nodes);
    }
  }
  return g;
}

/// Product grid integrating every polynomial of degree <= L on S^n exactly.
inline SphereGrid build_sphere_grid(int n, int L) {
  if (n < 2) throw DomainError("build_sphere_grid: n must be >= 2");
  if (L < 0) throw DomainError("build_sphere_grid: L must be >= 0");
  const int m = L / 2 + 1;
  const int nphi = L + 1;
  if (n == 2) return build_s2_grid(m, nphi);

  // t_i carries weight sin^{n-i} t_i, i.e. (1-s^2)^{(n-i-1)/2} in s = cos t_i
  std::vector<GaussJacobiRule> rules;
  for (int i = 1; i <= n - 1; ++i) {
    const double a = 0.5 * (n - i - 1);
    rules.push_back(gauss_jacobi(m, a, a));
  }
  const auto phis = detail::uniform_angles(nphi);
  SphereGrid g;
  g.n = n;
  std::vector<int> idx(static_cast<std::size_t>(n - 1), 0);
  while (true) {
    SphericalPoint p;
    p.thetas.resize(static_cast<std::size_t>(n - 1));
    double w = 2.0 * std::numbers::pi / nphi;
    for (int i = 0; i < n - 1; ++i) {
      p.thetas[i] = std::acos(std::clamp(rules[i].nodes[idx[i]], -1.0, 1.0));
      w *= rules[i].weights[idx[i]];
    }
    for (int q = 0; q < nphi; ++q) {
      p.phi = phis[q];
      g.nodes.push_back(p);
      g.weights.push_back(w);
    }
    int k = n - 2;
    while (k >= 0 && ++idx[k] == m) idx[k--] = 0;
    if (k < 0) break;
  }
  return g;
}

/// Grid exact for functions of (t1, t2) only that are polynomials of degree <= L
/// in x1, x2; the remaining angles are integrated out (weight Sigma_{n-2}).
inline SphereGrid build_sector_grid(int n, int L) {
  if (n == 2) return build_sphere_grid(2, L);
  if (n < 2) throw DomainError("build_sector_grid: n must be >= 2");
  const int m = L / 2 + 1;
  const GaussJacobiRule r1 = gauss_jacobi(m, 0.5 * (n - 2), 0.5 * (n - 2));
  const GaussJacobiRule r2 = gauss_jacobi(m, 0.5 * (n - 3), 0.5 * (n - 3));
  const double rest = sphere_measure(n - 2);
  SphereGrid g;
  g.n = n;
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      g.nodes.push_back(SphericalPoint::sector(n, std::acos(std::clamp(r1.nodes[i], -1.0, 1.0)),
                                               std::acos(std::clamp(r2.nodes[j], -1.0, 1.0))));
      g.weights.push_back(r1.weights[i] * r2.weights[j] * rest);
    }
  return g;
}

/// Normalized inner product (1/Sigma_n) int f g d sigma on a grid.
inline double grid_inner(const SphereGrid& g, std::span<const double> f, std::span<const double> h) {
  if (f.size() != g.size() || h.size() != g.size()) throw DomainError("grid_inner: sample count mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) acc += g.weights[i] * f[i] * h[i];
  return acc / sphere_measure(g.n);
}

/// Euler-angle grid on SO(3) with normalized Haar weights. Exact for products
/// of Wigner functions of total degree <= band.
struct RotationGrid {
  int band = 0;
  std::vector<double> alpha;   // uniform, 2 band + 1
  std::vector<double> beta;    // Gauss-Legendre in cos b, band + 1
  std::vector<double> beta_w;  // sum to 1
  std::vector<double> gamma;   // uniform, 2 band + 1

  std::size_t size() const { return alpha.size() * beta.size() * gamma.size(); }
  double weight(std::size_t j) const { return beta_w[j] / static_cast<double>(alpha.size() * gamma.size()); }
};

inline RotationGrid build_rotation_grid(int band) {
  if (band < 0) throw DomainError("build_rotation_grid: band must be >= 0");
  RotationGrid r;
  r.band = band;
  r.alpha = detail::uniform_angles(2 * band + 1);
  r.gamma = r.alpha;
  const GaussJacobiRule gl = gauss_legendre(band + 1);
  for (std::size_t j = 0; j < gl.size(); ++j) {
    r.beta.push_back(std::acos(std::clamp(gl.nodes[j], -1.0, 1.0)));
    r.beta_w.push_back(0.5 * gl.weights[j]);
  }
  return r;
}

/// 3x3 matrix of U = Z(a) Y(b) Z(c) acting on (x1, x2, x3).
inline Eigen::Matrix3d euler_rotation(double a, double b, double c) {
  auto Z = [](double t) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Identity();
    m(1, 1) = std::cos(t);
    m(1, 2) = -std::sin(t);
    m(2, 1) = std::sin(t);
    m(2, 2) = std::cos(t);
    return m;
  };
  Eigen::Matrix3d Y = Eigen::Matrix3d::Identity();
  Y(0, 0) = std::cos(b);
  Y(0, 1) = -std::sin(b);
  Y(1, 0) = std::sin(b);
  Y(1, 1) = std::cos(b);
  return Z(a) * Y * Z(c);
}

/// Log-uniform scale grid with trapezoid weights for d rho / rho.
struct RhoGrid {
  std::vector<double> rho;
  std::vector<double> weight;

  std::size_t size() const { return rho.size(); }
};

inline RhoGrid build_log_rho_grid(double rho_min, double rho_max, int steps) {
  if (!(rho_min > 0.0) || !(rho_max > rho_min)) throw DomainError("build_log_rho_grid: need 0 < rho_min < rho_max");
  if (steps < 2) throw DomainError("build_log_rho_grid: need at least two nodes");
  RhoGrid g;
  const double s0 = std::log(rho_min), s1 = std::log(rho_max);
  const double h = (s1 - s0) / (steps - 1);
  for (int i = 0; i < steps; ++i) {
    g.rho.push_back(std::exp(s0 + i * h));
    g.weight.push_back((i == 0 || i == steps - 1) ? 0.5 * h : h);
  }
  return g;
}

/// Default scale discretization of the S^2 round trip.
struct RhoDefaults {
  static constexpr double rho_min = 1e-6;
  static constexpr double rho_max = 10.0;
  static constexpr int steps = 60;
};

/// W(rho, U) for one rotation given as a matrix, any n.
inline double wavelet_transform_at(const SphereGrid& grid, std::span<const double> f, const FieldSynthesizer& psi,
                                   const Eigen::MatrixXd& U) {
  const int n = grid.n;
  if (U.rows() != n + 1 || U.cols() != n + 1) throw DomainError("wavelet_transform_at: rotation has the wrong size");
  if (f.size() != grid.size()) throw DomainError("wavelet_transform_at: sample count mismatch");
  double acc = 0.0;
  Eigen::VectorXd x(n + 1);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (f[i] == 0.0) continue;
    const auto c = to_cartesian(grid.nodes[i]);
    for (int k = 0; k <= n; ++k) x(k) = c[k];
    const Eigen::VectorXd y = U.transpose() * x;
    acc += grid.weights[i] * f[i] * psi(from_cartesian(std::span<const double>(y.data(), y.size())));
  }
  return acc / sphere_measure(n);
}

/// Transform values on a rotation grid: value(j, i, m) for beta_j, alpha_i, gamma_m.
struct RotationSamples {
  std::size_t na = 0, nb = 0, ng = 0;
  std::vector<double> values;

  double& operator()(std::size_t j, std::size_t i, std::size_t m) { return values[(j * na + i) * ng + m]; }
  double operator()(std::size_t j, std::size_t i, std::size_t m) const { return values[(j * na + i) * ng + m]; }
};

namespace detail {

// For one S^2 grid and one b: z = Y(-b) y for every node y, in spherical angles.
struct TiltedNodes {
  std::vector<double> theta;
  std::vector<double> phi;
};

inline TiltedNodes tilt_nodes(const SphereGrid& grid, double b) {
  TiltedNodes t;
  t.theta.reserve(grid.size());
  t.phi.reserve(grid.size());
  for (const auto& p : grid.nodes) {
    const auto z = rotate_in_plane(p, -b);
    t.theta.push_back(z.theta1());
    t.phi.push_back(z.phi);
  }
  return t;
}

// Fourier pieces of Psi(Z(-c) z) = sum_k A_k(z) cos(k c) + B_k(z) sin(k c).
inline void fourier_pieces(const FieldSynthesizer& psi, const TiltedNodes& tn, std::vector<std::vector<double>>& A,
                           std::vector<std::vector<double>>& B) {
  const int K = psi.order_bound();
  A.assign(static_cast<std::size_t>(K) + 1, std::vector<double>(tn.theta.size()));
  B.assign(static_cast<std::size_t>(K) + 1, std::vector<double>(tn.theta.size()));
  for (std::size_t y = 0; y < tn.theta.size(); ++y)
    for (int k = 0; k <= K; ++k) {
      const double s = k == 0 ? 1.0 : 2.0;
      const double R = s * psi.radial(k, tn.theta[y]);
      A[k][y] = R * std::cos(k * tn.phi[y]);
      B[k][y] = R * std::sin(k * tn.phi[y]);
    }
}

inline void check_factorizable(const SphereGrid& grid, const RotationGrid& rot) {
  if (grid.n != 2 || grid.phi_count == 0) throw DomainError("S^2 transform needs an S^2 product grid");
  if (static_cast<std::size_t>(grid.phi_count) != rot.alpha.size() || rot.alpha.size() != rot.gamma.size())
    throw DomainError("S^2 transform: phi, alpha and gamma grids must share one uniform spacing");
}

}  // namespace detail

/// Sphere grid matched to a rotation grid (phi spacing equal to the alpha spacing).
inline SphereGrid build_transform_grid(const RotationGrid& rot) {
  return build_s2_grid(rot.band + 1, static_cast<int>(rot.alpha.size()));
}

/// W(rho, U) on every node of the rotation grid for one wavelet Psi_rho (S^2).
inline RotationSamples wavelet_transform(const SphereGrid& grid, std::span<const double> f, const CoefficientField& psi_field,
                                         const RotationGrid& rot) {
  detail::check_factorizable(grid, rot);
  if (f.size() != grid.size()) throw DomainError("wavelet_transform: sample count mismatch");
  if (psi_field.lambda_param().n() != 2) throw DomainError("wavelet_transform: rotation grids exist for S^2 only");
  const FieldSynthesizer psi(psi_field);
  const int K = psi.order_bound();
  const std::size_t nt = grid.theta_count, np = grid.phi_count;
  RotationSamples W;
  W.na = rot.alpha.size();
  W.nb = rot.beta.size();
  W.ng = rot.gamma.size();
  W.values.assign(W.na * W.nb * W.ng, 0.0);
  const double inv_sigma = 1.0 / sphere_measure(2);
  std::vector<std::vector<double>> A, B;
  std::vector<double> fa(static_cast<std::size_t>(K) + 1), fb(static_cast<std::size_t>(K) + 1);
  for (std::size_t j = 0; j < W.nb; ++j) {
    detail::fourier_pieces(psi, detail::tilt_nodes(grid, rot.beta[j]), A, B);
    for (std::size_t i = 0; i < W.na; ++i) {
      std::fill(fa.begin(), fa.end(), 0.0);
      std::fill(fb.begin(), fb.end(), 0.0);
      for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t p = 0; p < np; ++p) {
          const std::size_t y = t * np + p;
          const double wf = grid.weights[y] * f[t * np + (p + i) % np];  // f(Z(a_i) y)
          for (int k = 0; k <= K; ++k) {
            fa[k] += wf * A[k][y];
            fb[k] += wf * B[k][y];
          }
        }
      for (std::size_t m = 0; m < W.ng; ++m) {
        double v = 0.0;
        for (int k = 0; k <= K; ++k) v += fa[k] * std::cos(k * rot.gamma[m]) + fb[k] * std::sin(k * rot.gamma[m]);
        W(j, i, m) = v * inv_sigma;
      }
    }
  }
  return W;
}

/// Transform over a scale grid; psi_of_rho returns the wavelet field at each scale.
struct TransformCoefficients {
  RhoGrid rho;
  RotationGrid rotations;
  std::vector<RotationSamples> per_scale;
};

inline TransformCoefficients analyze(const SphereGrid& grid, std::span<const double> f,
                                     const std::function<CoefficientField(double)>& psi_of_rho, const RhoGrid& rho,
                                     const RotationGrid& rot) {
  TransformCoefficients out;
  out.rho = rho;
  out.rotations = rot;
  out.per_scale.resize(rho.size());
  parallel_for(rho.size(), [&](std::size_t i) { out.per_scale[i] = wavelet_transform(grid, f, psi_of_rho(rho.rho[i]), rot); });
  return out;
}

/// Reconstruction at the grid nodes with weight alpha(rho) = 1/rho (built into RhoGrid).
inline std::vector<double> inverse_transform(const SphereGrid& grid, const TransformCoefficients& W,
                                             const std::function<CoefficientField(double)>& omega_of_rho) {
  const RotationGrid& rot = W.rotations;
  detail::check_factorizable(grid, rot);
  const std::size_t nt = grid.theta_count, np = grid.phi_count;
  const std::size_t na = rot.alpha.size(), nb = rot.beta.size(), ng = rot.gamma.size();
  std::vector<double> out(grid.size(), 0.0);
  std::vector<std::vector<double>> A, B;
  std::vector<detail::TiltedNodes> tilted;
  for (std::size_t j = 0; j < nb; ++j) tilted.push_back(detail::tilt_nodes(grid, rot.beta[j]));

  for (std::size_t s = 0; s < W.rho.size(); ++s) {
    const FieldSynthesizer omega(omega_of_rho(W.rho.rho[s]));
    const int K = omega.order_bound();
    const RotationSamples& Ws = W.per_scale[s];
    for (std::size_t j = 0; j < nb; ++j) {
      detail::fourier_pieces(omega, tilted[j], A, B);
      // gamma-projections of W: Wc_k(i) = sum_m W cos(k c_m) / ng, Ws_k likewise
      std::vector<double> wc((static_cast<std::size_t>(K) + 1) * na, 0.0), wsn((static_cast<std::size_t>(K) + 1) * na, 0.0);
      for (int k = 0; k <= K; ++k)
        for (std::size_t i = 0; i < na; ++i) {
          double c = 0.0, sn = 0.0;
          for (std::size_t m = 0; m < ng; ++m) {
            c += Ws(j, i, m) * std::cos(k * rot.gamma[m]);
            sn += Ws(j, i, m) * std::sin(k * rot.gamma[m]);
          }
          wc[k * na + i] = c / ng;
          wsn[k * na + i] = sn / ng;
        }
      const double scale = W.rho.weight[s] * rot.beta_w[j] / na;
      for (std::size_t t = 0; t < nt; ++t)
        for (std::size_t p = 0; p < np; ++p) {
          double v = 0.0;
          for (std::size_t i = 0; i < na; ++i) {
            const std::size_t y = t * np + (p + np - i) % np;  // Z(-a_i) x
            for (int k = 0; k <= K; ++k) v += A[k][y] * wc[k * na + i] + B[k][y] * wsn[k * na + i];
          }
          out[t * np + p] += scale * v;
        }
    }
  }
  return out;
}

/// Reconstruction multiplier of degree l for the pair (G^[D], C H^[D]):
/// (1/N(n,l)) int_0^inf <G_rho,l, C H_rho,l> d rho / rho, evaluated in closed form.
inline double per_degree_reconstruction_check(const LambdaParam& lp, int D, int l) {
  if (D < 1) throw DomainError("per_degree_reconstruction_check: order must be >= 1");
  if (l < 0) throw DomainError("per_degree_reconstruction_check: l must be >= 0");
  if (l == 0) return 0.0;
  const GammaVector g = solve_gamma(lp, D);
  const double lam = lp.lambda();
  const double u = l * (2.0 * lam + l);
  // at rho = 1 the coefficient product carries e^{-u/(2 lambda)}; the rho integral of
  // rho^{D-1} e^{-rho u/(2 lambda)} is Gamma(D) (2 lambda / u)^D
  const CoefficientField G = modified_wavelet_field(lp, g, KernelKind::Poisson, 1.0, l);
  const CoefficientField H = modified_wavelet_field(lp, g, KernelKind::Heat, 1.0, l);
  const double sector = sector_pairing(G, H, l) * std::exp(u / (2.0 * lam));
  const double C = admissibility_constant(lp, D);
  return C * sector * std::tgamma(static_cast<double>(D)) * std::pow(2.0 * lam / u, D) / static_cast<double>(dim_harmonic(lp.n(), l));
}

/// Multiplier of degree l under a discrete scale grid (S^2 round trip prediction).
inline double discrete_reconstruction_multiplier(const LambdaParam& lp, const GammaVector& g, int l, const RhoGrid& rho) {
  const double C = admissibility_constant(lp, g.order);
  double acc = 0.0;
  for (std::size_t s = 0; s < rho.size(); ++s) {
    const CoefficientField G = modified_wavelet_field(lp, g, KernelKind::Poisson, rho.rho[s], l);
    const CoefficientField H = modified_wavelet_field(lp, g, KernelKind::Heat, rho.rho[s], l);
    acc += rho.weight[s] * C * sector_pairing(G, H, l);
  }
  return acc / static_cast<double>(dim_harmonic(lp.n(), l));
}

/// Mean-free band-limited test signal on S^2: sum_j c_j P_{l_j}(x . v_j), 1 <= l_j <= band.
struct S2TestSignal {
  int band = 0;
  std::vector<std::array<double, 3>> axes;
  std::vector<int> degrees;
  std::vector<double> amplitudes;

  double operator()(const SphericalPoint& p) const {
    const auto x = to_cartesian(p);
    double acc = 0.0;
    for (std::size_t j = 0; j < axes.size(); ++j) {
      const double t = std::clamp(x[0] * axes[j][0] + x[1] * axes[j][1] + x[2] * axes[j][2], -1.0, 1.0);
      acc += amplitudes[j] * gegenbauer(degrees[j], 0.5, t);
    }
    return acc;
  }
};

inline S2TestSignal make_s2_test_signal(int band, int terms = 12, std::uint32_t seed = 7u) {
  if (band < 1) throw DomainError("make_s2_test_signal: band must be >= 1");
  std::mt19937 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  S2TestSignal s;
  s.band = band;
  for (int j = 0; j < terms; ++j) {
    std::array<double, 3> v{normal(rng), normal(rng), normal(rng)};
    const double nv = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    for (double& c : v) c /= nv;
    s.axes.push_back(v);
    s.degrees.push_back(j < band ? j + 1 : 1 + static_cast<int>(rng() % static_cast<std::uint32_t>(band)));
    s.amplitudes.push_back(normal(rng));
  }
  return s;
}

struct RoundTripReport {
  int order = 0;
  int signal_band = 0;
  int rotation_band = 0;
  double rho_min = 0.0, rho_max = 0.0;
  int rho_steps = 0;
  double rel_l2_error = 0.0;
  double predicted_rel_error = 0.0;  // from the discrete per-degree multipliers
  std::size_t transform_values = 0;
};

/// Analysis and inversion of a mean-free band-limited signal on S^2 with the pair
/// (G^[D], C H^[D]); wavelets are truncated at the signal band, which loses nothing.
inline RoundTripReport s2_round_trip(int D, int signal_band, const RhoGrid& rho, int rotation_band, std::uint32_t seed = 7u) {
  const LambdaParam lp(2);
  const GammaVector g = solve_gamma(lp, D);
  const double C = admissibility_constant(lp, D);
  const RotationGrid rot = build_rotation_grid(rotation_band);
  const SphereGrid grid = build_transform_grid(rot);
  const S2TestSignal signal = make_s2_test_signal(signal_band, 12, seed);
  const auto f = grid.sample(signal);

  auto psi = [&](double r) { return modified_wavelet_field(lp, g, KernelKind::Poisson, r, signal_band); };
  auto omega = [&](double r) {
    CoefficientField h = modified_wavelet_field(lp, g, KernelKind::Heat, r, signal_band);
    h *= C;
    return h;
  };
  const TransformCoefficients W = analyze(grid, f, psi, rho, rot);
  const auto rec = inverse_transform(grid, W, omega);

  RoundTripReport rep;
  rep.order = D;
  rep.signal_band = signal_band;
  rep.rotation_band = rotation_band;
  rep.rho_min = rho.rho.front();
  rep.rho_max = rho.rho.back();
  rep.rho_steps = static_cast<int>(rho.size());
  rep.transform_values = rho.size() * rot.size();
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    num += grid.weights[i] * (rec[i] - f[i]) * (rec[i] - f[i]);
    den += grid.weights[i] * f[i] * f[i];
  }
  rep.rel_l2_error = std::sqrt(num / den);

  // predicted error: per-degree energy of f times (1 - multiplier)^2, the
  // degree-l projection taken with the reproducing kernel on the grid
  std::vector<std::array<double, 3>> cart;
  for (const auto& p : grid.nodes) {
    const auto x = to_cartesian(p);
    cart.push_back({x[0], x[1], x[2]});
  }
  std::vector<std::vector<double>> proj(static_cast<std::size_t>(signal_band) + 1, std::vector<double>(grid.size(), 0.0));
  std::vector<double> c(static_cast<std::size_t>(signal_band) + 1);
  for (std::size_t a = 0; a < grid.size(); ++a)
    for (std::size_t b = 0; b < grid.size(); ++b) {
      const double t = std::clamp(cart[a][0] * cart[b][0] + cart[a][1] * cart[b][1] + cart[a][2] * cart[b][2], -1.0, 1.0);
      gegenbauer_fill(0.5, t, c);
      for (int l = 1; l <= signal_band; ++l) proj[l][a] += grid.weights[b] * f[b] * (2.0 * l + 1.0) * c[l];
    }
  double pn = 0.0;
  for (int l = 1; l <= signal_band; ++l) {
    const double m = discrete_reconstruction_multiplier(lp, g, l, rho);
    double e = 0.0;
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const double v = proj[l][a] / sphere_measure(2);
      e += grid.weights[a] * v * v;
    }
    pn += e * (1.0 - m) * (1.0 - m);
  }
  rep.predicted_rel_error = std::sqrt(pn / den);
  return rep;
}

}  // namespace pmw
