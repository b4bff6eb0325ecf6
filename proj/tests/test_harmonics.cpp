#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pmw/harmonics.hpp"
#include "pmw/quadrature.hpp"

using namespace pmw;

namespace {

// normalized inner product of two sector harmonics on S^n, n >= 3, on a tensor Gauss grid
double sector_inner(const LambdaParam& lp, SectorHarmonicIndex a, SectorHarmonicIndex b) {
  const int n = lp.n();
  const auto r1 = gauss_jacobi(24, 0.5 * (n - 2), 0.5 * (n - 2));
  const auto r2 = gauss_jacobi(24, 0.5 * (n - 3), 0.5 * (n - 3));
  double s = 0.0;
  for (std::size_t i = 0; i < r1.size(); ++i)
    for (std::size_t j = 0; j < r2.size(); ++j) {
      const auto p = SphericalPoint::sector(n, std::acos(r1.nodes[i]), std::acos(r2.nodes[j]));
      s += r1.weights[i] * r2.weights[j] * eval_sector_harmonic(lp, a, p) * eval_sector_harmonic(lp, b, p);
    }
  return s * sphere_measure(n - 2) / lp.sigma();
}

double s2_inner(SectorHarmonicIndex a, SectorHarmonicIndex b) {
  const LambdaParam lp(2);
  const auto r = gauss_legendre(24);
  const int nphi = 40;
  double s = 0.0;
  for (std::size_t i = 0; i < r.size(); ++i)
    for (int j = 0; j < nphi; ++j) {
      const auto p = SphericalPoint::sector(2, std::acos(r.nodes[i]), 2.0 * std::numbers::pi * j / nphi);
      s += r.weights[i] * eval_sector_harmonic(lp, a, p) * eval_sector_harmonic(lp, b, p);
    }
  return s * (2.0 * std::numbers::pi / nphi) / lp.sigma();
}

}  // namespace

TEST(SectorHarmonic, OrthonormalHigherSpheres) {
  for (int n : {3, 4, 5}) {
    const LambdaParam lp(n);
    for (int l = 0; l <= 7; ++l)
      for (int k = 0; k <= l; ++k)
        for (int m = 0; m <= 7; ++m)
          for (int q = 0; q <= m; ++q) {
            const double v = sector_inner(lp, {l, k}, {m, q});
            EXPECT_NEAR(v, (l == m && k == q) ? 1.0 : 0.0, 1e-12) << n << ' ' << l << ' ' << k << ' ' << m << ' ' << q;
          }
  }
}

TEST(SectorHarmonic, TwoSphereNormsAreOneAndTwo) {
  for (int l = 0; l <= 8; ++l)
    for (int k = 0; k <= l; ++k)
      for (int m = 0; m <= 8; ++m)
        for (int q = 0; q <= m; ++q) {
          const double ref = (l == m && k == q) ? sector_basis_norm2(LambdaParam(2), k) : 0.0;
          EXPECT_NEAR(s2_inner({l, k}, {m, q}), ref, 1e-12);
        }
}

TEST(SectorHarmonic, TwoSphereAdditionTheorem) {
  const LambdaParam lp(2);
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), ph(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 5; ++trial) {
    const auto x = SphericalPoint::sector(2, th(rng), ph(rng));
    const auto y = SphericalPoint::sector(2, th(rng), ph(rng));
    const auto cx = to_cartesian(x), cy = to_cartesian(y);
    const double dot = cx[0] * cy[0] + cx[1] * cy[1] + cx[2] * cy[2];
    for (int l = 0; l <= 12; ++l) {
      double s = 0.0;
      for (int k = 0; k <= l; ++k) {
        // radial factors A P_l^k; cosine and sine partners carry 2 cos(k phi), 2 sin(k phi)
        const double ax = eval_sector_harmonic(lp, {l, k}, SphericalPoint::sector(2, x.theta1(), 0.0));
        const double ay = eval_sector_harmonic(lp, {l, k}, SphericalPoint::sector(2, y.theta1(), 0.0));
        if (k == 0) {
          s += ax * ay;
          continue;
        }
        s += 0.5 * ax * ay * (std::cos(k * x.phi) * std::cos(k * y.phi) + std::sin(k * x.phi) * std::sin(k * y.phi));
      }
      EXPECT_NEAR(s, (2.0 * l + 1.0) * std::legendre(static_cast<unsigned>(l), dot), 1e-10 * (2 * l + 1));
    }
  }
}

TEST(SectorHarmonic, HomogeneousExtensionIsHarmonic) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {2, 3, 4}) {
    const LambdaParam lp(n);
    for (int l = 1; l <= 5; ++l)
      for (int k = 0; k <= l; ++k) {
        auto Q = [&](const std::vector<double>& z) {
          double r = 0.0;
          for (double c : z) r += c * c;
          r = std::sqrt(r);
          return std::pow(r, l) * eval_sector_harmonic(lp, {l, k}, from_cartesian(z));
        };
        std::vector<double> z(static_cast<std::size_t>(n) + 1);
        for (double& c : z) c = 0.3 + 0.5 * u(rng);
        const double h = 1e-3;
        double lap = 0.0;
        for (std::size_t i = 0; i < z.size(); ++i) {
          auto zp = z, zm = z;
          zp[i] += h;
          zm[i] -= h;
          lap += (Q(zp) - 2.0 * Q(z) + Q(zm)) / (h * h);
        }
        EXPECT_NEAR(lap, 0.0, 1e-4 * std::max(1.0, norm_const_A(lp, l, k))) << "n=" << n << " l=" << l << " k=" << k;
      }
  }
}

TEST(SectorHarmonic, LowDegreeExamples) {
  const LambdaParam lp(3);
  const auto p = SphericalPoint::sector(3, 0.7, 1.1);
  EXPECT_NEAR(eval_sector_harmonic(lp, {1, 0}, p), 2.0 * std::cos(0.7), 1e-14);
  EXPECT_NEAR(eval_sector_harmonic(lp, {0, 0}, p), 1.0, 1e-15);
  EXPECT_EQ(eval_sector_harmonic(lp, {2, 3}, p), 0.0);
  EXPECT_EQ(eval_sector_harmonic(lp, {3, 1}, SphericalPoint::north_pole(3)), 0.0);
  EXPECT_THROW(eval_sector_harmonic(LambdaParam(4), {1, 0}, p), DomainError);
}

TEST(Coordinates, CartesianRoundTrip) {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  for (int n : {2, 3, 5, 8})
    for (int trial = 0; trial < 20; ++trial) {
      std::vector<double> v(static_cast<std::size_t>(n) + 1);
      double r = 0.0;
      for (double& c : v) {
        c = g(rng);
        r += c * c;
      }
      r = std::sqrt(r);
      const auto back = to_cartesian(from_cartesian(v));
      for (std::size_t i = 0; i < v.size(); ++i) EXPECT_NEAR(back[i], v[i] / r, 1e-14);
    }
}

TEST(Coordinates, PlaneRotationMovesTheta1) {
  // rotating a point on the (x1, x2) great circle shifts theta1
  const auto p = SphericalPoint::sector(4, 0.4, 0.0);
  const auto q = rotate_in_plane(p, 0.3);
  EXPECT_NEAR(q.theta1(), 0.7, 1e-14);
  const auto x = to_cartesian(p), y = to_cartesian(q);
  double nx = 0.0, ny = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    nx += x[i] * x[i];
    ny += y[i] * y[i];
  }
  EXPECT_NEAR(nx, ny, 1e-15);
}

TEST(GegenbauerCoefficient, RecoversKnownExpansion) {
  for (int n : {2, 3, 5}) {
    const LambdaParam lp(n);
    const auto rule = gauss_gegenbauer(20, lp.lambda());
    const std::vector<double> c{0.3, -1.2, 0.0, 2.5, 0.7};
    std::vector<double> vals(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
      for (std::size_t l = 0; l < c.size(); ++l) vals[i] += c[l] * gegenbauer(static_cast<int>(l), lp.lambda(), rule.nodes[i]);
    for (std::size_t l = 0; l < c.size(); ++l) EXPECT_NEAR(gegenbauer_coefficient(lp, rule, vals, static_cast<int>(l)), c[l], 1e-13);
    EXPECT_THROW(gegenbauer_coefficient(lp, rule, vals, 25), QuadratureError);
    if (n > 2) {
      EXPECT_THROW(gegenbauer_coefficient(lp, gauss_legendre(20), vals, 1), QuadratureError);
    }
  }
}
