#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pmw/rot_deriv.hpp"

using namespace pmw;

namespace {

std::vector<double> random_zonal(int L, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> a(static_cast<std::size_t>(L) + 1);
  for (double& v : a) v = u(rng);
  return a;
}

// f(Upsilon_Theta x) for a field f
double rotated(const FieldSynthesizer& f, const SphericalPoint& p, double theta) { return f(rotate_in_plane(p, theta)); }

std::vector<SphericalPoint> probe_points(int n) {
  std::vector<SphericalPoint> pts;
  for (double t1 : {0.3, 1.1, 2.0, 2.9})
    for (double t2 : {0.2, 1.3, 2.6}) {
      auto p = SphericalPoint::sector(n, t1, t2);
      // move off the sector so further angles are exercised too
      if (n >= 4) p.thetas[2] = 0.8;
      if (n >= 3) p.phi = 0.5;
      pts.push_back(p);
    }
  return pts;
}

}  // namespace

TEST(Beta, TwoSphereSimplification) {
  const LambdaParam lp(2);
  for (int l = 0; l <= 20; ++l)
    for (int k = 0; k < l; ++k) EXPECT_NEAR(beta(lp, l, k), 0.5 * std::sqrt((l - k) * (l + k + 1.0)), 1e-14);
}

TEST(Beta, AgreesWithNormalizationRatios) {
  for (int n : {3, 4, 5, 8}) {
    const LambdaParam lp(n);
    const double lam = lp.lambda();
    for (int l = 1; l <= 14; ++l)
      for (int k = 0; k < l; ++k) {
        const double raise = 2.0 * (lam + k) * (k + 1.0) / (2.0 * lam + 2.0 * k - 1.0) * norm_const_A(lp, l, k) / norm_const_A(lp, l, k + 1);
        EXPECT_NEAR(beta(lp, l, k), raise, 1e-12 * raise);
        const int kk = k + 1;
        const double lower = (l - kk + 1.0) * (2.0 * lam + l + kk - 1.0) * (2.0 * lam + kk - 2.0) /
                             (2.0 * (lam + kk - 1.0) * (2.0 * lam + 2.0 * kk - 1.0)) * norm_const_A(lp, l, kk) / norm_const_A(lp, l, kk - 1);
        EXPECT_NEAR(beta(lp, l, k), lower, 1e-12 * lower);
      }
  }
}

TEST(Beta, BoundaryValues) {
  const LambdaParam lp(3);
  EXPECT_EQ(beta(lp, 5, -1), 0.0);
  EXPECT_EQ(beta(lp, 5, 5), 0.0);
  EXPECT_EQ(beta(lp, 5, 7), 0.0);
  EXPECT_THROW(beta(lp, 5, -2), DomainError);
}

TEST(DerivativeStep, SingleHarmonicAgainstFiniteDifference) {
  const double h = 1e-5;
  for (int n : {2, 3, 4}) {
    const LambdaParam lp(n);
    for (int l = 1; l <= 6; ++l)
      for (int k = 0; k <= l; ++k) {
        CoefficientField f(lp, l, l);
        f.set(l, k, 1.0);
        const FieldSynthesizer y(f), dy(derivative_step(f));
        for (const auto& p : probe_points(n)) {
          const double fd = (rotated(y, p, h) - rotated(y, p, -h)) / (2.0 * h);
          EXPECT_NEAR(dy(p), fd, 1e-6 * std::max(1.0, norm_const_A(lp, l, k))) << "n=" << n << " l=" << l << " k=" << k;
        }
      }
  }
}

TEST(DerivativeOrder, FirstDerivativeMatchesCentralDifference) {
  for (int n : {2, 3, 5}) {
    const LambdaParam lp(n);
    const auto a = random_zonal(10, 17u + n);
    const FieldSynthesizer f(CoefficientField::zonal(lp, a));
    const FieldSynthesizer d1(derivative_order(a, lp, 1));
    for (double h : {1e-5, 1e-6})
      for (const auto& p : probe_points(n)) {
        const double fd = (rotated(f, p, h) - rotated(f, p, -h)) / (2.0 * h);
        EXPECT_NEAR(d1(p), fd, 1e-6 * std::max(1.0, std::abs(fd)));
      }
  }
}

TEST(DerivativeOrder, SecondDerivativeMatchesRichardsonDifference) {
  for (int n : {2, 3, 5}) {
    const LambdaParam lp(n);
    const auto a = random_zonal(10, 29u + n);
    const FieldSynthesizer f(CoefficientField::zonal(lp, a));
    const FieldSynthesizer d2(derivative_order(a, lp, 2));
    for (const auto& p : probe_points(n)) {
      auto second = [&](double h) { return (rotated(f, p, h) - 2.0 * f(p) + rotated(f, p, -h)) / (h * h); };
      const double plain = second(1e-4);
      const double rich = (4.0 * second(5e-4) - second(1e-3)) / 3.0;
      EXPECT_NEAR(d2(p), plain, 1e-4 * std::max(1.0, std::abs(plain)));
      EXPECT_NEAR(d2(p), rich, 1e-6 * std::max(1.0, std::abs(rich)));
    }
  }
}

TEST(DerivativeOrder, ThirdDerivativeByFiniteDifferenceOfSecond) {
  const double h = 1e-5;
  for (int n : {2, 4}) {
    const LambdaParam lp(n);
    const auto a = random_zonal(8, 41u);
    const FieldSynthesizer d2(derivative_order(a, lp, 2)), d3(derivative_order(a, lp, 3));
    for (const auto& p : probe_points(n)) {
      const double fd = (rotated(d2, p, h) - rotated(d2, p, -h)) / (2.0 * h);
      EXPECT_NEAR(d3(p), fd, 1e-6 * std::max(1.0, std::abs(fd)));
    }
  }
}

TEST(DerivativeOrder, FirstDerivativeIsTheta1DerivativeTimesCosTheta2) {
  for (int n : {2, 3, 6}) {
    const LambdaParam lp(n);
    const auto a = random_zonal(12, 3u);
    const FieldSynthesizer d1(derivative_order(a, lp, 1));
    for (double t1 : {0.2, 0.9, 1.7, 2.8})
      for (double t2 : {0.1, 1.0, 2.2}) {
        // d/dt1 sum a_l A_l^0 C_l(cos t1) = -sin t1 sum a_l A_l^0 2 lambda C_{l-1}^{lambda+1}(cos t1)
        double g = 0.0;
        for (int l = 1; l < static_cast<int>(a.size()); ++l)
          g += a[l] * norm_const_A(lp, l, 0) * gegenbauer_derivative(l, lp.lambda(), std::cos(t1));
        g *= -std::sin(t1);
        EXPECT_NEAR(d1(t1, t2), g * std::cos(t2), 1e-12 * std::max(1.0, std::abs(g)));
      }
  }
}

TEST(DerivativeOrder, TwoSphereZonalCouplingOfTwoSteps) {
  // f^(2) of a unit seed has a_l^0 = -2 beta_{l,0}^2 on S^2 and -beta_{l,0}^2 on S^n, n >= 3
  for (int n : {2, 3, 4}) {
    const LambdaParam lp(n);
    const std::vector<double> seed(16, 1.0);
    const auto f2 = derivative_order(seed, lp, 2);
    for (int l = 1; l <= 15; ++l) {
      const double b = beta(lp, l, 0);
      EXPECT_NEAR(f2(l, 0), (n == 2 ? -2.0 : -1.0) * b * b, 1e-12 * l * l);
      EXPECT_EQ(f2(l, 1), 0.0);
    }
  }
}

TEST(DerivativeOrder, EnergyConservedUnderRotation) {
  // d/dTheta ||f(Upsilon_Theta .)||^2 = 0 gives <f, f'> = 0 per degree
  for (int n : {2, 3, 5}) {
    const LambdaParam lp(n);
    const auto a = random_zonal(12, 9u);
    CoefficientField f = CoefficientField::zonal(lp, a);
    for (int d = 0; d < 5; ++d) {
      const CoefficientField g = derivative_step(f);
      for (int l = 0; l <= 12; ++l) EXPECT_NEAR(sector_pairing(f, g, l), 0.0, 1e-10 * (1 + sector_pairing(f, f, l)));
      f = g;
    }
  }
}

TEST(Structure, PolynomialDegreesAndParity) {
  for (int n : {2, 3, 5})
    for (int d = 0; d <= 6; ++d) {
      const auto rep = structure_polynomial_check(LambdaParam(n), d, 30);
      EXPECT_TRUE(rep.parity_exact) << "n=" << n << " d=" << d;
      for (const auto& fit : rep.fits) EXPECT_EQ(fit.fitted_degree, fit.expected_degree) << "n=" << n << " d=" << d << " j=" << fit.j;
    }
}

TEST(CoefficientField, AccessAndArithmetic) {
  const LambdaParam lp(3);
  CoefficientField f(lp, 4, 2);
  f.set(3, 2, 1.5);
  EXPECT_EQ(f(3, 2), 1.5);
  EXPECT_EQ(f(3, 3), 0.0);
  EXPECT_EQ(f(9, 0), 0.0);
  EXPECT_EQ(f(1, 2), 0.0);
  EXPECT_THROW(f.set(1, 2, 1.0), DomainError);
  EXPECT_THROW(f.set(2, 5, 1.0), DomainError);
  CoefficientField g(lp, 6, 1);
  g.set(5, 1, 2.0);
  f.add_scaled(g, 3.0);
  EXPECT_EQ(f.degree(), 6);
  EXPECT_EQ(f(5, 1), 6.0);
  EXPECT_EQ(f(3, 2), 1.5);
  EXPECT_EQ(f.truncated(4)(5, 1), 0.0);
}

TEST(Synthesis, BatchMatchesPointwise) {
  const LambdaParam lp(4);
  const auto field = derivative_order(random_zonal(9, 2u), lp, 3);
  const auto pts = probe_points(4);
  const auto vals = synthesize(field, pts);
  for (std::size_t i = 0; i < pts.size(); ++i) EXPECT_DOUBLE_EQ(vals[i], synthesize(field, pts[i]));
}

TEST(DerivativeOrder, SecondDerivativeGegenbauerDisplay) {
  // f = sum fhat_l C_l^lambda(cos t1):
  // f^(2) = [ -sum l(2 lambda + l) fhat_l C_l^lambda(cos t1)
  //           + 8 lambda (lambda+1)/(2 lambda - 1) sum fhat_l C_{l-2}^{lambda+2}(cos t1) sin^2 t1 C_2^{lambda-1/2}(cos t2) ] / (2 lambda + 1)
  for (int n : {3, 4, 6}) {
    const LambdaParam lp(n);
    const double lam = lp.lambda();
    const auto fhat = random_zonal(10, 77u);
    std::vector<double> a(fhat.size());
    for (std::size_t l = 0; l < a.size(); ++l) a[l] = fhat[l] / norm_const_A(lp, static_cast<int>(l), 0);
    const FieldSynthesizer d2(derivative_order(a, lp, 2));
    for (double t1 : {0.4, 1.4, 2.6})
      for (double t2 : {0.3, 1.7}) {
        const double c1 = std::cos(t1), s1 = std::sin(t1);
        double zon = 0.0, sec = 0.0;
        for (int l = 1; l < static_cast<int>(fhat.size()); ++l) {
          zon += l * (2 * lam + l) * fhat[l] * gegenbauer(l, lam, c1);
          sec += fhat[l] * gegenbauer(l - 2, lam + 2, c1);
        }
        const double ref = (-zon + 8 * lam * (lam + 1) / (2 * lam - 1) * sec * s1 * s1 * gegenbauer(2, lam - 0.5, std::cos(t2))) / (2 * lam + 1);
        EXPECT_NEAR(d2(t1, t2), ref, 1e-11 * std::max(1.0, std::abs(ref)));
      }
  }
}
