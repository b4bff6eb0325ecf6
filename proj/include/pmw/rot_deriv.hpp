#pragma once

// Rotational derivative on coefficient fields.
//
// A CoefficientField holds real coefficients a_l^k of
//   f = sum_l sum_k a_l^k Y_l^{(k,0,...,0)}     (n >= 3)
//   f = sum_l sum_k a_l^k Yt_l^k                (n = 2, see harmonics.hpp)
// truncated at degree L and order k <= order_bound.
//
// d/dTheta f(Upsilon_Theta x)|_0 acts degree by degree:
//   a'^m = beta_{l,m} a^{m+1} - beta_{l,m-1} a^{m-1},
// except that for n = 2 the zonal slot picks up a factor two,
//   a'^0 = 2 beta_{l,0} a^1,
// because Yt_l^1 = Y_l^1 + Y_l^{-1} feeds Y_l^0 from both signs of k.

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pmw/error.hpp"
#include "pmw/harmonics.hpp"
#include "pmw/special_fn.hpp"

namespace pmw {

class CoefficientField {
 public:
  CoefficientField(const LambdaParam& lp, int L, int order_bound)
      : lp_(lp), L_(L), kmax_(std::min(order_bound, L)), coeffs_(static_cast<std::size_t>(L + 1) * (kmax_ + 1), 0.0) {
    if (L < 0 || order_bound < 0) throw DomainError("CoefficientField: negative truncation");
  }

  /// Zonal field with a_l^0 = zonal[l].
  static CoefficientField zonal(const LambdaParam& lp, std::span<const double> zonal) {
    if (zonal.empty()) throw DomainError("CoefficientField::zonal: empty coefficient list");
    CoefficientField f(lp, static_cast<int>(zonal.size()) - 1, 0);
    for (std::size_t l = 0; l < zonal.size(); ++l) f.coeffs_[l] = zonal[l];
    return f;
  }

  const LambdaParam& lambda_param() const { return lp_; }
  int degree() const { return L_; }
  int order_bound() const { return kmax_; }

  /// a_l^k; zero outside the stored sector (k > l or k > order_bound).
  double operator()(int l, int k) const {
    if (l < 0 || l > L_ || k < 0 || k > kmax_ || k > l) return 0.0;
    return coeffs_[index(l, k)];
  }

  void set(int l, int k, double v) {
    if (l < 0 || l > L_ || k < 0 || k > kmax_) throw DomainError("CoefficientField::set: index outside the stored sector");
    if (k > l) {
      if (v != 0.0) throw DomainError("CoefficientField::set: a_l^k must vanish for k > l");
      return;
    }
    coeffs_[index(l, k)] = v;
  }

  /// Copy restricted to degrees <= L (and orders <= min(order_bound, L)).
  CoefficientField truncated(int L) const {
    CoefficientField out(lp_, std::min(L, L_), kmax_);
    for (int l = 0; l <= out.L_; ++l)
      for (int k = 0; k <= std::min(l, out.kmax_); ++k) out.coeffs_[out.index(l, k)] = (*this)(l, k);
    return out;
  }

  CoefficientField& operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    return *this;
  }

  /// this += s * other (the result keeps the larger truncation of both).
  CoefficientField& add_scaled(const CoefficientField& other, double s) {
    if (!(other.lp_ == lp_)) throw DomainError("CoefficientField::add_scaled: dimension mismatch");
    if (other.L_ > L_ || other.kmax_ > kmax_) {
      CoefficientField grown(lp_, std::max(L_, other.L_), std::max(kmax_, other.kmax_));
      for (int l = 0; l <= L_; ++l)
        for (int k = 0; k <= std::min(l, kmax_); ++k) grown.coeffs_[grown.index(l, k)] = (*this)(l, k);
      *this = std::move(grown);
    }
    for (int l = 0; l <= other.L_; ++l)
      for (int k = 0; k <= std::min(l, other.kmax_); ++k) coeffs_[index(l, k)] += s * other(l, k);
    return *this;
  }

  friend CoefficientField operator*(double s, CoefficientField f) { return f *= s; }
  friend CoefficientField operator+(CoefficientField a, const CoefficientField& b) { return a.add_scaled(b, 1.0); }

 private:
  std::size_t index(int l, int k) const { return static_cast<std::size_t>(l) * (kmax_ + 1) + k; }

  LambdaParam lp_;
  int L_;
  int kmax_;
  std::vector<double> coeffs_;
};

/// Creation/annihilation coefficient beta_{l,k1}; beta_{l,-1} = 0, beta_{l,l} = 0,
/// and zero for k1 > l (the sector stops at k1 = l).
inline double beta(const LambdaParam& lp, int l, int k1) {
  if (k1 < -1) throw DomainError("beta: k1 must be >= -1");
  if (l < 0) throw DomainError("beta: l must be >= 0");
  if (k1 == -1 || k1 >= l) return 0.0;
  const double k = k1;
  const double ld = l;
  if (lp.n() == 2) return 0.5 * std::sqrt((ld - k) * (ld + k + 1.0));
  const double two_lam = 2.0 * lp.lambda();
  return std::sqrt((k + 1.0) * (two_lam + k - 1.0) * (ld - k) * (two_lam + ld + k) /
                   ((two_lam + 2.0 * k - 1.0) * (two_lam + 2.0 * k + 1.0)));
}

/// One application of d/dTheta at Theta = 0.
inline CoefficientField derivative_step(const CoefficientField& in) {
  const LambdaParam& lp = in.lambda_param();
  const int L = in.degree();
  CoefficientField out(lp, L, in.order_bound() + 1);
  const double zonal_factor = lp.n() == 2 ? 2.0 : 1.0;
  for (int l = 1; l <= L; ++l) {
    const int kmax = std::min(l, out.order_bound());
    for (int m = 0; m <= kmax; ++m) {
      double v = beta(lp, l, m) * in(l, m + 1);
      if (m == 0) v *= zonal_factor;
      else v -= beta(lp, l, m - 1) * in(l, m - 1);
      out.set(l, m, v);
    }
  }
  return out;
}

/// d-fold rotational derivative of a zonal field given by its a_l^0.
inline CoefficientField derivative_order(std::span<const double> zonal, const LambdaParam& lp, int d) {
  if (d < 0) throw DomainError("derivative_order: d must be >= 0");
  CoefficientField f = CoefficientField::zonal(lp, zonal);
  for (int i = 0; i < d; ++i) f = derivative_step(f);
  return f;
}

inline CoefficientField derivative_order(const CoefficientField& field, int d) {
  if (d < 0) throw DomainError("derivative_order: d must be >= 0");
  CoefficientField f = field;
  for (int i = 0; i < d; ++i) f = derivative_step(f);
  return f;
}

/// Sum over the orthonormal basis of a_l(f) a_l(g) at degree l, i.e. <f_l, g_l>.
inline double sector_pairing(const CoefficientField& f, const CoefficientField& g, int l) {
  const LambdaParam& lp = f.lambda_param();
  double acc = 0.0;
  const int kmax = std::min({l, f.order_bound(), g.order_bound()});
  for (int k = 0; k <= kmax; ++k) acc += sector_basis_norm2(lp, k) * f(l, k) * g(l, k);
  return acc;
}

/// Evaluates a field at many points; caches a_l^k A_l^k once.
class FieldSynthesizer {
 public:
  explicit FieldSynthesizer(const CoefficientField& field)
      : lp_(field.lambda_param()), L_(field.degree()), kmax_(field.order_bound()), scaled_(kmax_ + 1) {
    SectorNorms norms(lp_, L_, kmax_);
    for (int k = 0; k <= kmax_; ++k) {
      auto& row = scaled_[k];
      row.assign(static_cast<std::size_t>(std::max(L_ - k + 1, 0)), 0.0);
      bool any = false;
      for (int l = k; l <= L_; ++l) {
        row[l - k] = field(l, k) * norms(l, k);
        any = any || row[l - k] != 0.0;
      }
      if (!any) row.clear();
    }
    work_.resize(static_cast<std::size_t>(L_) + 1);
  }

  /// Radial part R_k(t1) = sum_l a_l^k A_l^k C_{l-k}^{lambda+k}(cos t1) sin^k t1.
  double radial(int k, double t1) const {
    const auto& row = scaled_[k];
    if (row.empty()) return 0.0;
    const double s1 = std::sin(t1);
    if (k >= 1 && s1 == 0.0) return 0.0;
    const double t = std::clamp(std::cos(t1), -1.0, 1.0);
    std::span<double> c(work_.data(), row.size());
    gegenbauer_fill(lp_.lambda() + k, t, c);
    double acc = 0.0;
    for (std::size_t j = 0; j < row.size(); ++j) acc += row[j] * c[j];
    return acc * detail::int_pow(s1, k);
  }

  double operator()(double t1, double t2) const {
    double acc = 0.0;
    for (int k = 0; k <= kmax_; ++k) {
      if (scaled_[k].empty()) continue;
      acc += radial(k, t1) * detail::sector_angular(lp_, k, t2);
    }
    return acc;
  }

  double operator()(const SphericalPoint& p) const {
    if (p.dimension() != lp_.n()) throw DomainError("synthesize: point dimension does not match the field");
    return (*this)(p.theta1(), p.sector_angle());
  }

  int order_bound() const { return kmax_; }
  const LambdaParam& lambda_param() const { return lp_; }

 private:
  LambdaParam lp_;
  int L_;
  int kmax_;
  std::vector<std::vector<double>> scaled_;
  mutable std::vector<double> work_;
};

inline double synthesize(const CoefficientField& field, const SphericalPoint& p) { return FieldSynthesizer(field)(p); }

inline std::vector<double> synthesize(const CoefficientField& field, std::span<const SphericalPoint> points) {
  FieldSynthesizer synth(field);
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) out.push_back(synth(p));
  return out;
}

/// Result of fitting a_l^j(f^(d)) / (prod_{i<j} beta_{l,i} a_l^0(f)) by a polynomial in u = l(2 lambda + l).
struct StructureFit {
  int j = 0;
  int expected_degree = 0;
  int fitted_degree = -1;  // -1: no degree up to the search limit fit
  double max_residual = 0.0;
  std::vector<double> coefficients;  // ascending powers of u
  bool ok() const { return fitted_degree == expected_degree; }
};

struct StructureReport {
  int d = 0;
  int L = 0;
  std::vector<StructureFit> fits;  // one per j with j == d (mod 2)
  bool parity_exact = true;        // all a_l^j with j != d (mod 2) are exactly zero
  bool ok() const {
    return parity_exact && std::all_of(fits.begin(), fits.end(), [](const StructureFit& f) { return f.ok(); });
  }
};

/// Checks the coefficient structure of the d-th derivative of the unit zonal
/// seed a_l^0 = 1 for l <= L. Failures are reported, not thrown.
inline StructureReport structure_polynomial_check(const LambdaParam& lp, int d, int L, double rel_tol = 1e-9) {
  if (d < 0 || d > 8) throw DomainError("structure_polynomial_check: need 0 <= d <= 8");
  if (L < 1 || L > 60) throw DomainError("structure_polynomial_check: need 1 <= L <= 60");
  std::vector<double> seed(static_cast<std::size_t>(L) + 1, 1.0);
  const CoefficientField fd = derivative_order(seed, lp, d);
  const double two_lam = 2.0 * lp.lambda();

  StructureReport report;
  report.d = d;
  report.L = L;
  for (int l = 0; l <= L; ++l)
    for (int j = 0; j <= std::min(l, fd.order_bound()); ++j)
      if ((j - d) % 2 != 0 && fd(l, j) != 0.0) report.parity_exact = false;

  for (int j = d % 2; j <= d; j += 2) {
    StructureFit fit;
    fit.j = j;
    fit.expected_degree = (d - j) / 2;
    std::vector<double> us, ys;
    for (int l = std::max(j, 1); l <= L; ++l) {
      double prod = 1.0;
      for (int i = 0; i < j; ++i) prod *= beta(lp, l, i);
      us.push_back(l * (two_lam + l));
      ys.push_back(fd(l, j) / prod);
    }
    const double u_scale = us.back();
    double y_scale = 0.0;
    for (double y : ys) y_scale = std::max(y_scale, std::abs(y));
    if (y_scale == 0.0) y_scale = 1.0;
    const int max_deg = std::min<int>(static_cast<int>(us.size()) - 1, fit.expected_degree + 2);
    for (int deg = 0; deg <= max_deg; ++deg) {
      Eigen::MatrixXd V(us.size(), deg + 1);
      Eigen::VectorXd y(us.size());
      for (std::size_t r = 0; r < us.size(); ++r) {
        double p = 1.0;
        for (int c = 0; c <= deg; ++c) {
          V(r, c) = p;
          p *= us[r] / u_scale;
        }
        y(r) = ys[r];
      }
      const Eigen::VectorXd coef = V.colPivHouseholderQr().solve(y);
      const double resid = (V * coef - y).cwiseAbs().maxCoeff() / y_scale;
      if (resid <= rel_tol) {
        fit.fitted_degree = deg;
        fit.max_residual = resid;
        fit.coefficients.resize(deg + 1);
        for (int c = 0; c <= deg; ++c) fit.coefficients[c] = coef(c) / std::pow(u_scale, c);
        break;
      }
      fit.max_residual = resid;
    }
    report.fits.push_back(std::move(fit));
  }
  return report;
}

}  // namespace pmw
