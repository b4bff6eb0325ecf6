// Prints a few directional wavelet profiles on S^3 and the mixing coefficients for small orders.
#include <cstdio>
#include <numbers>

#include "pmw/pmw.hpp"

int main() {
  const pmw::LambdaParam lp(3);
  for (int d = 0; d <= 3; ++d) {
    const pmw::WaveletSpec spec(lp, pmw::KernelKind::Poisson, d, 0.3);
    const pmw::FieldSynthesizer psi(pmw::directional_wavelet_field_auto(spec, 1e-12));
    std::printf("order %d:", d);
    for (int i = 0; i <= 6; ++i) {
      const double t1 = std::numbers::pi * i / 12.0;
      std::printf(" %11.4e", psi(pmw::SphericalPoint::sector(3, t1, 0.0)));
    }
    std::printf("\n");
  }
  for (int D = 1; D <= 3; ++D) {
    const pmw::GammaVector g = pmw::solve_gamma(lp, D);
    std::printf("gamma[%d] =", D);
    for (double v : g.gammas) std::printf(" %.10f", v);
    std::printf("\n");
  }
}
