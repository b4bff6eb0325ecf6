#pragma once

#include <vector>

namespace pmw {

/// Mixing coefficients gamma_0..gamma_D for order D, solved for a given lambda.
struct GammaVector {
  int order = 0;
  double lambda = 0.0;
  std::vector<double> gammas;

  double operator[](int d) const { return gammas.at(static_cast<std::size_t>(d)); }
};

}  // namespace pmw
