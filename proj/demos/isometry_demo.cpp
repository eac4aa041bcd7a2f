// SPDX-License-Identifier: Apache-2.0
//
// A short tour: map a Gaussian functional to the Poisson side, check the
// inner product survives, then pull it back through the explicit kernel.

#include <cstdio>

#include "levygauss/single_point.hpp"

using namespace levygauss;

int main() {
  const double a = 1.0;  // base-space mass

  // F = H_1 + 2 H_3 on the Gaussian side
  GaussFunctional1D f{{{1, 1.0}, {3, 2.0}}, a};
  const PoissonFunctional1D image = isometry_coefficients_1d(f, 260);

  std::printf("Poisson-side values of the image at small counts:\n");
  for (int k = 0; k <= 5; ++k) std::printf("  F(%d) = %+.6f\n", k, image.values[k]);

  // norms agree: ||H_n||^2 = ||C_n||^2 = a^n n!
  const double gauss_norm_sq = 1.0 * 1.0 + 4.0 * 6.0;
  double poisson_norm_sq = 0;
  for (size_t k = 0; k < image.values.size(); ++k) {
    const double log_w = -a + k * std::log(a) - std::lgamma(k + 1.0);
    poisson_norm_sq += std::exp(log_w) * image.values[k] * image.values[k];
  }
  std::printf("norm^2 on the Gaussian side: %.12f\n", gauss_norm_sq);
  std::printf("norm^2 on the Poisson side:  %.12f\n", poisson_norm_sq);

  // pull back through the kernel and compare pointwise
  std::printf("pullback through the kernel vs the original functional:\n");
  for (const double x : {-1.0, 0.0, 0.5, 2.0}) {
    const double back = apply_inverse_isometry_1d(image, x, 260);
    const double direct = hermite(1, a, x) + 2.0 * hermite(3, a, x);
    std::printf("  x = %+4.1f: %+.10f vs %+.10f\n", x, back, direct);
  }
  return 0;
}
