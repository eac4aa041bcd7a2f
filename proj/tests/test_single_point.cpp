// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "levygauss/rng.hpp"
#include "levygauss/single_point.hpp"

using namespace levygauss;
using Catch::Approx;

TEST_CASE("kernel values") {
  CHECK(kernel_1d(0, 0.0, 1.0) == Approx(std::exp(-0.5)).epsilon(1e-14));
  // H_1(2) with unit variance is 2
  CHECK(kernel_1d(1, 0.0, 1.0) == Approx(2.0 * std::exp(-0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(kernel_1d(0, 0.0, -1.0), std::domain_error);
}

TEST_CASE("kernel rows sum to one against the Poisson weight") {
  for (const double x : {-1.0, 0.0, 1.0})
    CHECK(kernel_row_sum(1.0, x, 200) == Approx(1.0).margin(1e-8));
  for (const double a : {0.5, 2.0})
    for (const double x : {-0.7, 0.3})
      CHECK(kernel_row_sum(a, x, 400) == Approx(1.0).margin(1e-8));
}

TEST_CASE("inverse isometry maps charlier sequences to hermite values") {
  const double a = 1.0;
  const int truncation = 200;
  SECTION("first degree") {
    PoissonFunctional1D f{{}, a};
    f.values.resize(truncation + 1);
    for (int k = 0; k <= truncation; ++k) f.values[k] = k - a;  // C_1
    CHECK(apply_inverse_isometry_1d(f, 1.5, truncation) == Approx(1.5).margin(1e-8));
  }
  SECTION("constants map to constants") {
    PoissonFunctional1D f{std::vector<double>(truncation + 1, 1.0), a};
    CHECK(apply_inverse_isometry_1d(f, 0.3, truncation) == Approx(1.0).margin(1e-10));
  }
  SECTION("second degree at the origin") {
    PoissonFunctional1D f{{}, a};
    f.values.resize(truncation + 1);
    for (int k = 0; k <= truncation; ++k) f.values[k] = charlier(2, a, static_cast<double>(k));
    // H_2(0) = -1
    CHECK(apply_inverse_isometry_1d(f, 0.0, truncation) == Approx(-1.0).margin(1e-8));
  }
  SECTION("tail precondition enforced") {
    PoissonFunctional1D f{std::vector<double>(4, 1.0), a};
    CHECK_THROWS_AS(apply_inverse_isometry_1d(f, 0.0, 3), PrecisionError);
  }
}

TEST_CASE("forward coefficients") {
  SECTION("single hermite coefficient gives the charlier sequence") {
    GaussFunctional1D f{{{1, 1.0}}, 1.0};
    const PoissonFunctional1D image = isometry_coefficients_1d(f);
    for (int k = 0; k < 5; ++k) CHECK(image.values[k] == Approx(k - 1.0));
  }
  SECTION("constants") {
    GaussFunctional1D f{{{0, 3.25}}, 2.0};
    const PoissonFunctional1D image = isometry_coefficients_1d(f);
    CHECK(image.values[0] == Approx(3.25));
    CHECK(image.values[7] == Approx(3.25));
  }
  SECTION("inner products are preserved") {
    CounterRng rng(21, stream_id("isometry-ip"));
    for (const double a : {0.5, 1.0, 2.0}) {
      GaussFunctional1D f{{}, a}, g{{}, a};
      for (int n = 0; n <= 6; ++n) {
        f.hermite_coeffs[n] = rng.uniform() * 2 - 1;
        g.hermite_coeffs[n] = rng.uniform() * 2 - 1;
      }
      double gauss_side = 0;
      for (int n = 0; n <= 6; ++n)
        gauss_side +=
            f.hermite_coeffs[n] * g.hermite_coeffs[n] * std::pow(a, n) * std::tgamma(n + 1.0);
      const PoissonFunctional1D fi = isometry_coefficients_1d(f);
      const PoissonFunctional1D gi = isometry_coefficients_1d(g);
      double poisson_side = 0;
      for (size_t k = 0; k < std::min(fi.values.size(), gi.values.size()); ++k) {
        const double log_w = -a + k * std::log(a) - std::lgamma(k + 1.0);
        poisson_side += std::exp(log_w) * fi.values[k] * gi.values[k];
      }
      CHECK(poisson_side == Approx(gauss_side).margin(1e-8));
    }
  }
}

TEST_CASE("round trip through the isometry is the identity") {
  const int truncation = 260;
  for (const double a : {0.5, 1.0, 2.0}) {
    for (int n = 0; n <= 8; ++n) {
      GaussFunctional1D f{{{n, 1.0}}, a};
      const PoissonFunctional1D image = isometry_coefficients_1d(f, truncation);
      for (const double x : {-1.0, 0.25, 2.0}) {
        const double back = apply_inverse_isometry_1d(image, x, truncation);
        CHECK(back == Approx(hermite(n, a, x)).margin(1e-6));
      }
    }
  }
}

TEST_CASE("multiplicative generating form of the isometry") {
  // the image of e^{tx - at^2/2} is k -> e^{-at}(1+t)^k; the Poisson-side
  // pairing of the images for parameters t and s closes to e^{ast}
  const double a = 1.0;
  for (const double t : {-0.5, 0.25})
    for (const double s : {-0.5, 0.25}) {
      double sum = 0;
      for (int k = 0; k <= 80; ++k) {
        const double log_w = -a + k * std::log(a) - std::lgamma(k + 1.0);
        sum += std::exp(log_w) * std::pow(1.0 + t, k) * std::pow(1.0 + s, k);
      }
      const double pairing = std::exp(-a * t) * std::exp(-a * s) * sum;
      CHECK(pairing == Approx(std::exp(a * s * t)).margin(1e-8));
    }
}

TEST_CASE("normalization of the bilinear kernel series") {
  SECTION("a = 2 certifies the a^n-in-denominator weighting") {
    const NormalizationVerdict v = resolve_identity_normalization(2.0, 0.5, 2, 300);
    CHECK(v.match == NormalizationVerdict::Match::kDenominator);
    CHECK(v.residual_denominator < 1e-8);
    CHECK(v.residual_numerator > 1e-4);
  }
  SECTION("a = 1/2, x = 0, k = 1: exactly one candidate") {
    const NormalizationVerdict v = resolve_identity_normalization(0.5, 0.0, 1, 300);
    CHECK(v.match == NormalizationVerdict::Match::kDenominator);
  }
  SECTION("a = 1 masks the difference") {
    const NormalizationVerdict v = resolve_identity_normalization(1.0, 0.7, 3, 300);
    CHECK(v.match == NormalizationVerdict::Match::kBoth);
    CHECK(v.sum_a_in_numerator == Approx(v.sum_a_in_denominator));
  }
}
