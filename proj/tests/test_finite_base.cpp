// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <complex>

#include "levygauss/finite_base.hpp"
#include "levygauss/rng.hpp"

using namespace levygauss;
using Catch::Approx;

TEST_CASE("multi-index blocks are ordered by total degree then lexicographically") {
  const auto block = multi_indices_up_to(3, 4);
  CHECK(block.size() == 35);  // C(4+3, 3)
  CHECK(block.front().degrees == std::vector<int>{0, 0, 0});
  for (size_t i = 1; i < block.size(); ++i) CHECK(multi_index_less(block[i - 1], block[i]));
}

TEST_CASE("product kernel") {
  const FiniteBase base({1.0, 1.0});
  SECTION("vacuum index") {
    const MultiIndex zero{{0, 0}};
    const std::vector<double> x{0.3, -0.2};
    CHECK(kernel_finite(zero, x, base) ==
          Approx(std::exp(-0.5 - 0.3) * std::exp(-0.5 + 0.2)).epsilon(1e-14));
  }
  SECTION("frozen product value") {
    const MultiIndex k{{1, 0}};
    const std::vector<double> x{0.0, 0.0};
    CHECK(kernel_finite(k, x, base) == Approx(2.0 * std::exp(-1.0)).epsilon(1e-14));
  }
  SECTION("separability") {
    CounterRng rng(31, stream_id("kernel-separable"));
    const FiniteBase mixed({0.5, 1.5, 2.5});
    for (int trial = 0; trial < 10; ++trial) {
      MultiIndex k{{static_cast<int>(rng.uniform_index(5)), static_cast<int>(rng.uniform_index(5)),
                    static_cast<int>(rng.uniform_index(5))}};
      std::vector<double> x{rng.uniform() * 2 - 1, rng.uniform() * 2 - 1, rng.uniform() * 2 - 1};
      double product = 1;
      for (int j = 0; j < 3; ++j) product *= kernel_1d(k.degrees[j], x[j], mixed.weights[j]);
      CHECK(kernel_finite(k, x, mixed) == Approx(product).epsilon(1e-13));
    }
  }
  SECTION("dimension mismatch") {
    CHECK_THROWS_AS(kernel_finite(MultiIndex{{1}}, {0.0, 0.0}, base), std::invalid_argument);
  }
}

TEST_CASE("multiplicative images and their inner products") {
  SECTION("vacuum") {
    const FiniteBase base({1.0, 2.0});
    const auto image = multiplicative_image_finite<double>({0.0, 0.0}, base);
    CHECK(image(MultiIndex{{3, 5}}) == 1.0);
  }
  SECTION("closed single-cell sum") {
    const FiniteBase base({1.0});
    const double c = 0.6;
    const auto image = multiplicative_image_finite<double>({c}, base);
    const double ip = poisson_inner_product(image, image);
    CHECK(ip == Approx(std::exp(c * c)).margin(1e-12));
  }
  SECTION("two cells against the closed form") {
    const FiniteBase base({1.0, 2.0});
    const auto f = multiplicative_image_finite<double>({0.3, -0.2}, base);
    const auto g = multiplicative_image_finite<double>({0.1, 0.5}, base);
    const double expected = std::exp(1.0 * 0.3 * 0.1 + 2.0 * (-0.2) * 0.5);
    CHECK(poisson_inner_product(f, g) == Approx(expected).margin(1e-10));
  }
  SECTION("complex parameters") {
    using C = std::complex<double>;
    const FiniteBase base({0.7, 1.3});
    const std::vector<C> h{{0.2, 0.4}, {-0.1, 0.3}};
    const std::vector<C> g{{0.5, -0.2}, {0.0, 0.6}};
    const auto fi = multiplicative_image_finite<C>(h, base);
    const auto gi = multiplicative_image_finite<C>(g, base);
    const C expected = multiplicative_inner_product_closed_form(h, g, base);
    const C actual = poisson_inner_product(fi, gi);
    CHECK(std::abs(actual - expected) < 1e-10);
  }
}

TEST_CASE("unitarity of the kernel-mapped bases") {
  SECTION("single cell to degree 6") {
    CHECK(unitarity_defect(FiniteBase({1.0}), 6) < 1e-6);
  }
  SECTION("degree-0 block") {
    CHECK(unitarity_defect(FiniteBase({0.8}), 0) < 1e-10);
  }
  SECTION("three cells, total degree 4") {
    CHECK(unitarity_defect(FiniteBase({0.5, 1.0, 2.0}), 4) < 1e-6);
  }
  SECTION("block cap") {
    CHECK_THROWS_AS(unitarity_defect(FiniteBase({1.0, 1.0, 1.0}), 40), std::length_error);
  }
}

TEST_CASE("chaos coefficients on the finite base") {
  const FiniteBase base({1.0, 0.5});
  std::map<std::vector<int>, double> fe{{{1, 0}, 2.0}, {{0, 2}, -1.0}};
  std::map<std::vector<int>, double> ge{{{1, 0}, 0.5}, {{0, 2}, 3.0}, {{1, 1}, 1.0}};
  const ChaosCoefficients f(fe, base);
  const ChaosCoefficients g(ge, base);

  SECTION("inner product formula matches a direct Poisson-side series") {
    double series = 0;
    const int cut = 40;
    for (int k0 = 0; k0 <= cut; ++k0)
      for (int k1 = 0; k1 <= cut; ++k1) {
        const double log_w0 = -1.0 + k0 * std::log(1.0) - std::lgamma(k0 + 1.0);
        const double log_w1 = -0.5 + k1 * std::log(0.5) - std::lgamma(k1 + 1.0);
        series += std::exp(log_w0 + log_w1) * f.evaluate_poisson({k0, k1}) *
                  g.evaluate_poisson({k0, k1});
      }
    CHECK(series == Approx(f.inner_product(g)).margin(1e-8));
  }

  SECTION("tensor factorization matches the gauss side by quadrature") {
    const QuadratureRule& rule = gauss_hermite_rule(60);
    double quad = 0;
    for (size_t i = 0; i < rule.nodes.size(); ++i)
      for (size_t j = 0; j < rule.nodes.size(); ++j) {
        const std::vector<double> x{std::sqrt(1.0) * rule.nodes[i],
                                    std::sqrt(0.5) * rule.nodes[j]};
        quad += rule.weights[i] * rule.weights[j] * f.evaluate_gauss(x) * g.evaluate_gauss(x);
      }
    CHECK(quad == Approx(f.inner_product(g)).margin(1e-8));
  }
}

TEST_CASE("refinement consistency: splitting a cell preserves inner products") {
  // A functional of the total charge embeds into the split base through the
  // binomial convolution of the polynomial bases.
  const double a = 1.2;
  CounterRng rng(37, stream_id("refinement"));
  std::vector<double> coeff_f(6), coeff_g(6);
  for (int n = 0; n < 6; ++n) {
    coeff_f[n] = rng.uniform() * 2 - 1;
    coeff_g[n] = rng.uniform() * 2 - 1;
  }
  double single = 0;
  for (int n = 0; n < 6; ++n)
    single += coeff_f[n] * coeff_g[n] * std::pow(a, n) * std::tgamma(n + 1.0);

  const FiniteBase split({a / 2, a / 2});
  std::map<std::vector<int>, double> fe, ge;
  for (int n = 0; n < 6; ++n)
    for (int i = 0; i <= n; ++i) {
      const double binom = std::exp(std::lgamma(n + 1.0) - std::lgamma(i + 1.0) -
                                    std::lgamma(n - i + 1.0));
      fe[{i, n - i}] = coeff_f[n] * binom;
      ge[{i, n - i}] = coeff_g[n] * binom;
    }
  const ChaosCoefficients f(fe, split);
  const ChaosCoefficients g(ge, split);
  CHECK(f.inner_product(g) == Approx(single).margin(1e-8));

  // the embedding really is the same functional: values agree pointwise
  for (int trial = 0; trial < 5; ++trial) {
    const double x0 = rng.uniform() * 2 - 1, x1 = rng.uniform() * 2 - 1;
    double direct = 0;
    for (int n = 0; n < 6; ++n) direct += coeff_f[n] * hermite(n, a, x0 + x1);
    CHECK(f.evaluate_gauss({x0, x1}) == Approx(direct).margin(1e-9));
  }
  for (int k0 = 0; k0 < 4; ++k0)
    for (int k1 = 0; k1 < 4; ++k1) {
      double direct = 0;
      for (int n = 0; n < 6; ++n)
        direct += coeff_f[n] * charlier(n, a, static_cast<double>(k0 + k1));
      CHECK(f.evaluate_poisson({k0, k1}) == Approx(direct).margin(1e-9));
    }
}

TEST_CASE("multiplicative refinement is exact") {
  // constant h on a split cell: inner products match the unsplit closed form
  const double a = 1.4, h = 0.35, g = -0.15;
  const FiniteBase whole({a}), split({a / 2, a / 2});
  const double unsplit = poisson_inner_product(multiplicative_image_finite<double>({h}, whole),
                                               multiplicative_image_finite<double>({g}, whole));
  const double refined =
      poisson_inner_product(multiplicative_image_finite<double>({h, h}, split),
                            multiplicative_image_finite<double>({g, g}, split));
  CHECK(refined == Approx(unsplit).margin(1e-10));
  CHECK(unsplit == Approx(std::exp(a * h * g)).margin(1e-10));
}
