// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "levygauss/levy.hpp"

using namespace levygauss;
using Catch::Approx;

TEST_CASE("jump polynomial bases") {
  SECTION("dirac degenerates to the constant only") {
    const LevySpec spec{0, 0, dirac_measure(1.0)};
    const JumpPolynomialBasis basis = build_jump_basis(spec, 5);
    CHECK(basis.size() == 1);
    CHECK(basis.coefficients[0] == std::vector<double>{1.0});
  }
  SECTION("three atoms give exactly three polynomials") {
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{1.0, 0.3}, {2.0, 0.5}, {3.0, 0.2}}}};
    CHECK(build_jump_basis(spec, 6).size() == 3);
  }
  SECTION("gamma produces laguerre with parameter one, up to scale") {
    const JumpPolynomialBasis basis = build_jump_basis(gamma_spec(), 4);
    REQUIRE(basis.size() == 5);
    for (int n = 0; n <= 4; ++n) {
      // L_n^(1) has leading coefficient (-1)^n / n!; compare monic forms
      const auto lag = laguerre_coefficients(n, 1.0);
      const double scale = std::tgamma(n + 1.0) * ((n % 2 == 0) ? 1.0 : -1.0);
      REQUIRE(basis.coefficients[n].size() == lag.size());
      for (size_t i = 0; i < lag.size(); ++i)
        CHECK(basis.coefficients[n][i] == Approx(scale * lag[i]).margin(1e-8));
    }
  }
  SECTION("orthogonality of the basis under the weighted moments") {
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{0.5, 1.0}, {1.5, 0.7}, {2.5, 0.3}}}};
    const JumpPolynomialBasis basis = build_jump_basis(spec, 2);
    const auto& atoms = std::get<FiniteAtomicMeasure>(spec.levy_measure).atoms;
    for (int i = 0; i < basis.size(); ++i)
      for (int j = 0; j < basis.size(); ++j) {
        double ip = 0;
        for (const auto& [t, m] : atoms)
          ip += m * t * t * evaluate_polynomial(basis.coefficients[i], t) *
                evaluate_polynomial(basis.coefficients[j], t);
        const double target = (i == j) ? basis.norms_sq[i] : 0.0;
        CHECK(ip == Approx(target).margin(1e-10));
      }
  }
  SECTION("gamma basis gram is the identity after normalization") {
    const JumpPolynomialBasis basis = build_jump_basis(gamma_spec(), 6);
    // quadrature over t e^{-t} via moments: use the exact rational moments
    for (int i = 0; i < basis.size(); ++i)
      for (int j = 0; j <= i; ++j) {
        double ip = 0;
        for (size_t pi = 0; pi < basis.coefficients[i].size(); ++pi)
          for (size_t pj = 0; pj < basis.coefficients[j].size(); ++pj)
            ip += basis.coefficients[i][pi] * basis.coefficients[j][pj] *
                  std::tgamma(pi + pj + 2.0);  // int t^{p+q+1} e^{-t} dt
        const double normalized = ip / std::sqrt(basis.norms_sq[i] * basis.norms_sq[j]);
        CHECK(normalized == Approx(i == j ? 1.0 : 0.0).margin(1e-8));
      }
  }
}

TEST_CASE("dimension invariant") {
  CHECK(dimension_invariant(LevySpec{0, 0, dirac_measure(1.0)}).value == 1);
  CHECK(dimension_invariant(LevySpec{0, 0, dirac_measure(1.0)}).is_finite);
  const LevySpec three{0, 0, FiniteAtomicMeasure{{{1.0, 0.2}, {2.0, 0.2}, {3.0, 0.2}}}};
  CHECK(dimension_invariant(three).value == 3);
  CHECK_FALSE(dimension_invariant(gamma_spec()).is_finite);
}

TEST_CASE("marked multiplicative functionals") {
  SECTION("vacuum") {
    const MarkedTestFunction h{TestFunction::constant(0.0), {0.0, 1.0}};
    PointConfiguration config;
    config.points = {{0.3, 1.0}, {0.7, 2.0}};
    CHECK(levy_multiplicative(h, config, LevySpec{0, 0, dirac_measure(1.0)}) == Approx(1.0));
  }
  SECTION("dirac reduces to the poisson multiplicative functional") {
    const LevySpec spec{0, 0, dirac_measure(1.0)};
    const TestFunction spatial(PartitionOfBase::uniform(2), std::vector<double>{0.4, -0.2});
    const MarkedTestFunction h{spatial, {0.0, 1.0}};  // h(x,t) = a(x) t, and t = 1 on marks
    for (int s = 0; s < 20; ++s) {
      CounterRng rng(201, static_cast<std::uint64_t>(s));
      const PointConfiguration config = sample_levy(spec, 1e-6, rng);
      const double marked = levy_multiplicative(h, config, spec);
      const double plain =
          multiplicative_functional(FactorizationKind::kPoisson, spatial, config);
      CHECK(marked == Approx(plain).epsilon(1e-12));
    }
  }
  SECTION("unit expectation under sampling, two atoms") {
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{1.0, 0.5}, {2.0, 0.5}}}};
    const MarkedTestFunction h{TestFunction::constant(0.3), {0.0, 1.0}};
    const int samples = 100000;
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(203, static_cast<std::uint64_t>(s));
      const PointConfiguration config = sample_levy(spec, 1e-6, rng);
      const double v = levy_multiplicative(h, config, spec);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::abs(mean - 1.0) < 3.0 * se);
  }
  SECTION("monte carlo inner products close to the exponential") {
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{1.0, 0.5}, {2.0, 0.5}}}};
    const MarkedTestFunction h1{TestFunction::constant(0.3), {0.0, 1.0}};
    const MarkedTestFunction h2{TestFunction::constant(-0.2), {0.0, 0.0, 1.0}};  // a t^2
    const double target = std::exp(marked_inner_product(h1, h2, spec));
    const int samples = 100000;
    double sum = 0, sum_sq = 0;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(207, static_cast<std::uint64_t>(s));
      const PointConfiguration config = sample_levy(spec, 1e-6, rng);
      const double v =
          levy_multiplicative(h1, config, spec) * levy_multiplicative(h2, config, spec);
      sum += v;
      sum_sq += v * v;
    }
    const double mean = sum / samples;
    const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
    CHECK(std::abs(mean - target) < 3.0 * se);
  }
  SECTION("divergent compensator is rejected") {
    const MarkedTestFunction h{TestFunction::constant(1.0), {0.5}};  // nonzero at t = 0
    PointConfiguration config;
    CHECK_THROWS_AS(levy_multiplicative(h, config, gamma_spec(), 0.0), std::domain_error);
  }
}

TEST_CASE("chaos blocks indexed by order and jump degree") {
  SECTION("campbell second moment on the (1,1) diagonal for dirac jumps") {
    const LevySpec spec{0, 0, dirac_measure(1.0)};
    const GramEstimate est = vnk_gram_mc(spec, {{1, 1}}, 50000, 211);
    // Var(sum t_i P_0(t_i)) = nu(X) * int t^2 dPi = 1
    CHECK(std::abs(est.mean(0, 0) - 1.0) < 3.5 * est.std_error(0, 0));
  }
  SECTION("distinct blocks are orthogonal, two-atom measure") {
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{1.0, 0.5}, {2.0, 0.5}}}};
    const std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 1}, {1, 2}, {2, 1}};
    const GramEstimate est = vnk_gram_mc(spec, pairs, 50000, 213);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        CHECK(std::abs(est.mean(i, j)) < 3.5 * std::max(est.std_error(i, j), 1e-12));
      }
  }
  SECTION("gamma measure blocks, truncated sampling") {
    const std::vector<std::pair<int, int>> pairs{{1, 1}, {1, 2}};
    const GramEstimate est = vnk_gram_mc(gamma_spec(), pairs, 50000, 217);
    CHECK(std::abs(est.mean(0, 1)) < 3.5 * std::max(est.std_error(0, 1), 1e-12));
  }
  SECTION("jump degree beyond the support is rejected") {
    const LevySpec spec{0, 0, dirac_measure(1.0)};
    CHECK_THROWS_AS(vnk_gram_mc(spec, {{1, 2}}, 10, 1), std::invalid_argument);
  }
}
