// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "levygauss/chaos.hpp"
#include "levygauss/exact.hpp"

using namespace levygauss;
using Catch::Approx;

namespace {

TestFunction step_function(std::vector<double> values) {
  const int cells = static_cast<int>(values.size());
  return TestFunction(PartitionOfBase::uniform(cells), std::move(values));
}

Rational random_rational(CounterRng& rng, int denom_cap = 5) {
  const int num = static_cast<int>(rng.uniform_index(11)) - 5;
  const int den = 1 + static_cast<int>(rng.uniform_index(denom_cap));
  return Rational(num, den);
}

}  // namespace

TEST_CASE("test functions") {
  const TestFunction f = step_function({1.0, -2.0, 0.5, 0.0});
  CHECK(f(0.1) == 1.0);
  CHECK(f(0.3) == -2.0);
  CHECK(f.integral() == Approx(0.25 * (1.0 - 2.0 + 0.5)));
  CHECK(f.integral_over(0.0, 0.5) == Approx(0.25 * (1.0 - 2.0)));
  CHECK(f.integral_over(0.1, 0.3) == Approx(0.15 * 1.0 + 0.05 * -2.0));
  const TestFunction g = step_function({0.0, 1.0, 0.0, 1.0});
  CHECK(inner_product(f, g) == Approx(0.25 * (-2.0 + 0.0)));
}

TEST_CASE("generalized hermite functionals") {
  const TestFunction f1 = step_function({1.0, -0.5});
  const TestFunction f2 = step_function({0.3, 0.7});
  WhiteNoiseSample eta{{0.4, -1.2}};

  SECTION("order one is the pairing") {
    CHECK(generalized_hermite({f1}, eta) == Approx(pair_with_noise(f1, eta)));
  }
  SECTION("order two subtracts the inner product") {
    const double expected =
        pair_with_noise(f1, eta) * pair_with_noise(f2, eta) - inner_product(f1, f2);
    CHECK(generalized_hermite({f1, f2}, eta) == Approx(expected));
  }
  SECTION("equal arguments give scaled hermite polynomials, exactly") {
    // rational inputs make both sides exact
    CounterRng rng(61, stream_id("hermite-equal-args"));
    for (int trial = 0; trial < 6; ++trial) {
      const Rational v0 = random_rational(rng), v1 = random_rational(rng);
      const Rational e0 = random_rational(rng), e1 = random_rational(rng);
      const Rational half(1, 2);
      const Rational norm_sq = (v0 * v0 + v1 * v1) * half;
      if (norm_sq == 0) continue;
      const Rational pairing = v0 * e0 + v1 * e1;
      for (int n = 1; n <= 6; ++n) {
        std::vector<Rational> linear(n, pairing);
        std::vector<std::vector<Rational>> pair_ip(n, std::vector<Rational>(n, norm_sq));
        CHECK(hermite_functional_core(linear, pair_ip) == hermite_sum(n, norm_sq, pairing));
      }
    }
  }
}

TEST_CASE("generalized charlier functionals") {
  const TestFunction f = step_function({1.0, 0.0});
  const TestFunction g = step_function({0.5, -1.0});
  PointConfiguration omega;
  omega.points = {{0.1, 1.0}, {0.4, 1.0}, {0.7, 1.0}};

  SECTION("order one is the centered count sum") {
    const double expected = (f(0.1) + f(0.4) + f(0.7)) - f.integral();
    CHECK(generalized_charlier({f}, omega) == Approx(expected));
  }
  SECTION("order two matches the explicit quadratic form") {
    const double c1f = generalized_charlier({f}, omega);
    const double c1g = generalized_charlier({g}, omega);
    double diag = 0;
    for (const auto& p : omega.points) diag += f(p.location) * g(p.location);
    CHECK(generalized_charlier({f, g}, omega) == Approx(c1f * c1g - diag));
  }
  SECTION("indicator arguments give charlier polynomials of the count, exactly") {
    // nu(A) = 1/2 here; points in A: counts vary over configurations
    const Rational mass(1, 2);
    for (int count = 0; count <= 5; ++count) {
      for (int n = 1; n <= 5; ++n) {
        std::vector<std::vector<Rational>> point_values(
            n, std::vector<Rational>(count, Rational(1)));
        std::vector<Rational> centered(n, Rational(count) - mass);
        CHECK(charlier_functional_core(point_values, centered) ==
              charlier_sum(n, mass, Rational(count)));
      }
    }
  }
}

TEST_CASE("the combinatorial integral agrees with both functional families") {
  CounterRng rng(67, stream_id("rota-vs-functionals"));
  for (int n = 1; n <= 5; ++n) {
    // random piecewise-constant data, rational for exactness
    const int cells = 3;
    std::vector<std::vector<Rational>> values(n);
    for (int i = 0; i < n; ++i)
      for (int c = 0; c < cells; ++c) values[i].push_back(random_rational(rng));

    SECTION("gaussian rule, order " + std::to_string(n)) {
      std::vector<Rational> noise{random_rational(rng), random_rational(rng),
                                  random_rational(rng)};
      const Rational third(1, 3);
      std::vector<Rational> linear(n, Rational(0));
      std::vector<std::vector<Rational>> pair_ip(n, std::vector<Rational>(n, Rational(0)));
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cells; ++c) linear[i] += values[i][c] * noise[c];
        for (int j = 0; j < n; ++j)
          for (int c = 0; c < cells; ++c) pair_ip[i][j] += values[i][c] * values[j][c] * third;
      }
      // direct permutation expansion with vanishing higher diagonals
      Rational direct(0);
      for (const Permutation& perm : enumerate_permutations(n)) {
        const CycleType type = cycle_type(perm);
        bool vanishes = false;
        for (int len = 3; len <= n; ++len)
          if (type.counts[len - 1] > 0) vanishes = true;
        if (vanishes) continue;
        Rational prod(1);
        for (int i = 0; i < n; ++i) {
          if (perm.images[i] == i)
            prod *= linear[i];
          else if (perm.images[i] > i)
            prod *= pair_ip[i][perm.images[i]];
        }
        const int c = cycle_type(perm).cycle_count();
        if ((n - c) % 2 == 0)
          direct += prod;
        else
          direct -= prod;
      }
      CHECK(direct == hermite_functional_core(linear, pair_ip));
    }
  }
}

TEST_CASE("rota integral double paths") {
  const TestFunction f1 = step_function({1.0, -0.5, 0.2});
  const TestFunction f2 = step_function({0.3, 0.7, -0.1});
  const TestFunction f3 = step_function({-0.2, 0.1, 0.4});

  SECTION("gaussian") {
    WhiteNoiseSample eta{{0.4, -1.2, 0.9}};
    const std::vector<TestFunction> fs{f1, f2, f3};
    CHECK(rota_integral(fs, DiagonalRule::kGaussian, eta) ==
          Approx(generalized_hermite(fs, eta)).epsilon(1e-14));
    CHECK_THROWS_AS(rota_integral(fs, DiagonalRule::kGaussian, Realization(PointConfiguration{})),
                    std::invalid_argument);
  }
  SECTION("poisson") {
    PointConfiguration omega;
    omega.points = {{0.05, 1.0}, {0.5, 1.0}};
    const std::vector<TestFunction> fs{f1, f2};
    CHECK(rota_integral(fs, DiagonalRule::kPoisson, omega) ==
          Approx(generalized_charlier(fs, omega)).epsilon(1e-14));
    CHECK_THROWS_AS(rota_integral(fs, DiagonalRule::kPoisson, Realization(WhiteNoiseSample{})),
                    std::invalid_argument);
  }
  SECTION("indicator square on three points") {
    // f = g = indicator of A with nu(A) = 1, three points inside:
    // the order-2 value is the charlier polynomial C_2 at 3 with rate 1
    PointConfiguration omega;
    omega.points = {{0.1, 1.0}, {0.2, 1.0}, {0.3, 1.0}};
    TestFunction chi = TestFunction::constant(1.0);
    const double expected = charlier(2, 1.0, 3.0);  // = 1
    CHECK(expected == Approx(1.0));
    CHECK(rota_integral({chi, chi}, DiagonalRule::kPoisson, omega) == Approx(expected));
  }
}

TEST_CASE("multiplicative functionals and the logarithm") {
  const TestFunction h = step_function({0.5, -0.25});

  SECTION("gauss log is linear") {
    WhiteNoiseSample eta{{0.3, -0.8}};
    CHECK(log_multiplicative(FactorizationKind::kGauss, h, eta) ==
          Approx(pair_with_noise(h, eta)));
    WhiteNoiseSample zero{{0.0, 0.0}};
    CHECK(log_multiplicative(FactorizationKind::kGauss, h, zero) == 0.0);
  }
  SECTION("poisson log is the centered sum") {
    PointConfiguration omega;
    omega.points = {{0.1, 1.0}, {0.6, 1.0}, {0.8, 1.0}};
    const double c = 0.7;
    const TestFunction hc = TestFunction::constant(c);
    CHECK(log_multiplicative(FactorizationKind::kPoisson, hc, omega) ==
          Approx(c * 3 - c));
  }
  SECTION("poisson log is additive across cells") {
    PointConfiguration omega;
    omega.points = {{0.1, 1.0}, {0.6, 1.0}, {0.8, 1.0}};
    const double whole = log_multiplicative(FactorizationKind::kPoisson, h, omega);
    double split = 0;
    for (int cell = 0; cell < 2; ++cell) {
      const double lo = cell * 0.5, hi = lo + 0.5;
      double cell_sum = 0;
      for (const auto& p : omega.points)
        if (p.location >= lo && p.location < hi) cell_sum += h(p.location);
      split += cell_sum - h.integral_over(lo, hi);
    }
    CHECK(whole == Approx(split).margin(1e-14));
  }
  SECTION("normalization: unit expectation via closed forms") {
    // E prod(1+h) e^{-int h} = 1 by the product formula
    const int samples = 20000;
    double sum = 0;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(71, static_cast<std::uint64_t>(s));
      const PointConfiguration omega = sample_poisson_config(1.0, rng);
      sum += multiplicative_functional(FactorizationKind::kPoisson, h, omega);
    }
    CHECK(sum / samples == Approx(1.0).margin(0.02));
  }
}

TEST_CASE("per-cell logarithm defect identity") {
  for (const auto kind : {FactorizationKind::kPoisson, FactorizationKind::kGauss}) {
    for (const double c : {0.3, 0.5}) {
      for (const double mass : {0.5, 1.0}) {
        const double m = c * c * mass;
        const double defect = per_cell_log_defect(kind, c, mass);
        CHECK(defect == Approx(std::exp(m) - 1.0 - m).margin(1e-10));
      }
    }
  }
}

TEST_CASE("logarithm convergence profile") {
  const TestFunction h = TestFunction::constant(0.5);
  std::vector<PartitionOfBase> refinements;
  for (int cells : {1, 2, 4, 8, 16}) refinements.push_back(PartitionOfBase::uniform(cells));

  SECTION("zero function gives a zero profile") {
    const TestFunction zero = TestFunction::constant(0.0);
    const auto profile =
        log_convergence_profile(FactorizationKind::kPoisson, zero, refinements, 200, 5);
    for (const auto& point : profile) CHECK(point.distance_sq == 0.0);
  }
  SECTION("poisson distance halves with the cell size") {
    const auto profile =
        log_convergence_profile(FactorizationKind::kPoisson, h, refinements, 60000, 77);
    REQUIRE(profile.size() == 5);
    for (size_t i = 1; i < profile.size(); ++i) {
      CHECK(profile[i].delta == Approx(profile[i - 1].delta / 2));
      CHECK(profile[i].distance_sq < 0.75 * profile[i - 1].distance_sq);
    }
    // expected initial value: e^m - 1 - m with m = 0.25
    CHECK(profile[0].distance_sq ==
          Approx(std::exp(0.25) - 1.0 - 0.25).epsilon(0.15));
  }
  SECTION("gauss profile also decays") {
    const auto profile =
        log_convergence_profile(FactorizationKind::kGauss, h, refinements, 60000, 78);
    CHECK(profile.back().distance_sq < 0.2 * profile.front().distance_sq);
  }
}

TEST_CASE("monte carlo chaos gram matrices") {
  const TestFunction f = TestFunction::constant(1.0);
  const TestFunction g =
      TestFunction(PartitionOfBase::uniform(2), std::vector<double>{1.0, -1.0});
  // entries: constant, two order-1, one order-2, one order-3
  const TestFunction f2(PartitionOfBase::uniform(2), std::vector<double>{1.0, 1.0});
  const TestFunction g2 = g;
  std::vector<ChaosEntry> entries;
  entries.push_back({0, {}});
  entries.push_back({1, {f2}});
  entries.push_back({2, {f2, g2}});
  entries.push_back({3, {f2, f2, g2}});

  SECTION("gaussian side") {
    const GramEstimate est = chaos_gram_mc(FactorizationKind::kGauss, entries, 60000, 101);
    // cross-order entries vanish
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        CHECK(std::abs(est.mean(i, j)) < 3.5 * std::max(est.std_error(i, j), 1e-12));
      }
    // order-1 diagonal is ||f||^2 = 1
    CHECK(std::abs(est.mean(1, 1) - 1.0) < 3.5 * est.std_error(1, 1));
  }
  SECTION("poisson side") {
    const GramEstimate est = chaos_gram_mc(FactorizationKind::kPoisson, entries, 60000, 103);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        if (i == j) continue;
        CHECK(std::abs(est.mean(i, j)) < 3.5 * std::max(est.std_error(i, j), 1e-12));
      }
    CHECK(std::abs(est.mean(1, 1) - 1.0) < 3.5 * est.std_error(1, 1));
  }
  SECTION("order cap") {
    std::vector<ChaosEntry> deep;
    deep.push_back({7, std::vector<TestFunction>(7, f)});
    CHECK_THROWS_AS(chaos_gram_mc(FactorizationKind::kGauss, deep, 10, 1), std::length_error);
  }
}

TEST_CASE("isometry of multiplicative functionals, monte carlo side") {
  const TestFunction h1(PartitionOfBase::uniform(2), std::vector<double>{0.4, -0.1});
  const TestFunction h2(PartitionOfBase::uniform(2), std::vector<double>{0.2, 0.3});
  const double target = std::exp(inner_product(h1, h2));
  const int samples = 100000;
  double sum = 0, sum_sq = 0;
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(107, static_cast<std::uint64_t>(s));
    const PointConfiguration omega = sample_poisson_config(1.0, rng);
    const double v = multiplicative_functional(FactorizationKind::kPoisson, h1, omega) *
                     multiplicative_functional(FactorizationKind::kPoisson, h2, omega);
    sum += v;
    sum_sq += v * v;
  }
  const double mean = sum / samples;
  const double se = std::sqrt((sum_sq / samples - mean * mean) / samples);
  CHECK(std::abs(mean - target) < 3.0 * se);
  // and the gauss side closes to the same number
  double gsum = 0, gsq = 0;
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(109, static_cast<std::uint64_t>(s));
    const WhiteNoiseSample eta = sample_white_noise(h1.partition, rng);
    const double v = multiplicative_functional(FactorizationKind::kGauss, h1, eta) *
                     multiplicative_functional(FactorizationKind::kGauss, h2, eta);
    gsum += v;
    gsq += v * v;
  }
  const double gmean = gsum / samples;
  const double gse = std::sqrt((gsq / samples - gmean * gmean) / samples);
  CHECK(std::abs(gmean - target) < 3.0 * gse);
}
