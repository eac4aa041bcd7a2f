// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "levygauss/combinatorics.hpp"
#include "levygauss/orthopoly.hpp"
#include "levygauss/rng.hpp"

using namespace levygauss;

namespace {

// Independent oracle: I(n) = I(n-1) + (n-1) I(n-2).
long long involution_count(int n) {
  if (n <= 1) return 1;
  long long prev2 = 1, prev1 = 1;
  for (int k = 2; k <= n; ++k) {
    const long long cur = prev1 + (k - 1) * prev2;
    prev2 = prev1;
    prev1 = cur;
  }
  return prev1;
}

Rational random_rational(CounterRng& rng, int denom_cap = 6) {
  const int num = static_cast<int>(rng.uniform_index(21)) - 10;
  const int den = 1 + static_cast<int>(rng.uniform_index(denom_cap));
  return Rational(num, den);
}

}  // namespace

TEST_CASE("involution enumeration matches the recurrence counts") {
  CHECK(enumerate_involutions(0).size() == 1);
  CHECK(enumerate_involutions(0)[0].degree() == 0);
  CHECK(enumerate_involutions(3).size() == 4);
  CHECK(enumerate_involutions(4).size() == 10);
  for (int n = 0; n <= 8; ++n) {
    const auto invs = enumerate_involutions(n);
    CHECK(static_cast<long long>(invs.size()) == involution_count(n));
    for (const auto& g : invs) {
      REQUIRE(is_valid_permutation(g));
      CHECK(compose(g, g).is_identity());
    }
  }
  CHECK_THROWS_AS(enumerate_involutions(11), std::length_error);
}

TEST_CASE("cycle types") {
  Permutation identity{{0, 1, 2}};
  CHECK(cycle_type(identity).counts == std::vector<int>{3, 0, 0});

  Permutation three_cycle{{1, 2, 0}};
  CHECK(cycle_type(three_cycle).counts == std::vector<int>{0, 0, 1});

  Permutation transposition{{1, 0, 2, 3}};
  CHECK(cycle_type(transposition).counts == std::vector<int>{2, 1, 0, 0});

  for (int n = 1; n <= 6; ++n)
    for (const auto& g : enumerate_permutations(n)) {
      const CycleType t = cycle_type(g);
      CHECK(t.degree() == n);
    }

  CHECK_THROWS_AS(cycle_type(Permutation{{0, 0}}), std::invalid_argument);
}

TEST_CASE("partitions into blocks of size at most two") {
  const std::vector<int> xyz{10, 20, 30};
  const auto partitions = enumerate_partitions_le2(xyz);
  REQUIRE(partitions.size() == 4);  // {x}{y}{z}, {xy}{z}, {x}{yz}, {xz}{y}
  int pair_partitions = 0;
  for (const auto& p : partitions) {
    CHECK(p.singletons.size() + 2 * p.pairs.size() == 3);
    if (!p.pairs.empty()) ++pair_partitions;
  }
  CHECK(pair_partitions == 3);

  CHECK(enumerate_partitions_le2({}).size() == 1);

  std::vector<int> four{0, 1, 2, 3};
  CHECK(enumerate_partitions_le2(four).size() == 10);

  // bijection with involutions at every degree
  for (int n = 0; n <= 8; ++n) {
    std::vector<int> ground(n);
    std::iota(ground.begin(), ground.end(), 0);
    CHECK(enumerate_partitions_le2(ground).size() == enumerate_involutions(n).size());
  }
}

TEST_CASE("augmented cycle index basics") {
  const std::vector<Rational> ones{1, 1, 1};
  CHECK(augmented_cycle_index(3, ones) == Rational(6));

  const std::vector<Rational> hermite_args{2, -1, 0};
  CHECK(augmented_cycle_index(3, hermite_args) == Rational(2));  // = H_3(2)

  // Z(S_2)[x-a, -x] = x^2 - (2a+1)x + a^2 = C_2 with rate a, on a rational sweep
  CounterRng rng(7, stream_id("cycle-index-charlier"));
  for (int trial = 0; trial < 20; ++trial) {
    const Rational x = random_rational(rng);
    Rational a = random_rational(rng);
    if (a <= 0) a = Rational(1, 2) - a;
    const std::vector<Rational> t{x - a, -x};
    const Rational expected = x * x - (2 * a + 1) * x + a * a;
    CHECK(augmented_cycle_index(2, t) == expected);
    CHECK(charlier_sum(2, a, x) == expected);
  }
}

TEST_CASE("enumerated and recurrence cycle-index paths agree") {
  CounterRng rng(11, stream_id("cycle-index-paths"));
  for (int n = 0; n <= 8; ++n) {
    std::vector<Rational> t;
    for (int i = 0; i < n; ++i) t.push_back(random_rational(rng));
    t.resize(std::max<size_t>(t.size(), 1), Rational(1));
    CHECK(augmented_cycle_index_enumerated(n, t) == augmented_cycle_index_recurrence(n, t));
  }
}

TEST_CASE("cycle-index generating function matches the series exponential") {
  const int degree = 10;
  CounterRng rng(13, stream_id("cycle-index-egf"));
  for (int trial = 0; trial < 3; ++trial) {
    std::vector<Rational> t;
    for (int i = 0; i < degree; ++i) t.push_back(random_rational(rng, 4));
    const std::vector<Rational> lhs = cycle_index_egf(t, degree);
    std::vector<Rational> exponent(degree + 1, Rational(0));
    for (int i = 1; i <= degree; ++i) exponent[i] = t[i - 1] / Rational(i);
    const std::vector<Rational> rhs = power_series_exp(exponent, degree);
    CHECK(lhs == rhs);
  }
}
