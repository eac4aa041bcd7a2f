// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "levygauss/chaos.hpp"
#include "levygauss/combinatorics.hpp"
#include "levygauss/finite_base.hpp"
#include "levygauss/levy.hpp"
#include "levygauss/orthopoly.hpp"
#include "levygauss/processes.hpp"
#include "levygauss/single_point.hpp"
#include "levygauss/voting.hpp"

namespace levygauss {

/// Shared knobs for every verification suite. Tolerances are pinned inside
/// the checks; tolerance_scale only loosens them for quick smoke runs.
struct SuiteConfig {
  std::uint64_t seed = 42;
  int samples = 100000;
  double tolerance_scale = 1.0;
};

struct CheckResult {
  std::string id;
  bool pass = false;
  double value = 0.0;      // measured statistic (defect, mismatch count, sigma ratio)
  double tolerance = 0.0;  // value <= tolerance passes
  std::uint64_t seed = 0;
};

struct SuiteReport {
  std::string name;
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

namespace detail {

inline void add_check(SuiteReport& report, const SuiteConfig& config, const std::string& id,
                      double value, double tolerance) {
  const double scaled = tolerance * config.tolerance_scale;
  report.checks.push_back({id, value <= scaled, value, scaled, config.seed});
}

inline std::vector<Rational> rational_grid() {
  return {Rational(-2), Rational(-1, 2), Rational(1, 3), Rational(1), Rational(5, 2)};
}

inline std::vector<Rational> rational_rates() {
  return {Rational(1, 2), Rational(1), Rational(3)};
}

/// 1% critical values of the chi-squared law by degrees of freedom.
inline double chi_squared_critical_1pct(int df) {
  static const double table[] = {0,       6.63490, 9.21034, 11.34487, 13.27670, 15.08627,
                                 16.81189, 18.47531, 20.09024, 21.66599, 23.20925, 24.72497,
                                 26.21697, 27.68825, 29.14124, 30.57791, 31.99993};
  if (df < 1 || df > 16) throw std::invalid_argument("chi_squared_critical_1pct: df out of table");
  return table[df];
}

struct MeanAccumulator {
  double sum = 0, sum_sq = 0;
  long long n = 0;

  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++n;
  }
  double mean() const { return sum / n; }
  double std_error() const {
    const double m = mean();
    return std::sqrt(std::max(0.0, sum_sq / n - m * m) / n);
  }
  /// |mean - target| in units of the standard error.
  double sigmas_from(double target) const {
    const double se = std_error();
    const double deviation = std::abs(mean() - target);
    if (se == 0.0) return deviation == 0.0 ? 0.0 : 1e300;
    return deviation / se;
  }
};

}  // namespace detail

// ---------------------------------------------------------------------------
// identities: exact combinatorics and orthogonality of the three families
// ---------------------------------------------------------------------------

inline SuiteReport run_identities_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.name = "identities";

  {  // involution counts match <=2-block partition counts and the recurrence
    long long mismatches = 0;
    long long prev2 = 1, prev1 = 1;
    for (int n = 0; n <= 8; ++n) {
      const long long expected = n <= 1 ? 1 : prev1 + (n - 1) * prev2;
      if (n > 1) {
        prev2 = prev1;
        prev1 = expected;
      }
      const auto involutions = enumerate_involutions(n);
      std::vector<int> ground(n);
      std::iota(ground.begin(), ground.end(), 0);
      if (static_cast<long long>(involutions.size()) != expected) ++mismatches;
      if (enumerate_partitions_le2(ground).size() != involutions.size()) ++mismatches;
    }
    detail::add_check(report, config, "identities.involutions_vs_partitions",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // hermite and charlier as cycle-index specializations, n <= 7, exact
    long long mismatches = 0;
    for (const Rational& a : detail::rational_rates())
      for (const Rational& x : detail::rational_grid())
        for (int n = 0; n <= 7; ++n) {
          std::vector<Rational> th{x, -a};
          th.resize(std::max(n, 2), Rational(0));
          if (hermite_sum(n, a, x) != augmented_cycle_index(n, th)) ++mismatches;
          std::vector<Rational> tc{x - a};
          for (int k = 2; k <= std::max(n, 2); ++k) tc.push_back(k % 2 == 0 ? -x : x);
          if (charlier_sum(n, a, x) != augmented_cycle_index(n, tc)) ++mismatches;
        }
    detail::add_check(report, config, "identities.polynomials_as_cycle_indices",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // generating function of the cycle index to degree 10, exact
    long long mismatches = 0;
    CounterRng rng(config.seed, stream_id("identities.cycle_index_egf"));
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Rational> t;
      for (int i = 0; i < 10; ++i)
        t.push_back(Rational(static_cast<int>(rng.uniform_index(9)) - 4,
                             1 + static_cast<int>(rng.uniform_index(3))));
      const std::vector<Rational> via_recurrence = cycle_index_egf(t, 10);
      std::vector<Rational> exponent(11, Rational(0));
      for (int i = 1; i <= 10; ++i) exponent[i] = t[i - 1] / Rational(i);
      if (via_recurrence != power_series_exp(exponent, 10)) ++mismatches;
    }
    detail::add_check(report, config, "identities.cycle_index_egf",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // enumerated vs recurrence cycle index, n <= 8
    long long mismatches = 0;
    CounterRng rng(config.seed, stream_id("identities.cycle_index_paths"));
    for (int n = 0; n <= 8; ++n) {
      std::vector<Rational> t;
      for (int i = 0; i < std::max(n, 1); ++i)
        t.push_back(Rational(static_cast<int>(rng.uniform_index(9)) - 4,
                             1 + static_cast<int>(rng.uniform_index(3))));
      if (augmented_cycle_index_enumerated(n, t) != augmented_cycle_index_recurrence(n, t))
        ++mismatches;
    }
    detail::add_check(report, config, "identities.cycle_index_dual_paths",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // charlier reflection formula, exact
    long long mismatches = 0;
    for (const Rational& a : detail::rational_rates())
      for (int n = 0; n <= 10; ++n)
        for (int k = 0; k <= 10; ++k)
          if (!charlier_reflection_check(n, k, a)) ++mismatches;
    detail::add_check(report, config, "identities.charlier_reflection",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // recurrence vs definitional sums to degree 20, exact
    long long mismatches = 0;
    for (const Rational& a : detail::rational_rates())
      for (const Rational& x : detail::rational_grid())
        for (int n = 0; n <= 20; ++n) {
          if (hermite(n, a, x) != hermite_sum(n, a, x)) ++mismatches;
          if (charlier(n, a, x) != charlier_sum(n, a, x)) ++mismatches;
        }
    detail::add_check(report, config, "identities.dual_evaluation_paths",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // orthogonality sweeps n, m <= 12
    double worst_h = 0, worst_c = 0;
    for (const double a : {0.5, 1.0, 2.0}) {
      std::vector<std::vector<double>> hs, cs;
      for (int n = 0; n <= 12; ++n) {
        hs.push_back(hermite_coefficients(n, a));
        cs.push_back(charlier_coefficients(n, a));
      }
      for (int n = 0; n <= 12; ++n) {
        const double norm = std::pow(a, n) * std::tgamma(n + 1.0);
        for (int m = 0; m <= 12; ++m) {
          const double target = (n == m) ? 1.0 : 0.0;
          worst_h = std::max(worst_h,
                             std::abs(weighted_inner_product(hs[n], hs[m], GaussianWeight(a)).value /
                                          norm -
                                      target));
          worst_c = std::max(worst_c,
                             std::abs(weighted_inner_product(cs[n], cs[m], PoissonWeight(a)).value /
                                          norm -
                                      target));
        }
      }
    }
    detail::add_check(report, config, "identities.hermite_orthogonality", worst_h, 1e-8);
    detail::add_check(report, config, "identities.charlier_orthogonality", worst_c, 1e-8);
  }

  {  // generating-function residuals at N = 30
    double worst = 0;
    for (const double t : {-0.5, 0.25, 0.5}) {
      worst = std::max(worst,
                       generating_function_residual(PolynomialFamily::kHermite, 1.0, 1.0, t, 30));
      worst = std::max(worst,
                       generating_function_residual(PolynomialFamily::kCharlier, 1.0, 2.0, t, 30));
    }
    detail::add_check(report, config, "identities.generating_functions", worst, 1e-12);
  }

  return report;
}

// ---------------------------------------------------------------------------
// isometry: kernels, unitarity, normalization certificate, closed sums
// ---------------------------------------------------------------------------

inline SuiteReport run_isometry_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.name = "isometry";

  {  // rows of the kernel against the Poisson weight sum to one
    double worst = 0;
    for (const double a : {0.5, 1.0, 2.0})
      for (double x = -2.0; x <= 2.0; x += 0.5)
        worst = std::max(worst, std::abs(kernel_row_sum(a, x, 400) - 1.0));
    detail::add_check(report, config, "isometry.kernel_row_sums", worst, 1e-6);
  }

  {  // unitarity of the mapped bases
    double worst_1d = 0;
    for (const double a : {0.5, 1.0, 2.0})
      worst_1d = std::max(worst_1d, unitarity_defect(FiniteBase({a}), 8));
    detail::add_check(report, config, "isometry.unitarity_1d_degree8", worst_1d, 1e-6);
    detail::add_check(report, config, "isometry.unitarity_m3_degree4",
                      unitarity_defect(FiniteBase({0.5, 1.0, 2.0}), 4), 1e-6);
  }

  {  // the bilinear series matches the kernel only with a^n in the denominator
    long long mismatches = 0;
    double worst_residual = 0;
    for (const double a : {0.5, 2.0}) {
      const NormalizationVerdict v = resolve_identity_normalization(a, 0.5, 2, 300);
      if (v.match != NormalizationVerdict::Match::kDenominator) ++mismatches;
      worst_residual = std::max(worst_residual, v.residual_denominator);
    }
    detail::add_check(report, config, "isometry.normalization_certificate",
                      static_cast<double>(mismatches), 0.0);
    detail::add_check(report, config, "isometry.normalization_residual", worst_residual, 1e-8);
  }

  {  // multiplicative correspondence: closed Poisson sums on finite bases
    double worst = 0;
    const FiniteBase single({1.0});
    for (const double c : {-0.4, 0.25, 0.6}) {
      const auto image = multiplicative_image_finite<double>({c}, single);
      worst = std::max(worst,
                       std::abs(poisson_inner_product(image, image) - std::exp(c * c)));
    }
    const FiniteBase pair_base({1.0, 2.0});
    const auto f = multiplicative_image_finite<double>({0.3, -0.2}, pair_base);
    const auto g = multiplicative_image_finite<double>({0.1, 0.5}, pair_base);
    worst = std::max(worst, std::abs(poisson_inner_product(f, g) -
                                     std::exp(1.0 * 0.3 * 0.1 + 2.0 * (-0.2) * 0.5)));
    detail::add_check(report, config, "isometry.multiplicative_closed_sums", worst, 1e-10);
  }

  {  // round trip through the coefficients and the kernel
    double worst = 0;
    const int truncation = 260;
    for (const double a : {0.5, 1.0, 2.0})
      for (int n = 0; n <= 8; ++n) {
        GaussFunctional1D f{{{n, 1.0}}, a};
        const PoissonFunctional1D image = isometry_coefficients_1d(f, truncation);
        for (const double x : {-1.0, 0.25, 2.0})
          worst = std::max(worst, std::abs(apply_inverse_isometry_1d(image, x, truncation) -
                                           hermite(n, a, x)));
      }
    detail::add_check(report, config, "isometry.coefficient_roundtrip", worst, 1e-6);
  }

  {  // inner products preserved through the coefficient correspondence
    double worst = 0;
    CounterRng rng(config.seed, stream_id("isometry.inner_products"));
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
      worst = std::max(worst, std::abs(poisson_side - gauss_side));
    }
    detail::add_check(report, config, "isometry.inner_product_preservation", worst, 1e-8);
  }

  return report;
}

// ---------------------------------------------------------------------------
// processes: sampler laws and the characteristic exponent
// ---------------------------------------------------------------------------

inline SuiteReport run_processes_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.name = "processes";
  const int samples = config.samples;

  {  // Poisson count mean within 3 standard errors
    detail::MeanAccumulator acc;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(config.seed, stream_id("processes.count") + s);
      acc.add(static_cast<double>(sample_poisson_config(1.0, rng).size()));
    }
    detail::add_check(report, config, "processes.poisson_count_mean", acc.sigmas_from(1.0), 3.0);
  }

  {  // conditional location uniformity (Kolmogorov-Smirnov at 5%)
    std::vector<double> locations;
    for (int s = 0; s < std::min(samples, 4000); ++s) {
      CounterRng rng(config.seed, stream_id("processes.uniformity") + s);
      for (const auto& p : sample_poisson_config(1.0, rng).points)
        locations.push_back(p.location);
    }
    std::sort(locations.begin(), locations.end());
    const double n = static_cast<double>(locations.size());
    double ks = 0;
    for (size_t i = 0; i < locations.size(); ++i) {
      ks = std::max(ks, std::abs((i + 1) / n - locations[i]));
      ks = std::max(ks, std::abs(locations[i] - i / n));
    }
    detail::add_check(report, config, "processes.location_uniformity_ks", ks, 1.358 / std::sqrt(n));
  }

  {  // white-noise cell variance and cross-cell independence
    const PartitionOfBase half = PartitionOfBase::uniform(2);
    detail::MeanAccumulator var0, cross;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(config.seed, stream_id("processes.white_noise") + s);
      const WhiteNoiseSample w = sample_white_noise(half, rng);
      var0.add(w.cell_values[0] * w.cell_values[0]);
      cross.add(w.cell_values[0] * w.cell_values[1]);
    }
    detail::add_check(report, config, "processes.white_noise_variance", var0.sigmas_from(0.5),
                      3.0);
    detail::add_check(report, config, "processes.white_noise_independence", cross.sigmas_from(0.0),
                      3.0);
  }

  {  // gamma increments: mean, variance, and the truncated-jump comparison
    const PartitionOfBase whole = PartitionOfBase::uniform(1);
    detail::MeanAccumulator mean_acc;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(config.seed, stream_id("processes.gamma_mean") + s);
      mean_acc.add(exact_gamma_increments(whole, rng)[0]);
    }
    detail::add_check(report, config, "processes.gamma_increment_mean", mean_acc.sigmas_from(1.0),
                      3.0);

    const int ks_samples = std::min(samples, 10000);
    std::vector<double> truncated(ks_samples), exact(ks_samples);
    for (int s = 0; s < ks_samples; ++s) {
      CounterRng rng1(config.seed, stream_id("processes.gamma_trunc") + s);
      CounterRng rng2(config.seed, stream_id("processes.gamma_exact") + s);
      double total = 0;
      for (const auto& p : sample_levy(gamma_spec(), 1e-6, rng1).points) total += p.mark;
      truncated[s] = total;
      exact[s] = exact_gamma_increments(whole, rng2)[0];
    }
    std::sort(truncated.begin(), truncated.end());
    std::sort(exact.begin(), exact.end());
    double d = 0;
    size_t i = 0, j = 0;
    while (i < truncated.size() && j < exact.size()) {
      if (truncated[i] <= exact[j])
        ++i;
      else
        ++j;
      d = std::max(d, std::abs(static_cast<double>(i) - static_cast<double>(j)) / ks_samples);
    }
    detail::add_check(report, config, "processes.truncated_gamma_ks", d,
                      1.358 * std::sqrt(2.0 / ks_samples));
  }

  {  // the characteristic exponent: analytic cases
    double worst_poisson = 0, worst_gauss = 0;
    for (const double y : {0.5, 1.0, 2.0}) {
      const std::complex<double> lp = levy_khintchine_exponent(poisson_spec(), y);
      worst_poisson =
          std::max(worst_poisson, std::abs(lp - (std::exp(std::complex<double>(0, y)) - 1.0)));
      const std::complex<double> lg = levy_khintchine_exponent(gaussian_spec(1.0), y);
      worst_gauss = std::max(worst_gauss, std::abs(lg - std::complex<double>(-y * y / 2, 0)));
    }
    detail::add_check(report, config, "processes.exponent_poisson_analytic", worst_poisson, 1e-12);
    detail::add_check(report, config, "processes.exponent_gaussian_analytic", worst_gauss, 1e-14);
  }

  {  // Monte Carlo characteristic functions against e^{mass log phi}
    const std::vector<std::pair<std::string, LevySpec>> specs{
        {"gaussian", gaussian_spec(1.0)},
        {"poisson", poisson_spec()},
        {"two_atom", LevySpec{0.3, 0.0, FiniteAtomicMeasure{{{1.0, 0.5}, {2.0, 0.5}}}}}};
    double worst_sigmas = 0;
    for (const auto& [label, spec] : specs) {
      for (const double y : {0.5, 1.0, 2.0}) {
        detail::MeanAccumulator re, im;
        for (int s = 0; s < samples; ++s) {
          CounterRng rng(config.seed, stream_id("processes.cf." + label) + s);
          const double inc = sample_levy_increment(spec, 1.0, 1e-6, rng);
          re.add(std::cos(y * inc));
          im.add(std::sin(y * inc));
        }
        const std::complex<double> expected = std::exp(levy_khintchine_exponent(spec, y));
        worst_sigmas = std::max(worst_sigmas, re.sigmas_from(expected.real()));
        worst_sigmas = std::max(worst_sigmas, im.sigmas_from(expected.imag()));
      }
    }
    detail::add_check(report, config, "processes.characteristic_function_mc", worst_sigmas, 3.0);
  }

  {  // Campbell sums and products for a piecewise-constant function
    const TestFunction h(PartitionOfBase::uniform(4),
                         std::vector<double>{0.5, -0.2, 0.1, 0.3});
    detail::MeanAccumulator lin, prod;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(config.seed, stream_id("processes.campbell") + s);
      const PointConfiguration omega = sample_poisson_config(1.0, rng);
      double l = 0, p = 1;
      for (const auto& pt : omega.points) {
        l += h(pt.location);
        p *= 1.0 + h(pt.location);
      }
      lin.add(l);
      prod.add(p);
    }
    const double integral = h.integral();
    detail::add_check(report, config, "processes.campbell_sum", lin.sigmas_from(integral), 3.0);
    detail::add_check(report, config, "processes.campbell_product",
                      prod.sigmas_from(std::exp(integral)), 3.0);
  }

  {  // jump-size transport onto a prescribed atomic law
    const FiniteAtomicMeasure target{{{1.0, 0.25}, {2.0, 0.75}}};
    const auto map = quantile_transport_map(1e-6, target);
    long long hits_one = 0, total = 0;
    for (int s = 0; s < std::min(samples, 20000); ++s) {
      CounterRng rng(config.seed, stream_id("processes.transport") + s);
      const PointConfiguration moved =
          transport_jump_sizes(sample_levy(gamma_spec(), 1e-6, rng), map);
      for (const auto& p : moved.points) {
        ++total;
        if (p.mark == 1.0) ++hits_one;
      }
    }
    const double frac = static_cast<double>(hits_one) / total;
    const double se = std::sqrt(0.25 * 0.75 / total);
    detail::add_check(report, config, "processes.transport_histogram",
                      std::abs(frac - 0.25) / se, 3.0);
  }

  return report;
}

// ---------------------------------------------------------------------------
// chaos: combinatorial integrals, the logarithm, orthogonality of chaoses
// ---------------------------------------------------------------------------

inline SuiteReport run_chaos_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.name = "chaos";
  const int samples = config.samples;

  auto random_rational = [](CounterRng& rng) {
    return Rational(static_cast<int>(rng.uniform_index(11)) - 5,
                    1 + static_cast<int>(rng.uniform_index(4)));
  };

  {  // equal-argument specializations reproduce the classical polynomials
    long long mismatches = 0;
    CounterRng rng(config.seed, stream_id("chaos.equal_args"));
    for (int trial = 0; trial < 5; ++trial) {
      const Rational v0 = random_rational(rng), v1 = random_rational(rng);
      const Rational e0 = random_rational(rng), e1 = random_rational(rng);
      const Rational half(1, 2);
      const Rational norm_sq = (v0 * v0 + v1 * v1) * half;
      const Rational pairing = v0 * e0 + v1 * e1;
      if (norm_sq == 0) continue;
      for (int n = 1; n <= 5; ++n) {
        std::vector<Rational> linear(n, pairing);
        std::vector<std::vector<Rational>> pair_ip(n, std::vector<Rational>(n, norm_sq));
        if (hermite_functional_core(linear, pair_ip) != hermite_sum(n, norm_sq, pairing))
          ++mismatches;
      }
      for (int count = 0; count <= 4; ++count)
        for (int n = 1; n <= 5; ++n) {
          const Rational mass(1, 2);
          std::vector<std::vector<Rational>> point_values(
              n, std::vector<Rational>(count, Rational(1)));
          std::vector<Rational> centered(n, Rational(count) - mass);
          if (charlier_functional_core(point_values, centered) !=
              charlier_sum(n, mass, Rational(count)))
            ++mismatches;
        }
    }
    detail::add_check(report, config, "chaos.equal_args_polynomials",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // the permutation-expansion integral against the functional cores,
     // in rational arithmetic: a genuine second code path, zero tolerance.
     // Monte Carlo paths stop at order 6; the exact identity runs to 8.
    long long mismatches = 0;
    CounterRng rng(config.seed, stream_id("chaos.rota"));
    for (int n = 1; n <= 8; ++n) {
      const int cells = 3;
      std::vector<std::vector<Rational>> values(n);
      for (int i = 0; i < n; ++i)
        for (int c = 0; c < cells; ++c) values[i].push_back(random_rational(rng));
      std::vector<Rational> noise{random_rational(rng), random_rational(rng),
                                  random_rational(rng)};
      const int point_count = static_cast<int>(rng.uniform_index(4));
      std::vector<int> point_cells(point_count);
      for (int p = 0; p < point_count; ++p)
        point_cells[p] = static_cast<int>(rng.uniform_index(cells));

      const Rational cell_mass(1, cells);
      std::vector<Rational> linear(n, Rational(0));
      std::vector<std::vector<Rational>> pair_ip(n, std::vector<Rational>(n, Rational(0)));
      std::vector<std::vector<Rational>> point_values(n, std::vector<Rational>(point_count));
      std::vector<Rational> centered(n, Rational(0));
      for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cells; ++c) linear[i] += values[i][c] * noise[c];
        for (int j = 0; j < n; ++j)
          for (int c = 0; c < cells; ++c)
            pair_ip[i][j] += values[i][c] * values[j][c] * cell_mass;
        Rational integral(0);
        for (int c = 0; c < cells; ++c) integral += values[i][c] * cell_mass;
        Rational sum(0);
        for (int p = 0; p < point_count; ++p) {
          point_values[i][p] = values[i][point_cells[p]];
          sum += point_values[i][p];
        }
        centered[i] = sum - integral;
      }

      // direct expansion over all permutations, both diagonal rules
      Rational gauss_direct(0), poisson_direct(0);
      for (const Permutation& perm : enumerate_permutations(n)) {
        const CycleType type = cycle_type(perm);
        const int cycles = type.cycle_count();
        const bool sign_flip = (n - cycles) % 2 != 0;
        Rational pprod(1);
        std::vector<bool> seen(n, false);
        bool gauss_vanishes = false;
        Rational gprod(1);
        for (int i = 0; i < n; ++i) {
          if (seen[i]) continue;
          std::vector<int> cycle;
          for (int j = i; !seen[j]; j = perm.images[j]) {
            seen[j] = true;
            cycle.push_back(j);
          }
          if (cycle.size() == 1) {
            gprod *= linear[i];
            pprod *= centered[i];
          } else if (cycle.size() == 2) {
            gprod *= pair_ip[cycle[0]][cycle[1]];
            Rational diag(0);
            for (int p = 0; p < point_count; ++p)
              diag += point_values[cycle[0]][p] * point_values[cycle[1]][p];
            pprod *= diag;
          } else {
            gauss_vanishes = true;
            Rational diag(0);
            for (int p = 0; p < point_count; ++p) {
              Rational term(1);
              for (int idx : cycle) term *= point_values[idx][p];
              diag += term;
            }
            pprod *= diag;
          }
        }
        if (!gauss_vanishes) {
          if (sign_flip)
            gauss_direct -= gprod;
          else
            gauss_direct += gprod;
        }
        if (sign_flip)
          poisson_direct -= pprod;
        else
          poisson_direct += pprod;
      }
      if (gauss_direct != hermite_functional_core(linear, pair_ip)) ++mismatches;
      if (poisson_direct != charlier_functional_core(point_values, centered)) ++mismatches;
    }
    detail::add_check(report, config, "chaos.rota_agreement",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // isometry of multiplicative functionals by Monte Carlo on [0,1]
    const TestFunction h1(PartitionOfBase::uniform(2), std::vector<double>{0.4, -0.1});
    const TestFunction h2(PartitionOfBase::uniform(2), std::vector<double>{0.2, 0.3});
    const double target = std::exp(inner_product(h1, h2));
    detail::MeanAccumulator acc;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(config.seed, stream_id("chaos.mult_isometry") + s);
      const PointConfiguration omega = sample_poisson_config(1.0, rng);
      acc.add(multiplicative_functional(FactorizationKind::kPoisson, h1, omega) *
              multiplicative_functional(FactorizationKind::kPoisson, h2, omega));
    }
    detail::add_check(report, config, "chaos.multiplicative_isometry_mc", acc.sigmas_from(target),
                      3.0);
  }

  {  // per-cell logarithm identity against the closed form
    double worst = 0;
    for (const auto kind : {FactorizationKind::kPoisson, FactorizationKind::kGauss})
      for (const double c : {0.3, 0.5})
        for (const double mass : {0.5, 1.0}) {
          const double m = c * c * mass;
          worst = std::max(worst,
                           std::abs(per_cell_log_defect(kind, c, mass) - (std::exp(m) - 1.0 - m)));
        }
    detail::add_check(report, config, "chaos.percell_log_identity", worst, 1e-10);
  }

  {  // the logarithm approximation tightens under dyadic refinement
    const TestFunction h = TestFunction::constant(0.5);
    std::vector<PartitionOfBase> refinements;
    for (int cells : {1, 2, 4, 8, 16}) refinements.push_back(PartitionOfBase::uniform(cells));
    const auto profile = log_convergence_profile(
        FactorizationKind::kPoisson, h, refinements, samples,
        config.seed ^ stream_id("chaos.log_profile"));
    detail::add_check(report, config, "chaos.log_profile_ratio",
                      profile.back().distance_sq / profile.front().distance_sq, 0.2);
  }

  {  // Monte Carlo Gram matrices: cross-order entries vanish
    const TestFunction f(PartitionOfBase::uniform(2), std::vector<double>{1.0, 1.0});
    const TestFunction g(PartitionOfBase::uniform(2), std::vector<double>{1.0, -1.0});
    std::vector<ChaosEntry> entries;
    entries.push_back({0, {}});
    entries.push_back({1, {f}});
    entries.push_back({2, {f, g}});
    entries.push_back({3, {f, f, g}});
    double worst = 0;
    double first_chaos_sigma = 0;
    for (const auto kind : {FactorizationKind::kGauss, FactorizationKind::kPoisson}) {
      const GramEstimate est = chaos_gram_mc(
          kind, entries, samples,
          config.seed ^ stream_id(kind == FactorizationKind::kGauss ? "chaos.gram_gauss"
                                                                    : "chaos.gram_poisson"));
      for (size_t i = 0; i < entries.size(); ++i)
        for (size_t j = 0; j < entries.size(); ++j) {
          if (i == j) continue;
          worst = std::max(worst,
                           std::abs(est.mean(i, j)) / std::max(est.std_error(i, j), 1e-12));
        }
      first_chaos_sigma =
          std::max(first_chaos_sigma,
                   std::abs(est.mean(1, 1) - norm_squared(f)) / est.std_error(1, 1));
    }
    detail::add_check(report, config, "chaos.gram_cross_order", worst, 3.0);
    detail::add_check(report, config, "chaos.first_chaos_variance", first_chaos_sigma, 3.0);
  }

  return report;
}

// ---------------------------------------------------------------------------
// levy: the general jump layer
// ---------------------------------------------------------------------------

inline SuiteReport run_levy_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.name = "levy";
  const int samples = config.samples;

  {  // the gamma Laplace transform closes to 1/(1+c)
    const PartitionOfBase whole = PartitionOfBase::uniform(1);
    double worst = 0;
    for (const double c : {0.5, 1.0}) {
      detail::MeanAccumulator acc;
      for (int s = 0; s < samples; ++s) {
        CounterRng rng(config.seed, stream_id("levy.laplace") + s);
        acc.add(std::exp(-c * exact_gamma_increments(whole, rng)[0]));
      }
      worst = std::max(worst, acc.sigmas_from(1.0 / (1.0 + c)));
    }
    detail::add_check(report, config, "levy.gamma_laplace_mc", worst, 3.0);
  }

  {  // gamma jump basis matches scaled laguerre coefficients
    const JumpPolynomialBasis basis = build_jump_basis(gamma_spec(), 4);
    double worst = 0;
    for (int n = 0; n <= 4; ++n) {
      const auto lag = laguerre_coefficients(n, 1.0);
      const double scale = std::tgamma(n + 1.0) * ((n % 2 == 0) ? 1.0 : -1.0);
      for (size_t i = 0; i < lag.size(); ++i)
        worst = std::max(worst, std::abs(basis.coefficients[n][i] - scale * lag[i]));
    }
    detail::add_check(report, config, "levy.jump_basis_laguerre", worst, 1e-8);
  }

  {  // normalized Gram of the jump basis is the identity
    const JumpPolynomialBasis basis = build_jump_basis(gamma_spec(), 6);
    double worst = 0;
    for (int i = 0; i < basis.size(); ++i)
      for (int j = 0; j <= i; ++j) {
        double ip = 0;
        for (size_t pi = 0; pi < basis.coefficients[i].size(); ++pi)
          for (size_t pj = 0; pj < basis.coefficients[j].size(); ++pj)
            ip += basis.coefficients[i][pi] * basis.coefficients[j][pj] *
                  std::tgamma(pi + pj + 2.0);
        const double normalized = ip / std::sqrt(basis.norms_sq[i] * basis.norms_sq[j]);
        worst = std::max(worst, std::abs(normalized - (i == j ? 1.0 : 0.0)));
      }
    detail::add_check(report, config, "levy.jump_basis_gram", worst, 1e-8);
  }

  {  // dimension invariant: 1, 3, infinite
    long long mismatches = 0;
    const FactorizationDimension d1 = dimension_invariant(LevySpec{0, 0, dirac_measure(1.0)});
    if (!d1.is_finite || d1.value != 1) ++mismatches;
    const FactorizationDimension d3 = dimension_invariant(
        LevySpec{0, 0, FiniteAtomicMeasure{{{1.0, 0.2}, {2.0, 0.2}, {3.0, 0.2}}}});
    if (!d3.is_finite || d3.value != 3) ++mismatches;
    if (dimension_invariant(gamma_spec()).is_finite) ++mismatches;
    detail::add_check(report, config, "levy.dimension_invariants",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // single-atom jump measure reduces to the plain Poisson layer, seed-exact
    long long mismatches = 0;
    const LevySpec spec{0, 0, dirac_measure(1.0)};
    const TestFunction spatial(PartitionOfBase::uniform(2), std::vector<double>{0.4, -0.2});
    const MarkedTestFunction marked{spatial, {0.0, 1.0}};
    for (int s = 0; s < 100; ++s) {
      CounterRng rng1(config.seed, stream_id("levy.reduction") + s);
      CounterRng rng2(config.seed, stream_id("levy.reduction") + s);
      const PointConfiguration plain = sample_poisson_config(1.0, rng1);
      const PointConfiguration jumps = sample_levy(spec, 1e-6, rng2);
      if (plain.size() != jumps.size()) {
        ++mismatches;
        continue;
      }
      for (size_t i = 0; i < plain.size(); ++i)
        if (plain.points[i].location != jumps.points[i].location || jumps.points[i].mark != 1.0)
          ++mismatches;
      if (levy_multiplicative(marked, jumps, spec) !=
          multiplicative_functional(FactorizationKind::kPoisson, spatial, jumps))
        ++mismatches;
    }
    detail::add_check(report, config, "levy.dirac_reduction_seed_exact",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // multiplicative functionals on the marked space: expectation and pairing
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{1.0, 0.5}, {2.0, 0.5}}}};
    const MarkedTestFunction h1{TestFunction::constant(0.3), {0.0, 1.0}};
    const MarkedTestFunction h2{TestFunction::constant(-0.2), {0.0, 0.0, 1.0}};
    detail::MeanAccumulator unit, pairing;
    for (int s = 0; s < samples; ++s) {
      CounterRng rng(config.seed, stream_id("levy.multiplicative") + s);
      const PointConfiguration omega = sample_levy(spec, 1e-6, rng);
      const double v1 = levy_multiplicative(h1, omega, spec);
      unit.add(v1);
      pairing.add(v1 * levy_multiplicative(h2, omega, spec));
    }
    detail::add_check(report, config, "levy.multiplicative_expectation", unit.sigmas_from(1.0),
                      3.0);
    detail::add_check(report, config, "levy.multiplicative_pairing",
                      pairing.sigmas_from(std::exp(marked_inner_product(h1, h2, spec))), 3.0);
  }

  {  // orthogonality of the (order, jump-degree) blocks
    const LevySpec spec{0, 0, FiniteAtomicMeasure{{{1.0, 0.5}, {2.0, 0.5}}}};
    const std::vector<std::pair<int, int>> pairs{{0, 1}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {3, 1}};
    const GramEstimate est =
        vnk_gram_mc(spec, pairs, samples, config.seed ^ stream_id("levy.vnk"));
    double worst = 0;
    for (size_t i = 0; i < pairs.size(); ++i)
      for (size_t j = 0; j < pairs.size(); ++j) {
        if (i == j) continue;
        worst =
            std::max(worst, std::abs(est.mean(i, j)) / std::max(est.std_error(i, j), 1e-12));
      }
    detail::add_check(report, config, "levy.vnk_orthogonality", worst, 3.0);
  }

  return report;
}

// ---------------------------------------------------------------------------
// nonfock: the hierarchical voting factorization
// ---------------------------------------------------------------------------

inline SuiteReport run_nonfock_suite(const SuiteConfig& config) {
  SuiteReport report;
  report.name = "nonfock";

  const VotingScheme majority = majority_scheme();
  const VotingScheme ternary = ternary_pair_scheme();
  const VotingScheme parity = xor_scheme();

  {  // balanced preimages: r^(m-1) per value
    long long mismatches = 0;
    const SchemeValidation vm = validate_scheme(majority);
    if (!vm.balanced || vm.preimage_counts != std::vector<long long>{4, 4}) ++mismatches;
    const SchemeValidation vt = validate_scheme(ternary);
    if (!vt.balanced || vt.preimage_counts != std::vector<long long>{3, 3, 3}) ++mismatches;
    const SchemeValidation vx = validate_scheme(parity);
    if (!vx.balanced) ++mismatches;
    detail::add_check(report, config, "nonfock.balanced_preimages",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // abundance with verified witnesses
    long long mismatches = 0;
    for (const VotingScheme* scheme : {&majority, &ternary}) {
      const AbundanceResult r = is_abundant(*scheme);
      if (!r.abundant) {
        ++mismatches;
        continue;
      }
      const std::vector<int> composed = compose_witness(*scheme, r.witness_word);
      for (int v : composed)
        if (v != r.constant_value) ++mismatches;
    }
    if (is_abundant(parity).abundant) ++mismatches;
    detail::add_check(report, config, "nonfock.abundance_witnesses",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // antiadditive solution dimensions are all 1
    long long mismatches = 0;
    if (antiadditive_solution_dim(majority) != 1) ++mismatches;
    if (antiadditive_solution_dim(ternary) != 1) ++mismatches;
    if (antiadditive_solution_dim(parity) != 1) ++mismatches;
    detail::add_check(report, config, "nonfock.antiadditive_dimensions",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // the multiplicative search: sign character for parity, nothing else
    long long mismatches = 0;
    bool found_sign = false;
    for (const auto& s : antimultiplicative_search(parity, 2))
      if (s.g_values == std::vector<int>{0, 1}) found_sign = true;
    if (!found_sign) ++mismatches;
    for (int order = 1; order <= 6; ++order) {
      if (!antimultiplicative_search(majority, order).empty()) ++mismatches;
      if (!antimultiplicative_search(ternary, order).empty()) ++mismatches;
    }
    detail::add_check(report, config, "nonfock.antimultiplicative_search",
                      static_cast<double>(mismatches), 0.0);
  }

  {  // ballot marginals stay uniform at every sampled depth
    double worst_ratio = 0;
    const int draws = config.samples;
    for (int depth = 0; depth <= 3; ++depth) {
      std::vector<long long> counts_m(2, 0), counts_t(3, 0);
      for (int s = 0; s < draws; ++s) {
        CounterRng rng_m(config.seed, stream_id("nonfock.ballots_majority") + s);
        CounterRng rng_t(config.seed, stream_id("nonfock.ballots_ternary") + s);
        ++counts_m[sample_ballots(majority, depth, rng_m).root()];
        ++counts_t[sample_ballots(ternary, depth, rng_t).root()];
      }
      double chi_m = 0;
      for (long long c : counts_m) chi_m += std::pow(c - draws / 2.0, 2) / (draws / 2.0);
      double chi_t = 0;
      for (long long c : counts_t) chi_t += std::pow(c - draws / 3.0, 2) / (draws / 3.0);
      worst_ratio = std::max(worst_ratio, chi_m / detail::chi_squared_critical_1pct(1));
      worst_ratio = std::max(worst_ratio, chi_t / detail::chi_squared_critical_1pct(2));
    }
    detail::add_check(report, config, "nonfock.ballot_uniformity", worst_ratio, 1.0);
  }

  return report;
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"identities", "isometry", "processes",
                                              "chaos",      "levy",     "nonfock"};
  return names;
}

inline SuiteReport run_suite(const std::string& name, const SuiteConfig& config) {
  if (name == "identities") return run_identities_suite(config);
  if (name == "isometry") return run_isometry_suite(config);
  if (name == "processes") return run_processes_suite(config);
  if (name == "chaos") return run_chaos_suite(config);
  if (name == "levy") return run_levy_suite(config);
  if (name == "nonfock") return run_nonfock_suite(config);
  throw std::invalid_argument("run_suite: unknown suite '" + name + "'");
}

inline std::vector<SuiteReport> run_suites(const std::string& name, const SuiteConfig& config) {
  std::vector<SuiteReport> reports;
  if (name == "all") {
    for (const std::string& suite : suite_names()) reports.push_back(run_suite(suite, config));
  } else {
    reports.push_back(run_suite(name, config));
  }
  return reports;
}

}  // namespace levygauss
