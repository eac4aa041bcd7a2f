// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "levygauss/chaos.hpp"
#include "levygauss/exact.hpp"
#include "levygauss/processes.hpp"

namespace levygauss {

/// h(x,t) = a(x) * q(t): piecewise-constant spatial part times a polynomial
/// jump part (monomial coefficients, lowest first). The natural chaos
/// building blocks have q(t) = t * P_{k-1}(t).
struct MarkedTestFunction {
  TestFunction spatial;
  std::vector<double> jump_poly;

  double operator()(double x, double t) const {
    return spatial(x) * evaluate_polynomial(jump_poly, t);
  }
};

/// Orthogonal polynomials P_0..P_K (monic, monomial coefficients) for the
/// measure t^2 dPi, with their squared norms. The basis stops early when the
/// measure has fewer support points than requested degrees.
struct JumpPolynomialBasis {
  std::vector<std::vector<double>> coefficients;
  std::vector<double> norms_sq;

  int size() const { return static_cast<int>(coefficients.size()); }
};

namespace detail {

/// Moments of t^2 dPi as exact rationals. Doubles convert to rationals
/// exactly, so rank decisions below are exact for the stored atoms. The
/// gamma measure gives integer moments (j+1)!.
inline std::vector<Rational> jump_squared_moments(const LevyMeasure& measure, int count) {
  std::vector<Rational> moments(count, Rational(0));
  if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&measure)) {
    for (const auto& [t, m] : atomic->atoms) {
      const Rational rt(t), rm(m);
      Rational power = rt * rt;
      for (int j = 0; j < count; ++j) {
        moments[j] += rm * power;
        power *= rt;
      }
    }
    return moments;
  }
  for (int j = 0; j < count; ++j) moments[j] = Rational(factorial(j + 1));
  return moments;
}

}  // namespace detail

/// Exact Gram-Schmidt of the monomials under <p,q> = int p q t^2 dPi.
inline JumpPolynomialBasis build_jump_basis(const LevySpec& spec, int max_degree) {
  if (max_degree < 0) throw std::invalid_argument("build_jump_basis: negative degree");
  const std::vector<Rational> mu =
      detail::jump_squared_moments(spec.levy_measure, 2 * max_degree + 1);
  auto pairing = [&mu](const std::vector<Rational>& p, const std::vector<Rational>& q) {
    Rational s(0);
    for (size_t i = 0; i < p.size(); ++i)
      for (size_t j = 0; j < q.size(); ++j) s += p[i] * q[j] * mu[i + j];
    return s;
  };
  std::vector<std::vector<Rational>> basis;
  std::vector<Rational> norms;
  for (int k = 0; k <= max_degree; ++k) {
    std::vector<Rational> p(k + 1, Rational(0));
    p[k] = 1;  // monic t^k
    for (size_t j = 0; j < basis.size(); ++j) {
      const Rational coeff = pairing(p, basis[j]) / norms[j];
      for (size_t i = 0; i < basis[j].size(); ++i) p[i] -= coeff * basis[j][i];
    }
    const Rational norm_sq = pairing(p, p);
    if (norm_sq == 0) break;  // measure support exhausted
    basis.push_back(std::move(p));
    norms.push_back(norm_sq);
  }
  JumpPolynomialBasis out;
  for (size_t k = 0; k < basis.size(); ++k) {
    std::vector<double> coeffs(basis[k].size());
    for (size_t i = 0; i < basis[k].size(); ++i) coeffs[i] = to_double(basis[k][i]);
    out.coefficients.push_back(std::move(coeffs));
    out.norms_sq.push_back(to_double(norms[k]));
  }
  return out;
}

/// int q dPi over the (possibly eps-truncated) jump measure.
inline double jump_poly_compensator(const std::vector<double>& jump_poly,
                                    const LevyMeasure& measure, double eps) {
  if (const auto* atomic = std::get_if<FiniteAtomicMeasure>(&measure)) {
    double s = 0;
    for (const auto& [t, m] : atomic->atoms) s += m * evaluate_polynomial(jump_poly, t);
    return s;
  }
  if (!(eps > 0) && !jump_poly.empty() && jump_poly[0] != 0.0)
    throw std::domain_error("jump_poly_compensator: divergent compensator for the gamma measure");
  double s = 0;
  for (size_t j = 0; j < jump_poly.size(); ++j)
    if (jump_poly[j] != 0.0) s += jump_poly[j] * gamma_measure_moment(static_cast<int>(j), eps);
  return s;
}

/// Normalized multiplicative functional of the marked process:
/// prod (1 + h(x_i, t_i)) * exp(-int int h dnu dPi). Expectation 1 under the
/// eps-truncated sampling law.
inline double levy_multiplicative(const MarkedTestFunction& h, const PointConfiguration& config,
                                  const LevySpec& spec, double eps = 1e-6) {
  const double compensator =
      h.spatial.integral() * jump_poly_compensator(h.jump_poly, spec.levy_measure, eps);
  double prod = 1;
  for (const auto& p : config.points) prod *= 1.0 + h(p.location, p.mark);
  return prod * std::exp(-compensator);
}

/// <h1, h2> over nu x Pi (full, untruncated measure).
inline double marked_inner_product(const MarkedTestFunction& h1, const MarkedTestFunction& h2,
                                   const LevySpec& spec) {
  std::vector<double> product(h1.jump_poly.size() + h2.jump_poly.size() - 1, 0.0);
  for (size_t i = 0; i < h1.jump_poly.size(); ++i)
    for (size_t j = 0; j < h2.jump_poly.size(); ++j)
      product[i + j] += h1.jump_poly[i] * h2.jump_poly[j];
  return inner_product(h1.spatial, h2.spatial) *
         jump_poly_compensator(product, spec.levy_measure, 0.0);
}

/// The function t * P_{k-1}(t) from the jump basis, as monomial coefficients.
inline std::vector<double> jump_chaos_polynomial(const JumpPolynomialBasis& basis, int k) {
  if (k < 1 || k > basis.size())
    throw std::invalid_argument("jump_chaos_polynomial: index outside basis");
  std::vector<double> q(basis.coefficients[k - 1].size() + 1, 0.0);
  for (size_t i = 0; i < basis.coefficients[k - 1].size(); ++i)
    q[i + 1] = basis.coefficients[k - 1][i];
  return q;
}

/// MC Gram matrix of generalized Charlier functionals on the marked space,
/// indexed by (order n, jump-degree k) with f(x,t) = t P_{k-1}(t). Blocks
/// with distinct (n,k) are orthogonal.
inline GramEstimate vnk_gram_mc(const LevySpec& spec,
                                const std::vector<std::pair<int, int>>& nk_pairs, int samples,
                                std::uint64_t seed, double eps = 1e-6) {
  int max_k = 1;
  for (const auto& [n, k] : nk_pairs) {
    if (n < 0 || k < 1) throw std::invalid_argument("vnk_gram_mc: need n >= 0 and k >= 1");
    if (n > kMonteCarloOrderCap) throw std::length_error("vnk_gram_mc: order exceeds cap");
    max_k = std::max(max_k, k);
  }
  const JumpPolynomialBasis basis = build_jump_basis(spec, max_k - 1);
  const int n_entries = static_cast<int>(nk_pairs.size());
  std::vector<std::vector<double>> polys;
  std::vector<double> compensators;
  for (const auto& [n, k] : nk_pairs) {
    if (k > basis.size())
      throw std::invalid_argument("vnk_gram_mc: jump degree beyond the measure's support size");
    polys.push_back(jump_chaos_polynomial(basis, k));
    compensators.push_back(jump_poly_compensator(polys.back(), spec.levy_measure, eps));
  }
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n_entries, n_entries);
  Eigen::MatrixXd sum_sq = Eigen::MatrixXd::Zero(n_entries, n_entries);
  std::vector<double> values(n_entries);
  for (int s = 0; s < samples; ++s) {
    CounterRng rng(seed, static_cast<std::uint64_t>(s));
    const PointConfiguration config = sample_levy(spec, eps, rng);
    for (int e = 0; e < n_entries; ++e) {
      const auto& [n, k] = nk_pairs[e];
      if (n == 0) {
        values[e] = 1.0;
        continue;
      }
      std::vector<std::vector<double>> point_values(
          n, std::vector<double>(config.points.size()));
      for (size_t p = 0; p < config.points.size(); ++p) {
        const double v = evaluate_polynomial(polys[e], config.points[p].mark);
        for (int i = 0; i < n; ++i) point_values[i][p] = v;
      }
      double linear = 0;
      for (size_t p = 0; p < config.points.size(); ++p) linear += point_values[0][p];
      std::vector<double> centered(n, linear - compensators[e]);
      values[e] = charlier_functional_core(point_values, centered);
    }
    for (int i = 0; i < n_entries; ++i)
      for (int j = 0; j < n_entries; ++j) {
        const double v = values[i] * values[j];
        sum(i, j) += v;
        sum_sq(i, j) += v * v;
      }
  }
  GramEstimate out;
  out.mean = sum / samples;
  out.std_error.resize(n_entries, n_entries);
  for (int i = 0; i < n_entries; ++i)
    for (int j = 0; j < n_entries; ++j) {
      const double variance =
          std::max(0.0, sum_sq(i, j) / samples - out.mean(i, j) * out.mean(i, j));
      out.std_error(i, j) = std::sqrt(variance / samples);
    }
  return out;
}

/// Dimension of the vector white noise matched to the process: the number
/// of support points of the jump measure.
struct FactorizationDimension {
  bool is_finite = true;
  int value = 0;  // meaningful when finite
};

inline FactorizationDimension dimension_invariant(const LevySpec& spec) {
  if (std::holds_alternative<GammaMeasure>(spec.levy_measure)) return {false, 0};
  const auto& atomic = std::get<FiniteAtomicMeasure>(spec.levy_measure);
  std::set<double> support;
  for (const auto& [t, m] : atomic.atoms)
    if (m > 0) support.insert(t);
  return {true, static_cast<int>(support.size())};
}

}  // namespace levygauss
